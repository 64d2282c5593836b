#include "ranklab/codes.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

namespace ranklab::codes {

int RankCode::index_of(const MatrixGF& C) const {
    auto it = std::lower_bound(codebook.begin(), codebook.end(), C);
    if (it != codebook.end() && *it == C) return static_cast<int>(it - codebook.begin());
    return -1;
}

int Cdc::index_of(const Subspace& C) const {
    auto it = std::lower_bound(codebook.begin(), codebook.end(), C);
    if (it != codebook.end() && *it == C) return static_cast<int>(it - codebook.begin());
    return -1;
}

RankCode make_rank_code(Field f, int m, int n, std::vector<MatrixGF> words, bool linear_hint) {
    RankCode code;
    code.f = std::move(f);
    code.m = m;
    code.n = n;
    for (const MatrixGF& w : words) {
        if (w.rows() != m || w.cols() != n || w.field()->q() != code.f->q()) {
            throw DimensionMismatch("codeword shape does not match the code parameters");
        }
    }
    std::sort(words.begin(), words.end());
    code.codebook = std::move(words);

    const size_t size = code.codebook.size();
    bool has_zero = !code.codebook.empty() && code.codebook.front().is_zero();
    if (linear_hint) {
        code.is_linear = has_zero;
    } else if (has_zero && size >= 2 && size <= 1024) {
        std::set<MatrixGF> all(code.codebook.begin(), code.codebook.end());
        code.is_linear = true;
        for (size_t i = 0; i < size && code.is_linear; ++i) {
            for (size_t j = 0; j < size; ++j) {
                if (!all.count(code.codebook[i] - code.codebook[j])) {
                    code.is_linear = false;
                    break;
                }
            }
        }
    }

    bool has_duplicates =
        std::adjacent_find(code.codebook.begin(), code.codebook.end()) != code.codebook.end();
    if (size >= 2 && !has_duplicates) {
        int best = std::min(m, n) + 1;
        if (code.is_linear) {
            for (const MatrixGF& w : code.codebook) {
                if (w.is_zero()) continue;
                best = std::min(best, mat_rank(w));
            }
        } else {
            for (size_t i = 0; i < size; ++i) {
                for (size_t j = i + 1; j < size; ++j) {
                    best = std::min(best, rank_distance(code.codebook[i], code.codebook[j]));
                }
            }
        }
        code.d = (best <= std::min(m, n)) ? best : 0;
    }

    if (code.d > 0) {
        Int max_card = std::min(ipow(code.f->q(), static_cast<long>(code.m) * (code.n - code.d + 1)),
                                ipow(code.f->q(), static_cast<long>(code.n) * (code.m - code.d + 1)));
        code.is_mrd = Int(size) == max_card;
    }
    return code;
}

namespace {

// Expresses GF(q^m), q = p^e, over GF(q): a distinguished copy of GF(q)
// inside F = GF(p^{em}) together with a basis {gamma^j : j < m} of F over
// that copy. Supplies the coordinate map used to expand field symbols into
// matrix columns.
struct SubfieldExpansion {
    Field small;  // GF(q)
    Field big;    // GF(q^m)
    int m = 0;
    uint16_t beta = 1;   // root in F of the reduction polynomial of GF(q)
    uint16_t gamma = 0;  // the basis element
    Field prime;         // GF(p)
    std::vector<uint16_t> minv;  // inverse basis-change matrix over GF(p)

    SubfieldExpansion(Field small_, int m_) : small(std::move(small_)), m(m_) {
        const int p = small->p();
        const int e = small->e();
        big = field_create(p, e * m);
        prime = field_create(p, 1);
        const int em = e * m;

        if (e > 1) {
            beta = 0;
            for (int z = 0; z < big->q(); ++z) {
                if (eval_reduction(static_cast<uint16_t>(z)) == 0) {
                    beta = static_cast<uint16_t>(z);
                    break;
                }
            }
            if (beta == 0) throw Error("no subfield root found");
        }

        // First gamma whose mixed powers {gamma^j beta^i} span GF(p)^{em}.
        std::vector<uint16_t> basis_cols;
        for (int z = 1; z < big->q(); ++z) {
            basis_cols = basis_digit_columns(static_cast<uint16_t>(z));
            std::vector<uint16_t> probe = basis_cols;
            if (rank_in_place(*prime, em, em, probe) == em) {
                gamma = static_cast<uint16_t>(z);
                break;
            }
        }
        if (gamma == 0) throw Error("no basis element of full degree found");

        // Invert the basis matrix over GF(p) via [M | I] elimination.
        std::vector<uint16_t> aug(static_cast<size_t>(em) * 2 * em, 0);
        for (int i = 0; i < em; ++i) {
            for (int j = 0; j < em; ++j) {
                aug[static_cast<size_t>(i) * 2 * em + j] = basis_cols[static_cast<size_t>(i) * em + j];
            }
            aug[static_cast<size_t>(i) * 2 * em + em + i] = 1;
        }
        RrefResult res = rref_in_place(*prime, em, 2 * em, aug);
        if (res.rank != em) throw Error("basis matrix is singular");
        minv.assign(static_cast<size_t>(em) * em, 0);
        for (int i = 0; i < em; ++i) {
            for (int j = 0; j < em; ++j) {
                minv[static_cast<size_t>(i) * em + j] = aug[static_cast<size_t>(i) * 2 * em + em + j];
            }
        }
    }

    // Value of GF(q)'s reduction polynomial at z, computed in F. The
    // coefficients are prime-field constants, which are literal values in F.
    uint16_t eval_reduction(uint16_t z) const {
        const std::vector<int>& red = small->reduction();
        uint16_t acc = 0, zp = 1;
        for (size_t i = 0; i < red.size(); ++i) {
            if (red[i]) acc = big->add(acc, big->mul(static_cast<uint16_t>(red[i]), zp));
            zp = big->mul(zp, z);
        }
        return acc;
    }

    // Row i*e + e_idx holds the base-p digits of z^i * beta^e_idx.
    std::vector<uint16_t> basis_digit_columns(uint16_t z) const {
        const int p = small->p();
        const int e = small->e();
        const int em = e * m;
        std::vector<uint16_t> rows(static_cast<size_t>(em) * em, 0);
        uint16_t zi = 1;
        for (int j = 0; j < m; ++j) {
            uint16_t bi = 1;
            for (int i = 0; i < e; ++i) {
                uint16_t x = big->mul(zi, bi);
                int v = x;
                for (int dgt = 0; dgt < em; ++dgt) {
                    rows[static_cast<size_t>(j * e + i) * em + dgt] = static_cast<uint16_t>(v % p);
                    v /= p;
                }
                bi = big->mul(bi, beta);
            }
            zi = big->mul(zi, z);
        }
        return rows;
    }

    uint16_t embed(uint16_t a) const {
        const int p = small->p();
        uint16_t acc = 0, bp = 1;
        int v = a;
        for (int i = 0; i < small->e(); ++i) {
            int digit = v % p;
            if (digit) acc = big->add(acc, big->mul(static_cast<uint16_t>(digit), bp));
            v /= p;
            bp = big->mul(bp, beta);
        }
        return acc;
    }

    // GF(q)-coordinates of x with respect to {gamma^j}.
    std::vector<uint16_t> coords(uint16_t x) const {
        const int p = small->p();
        const int e = small->e();
        const int em = e * m;
        std::vector<uint16_t> digits(em);
        int v = x;
        for (int i = 0; i < em; ++i) {
            digits[i] = static_cast<uint16_t>(v % p);
            v /= p;
        }
        // c = Minv * digits over GF(p); Minv is stored transposed relative
        // to basis rows (basis_digit_columns filled row-major by basis
        // index), so multiply digits by the stored matrix on the right.
        std::vector<uint16_t> c(em, 0);
        for (int i = 0; i < em; ++i) {
            uint16_t acc = 0;
            for (int j = 0; j < em; ++j) {
                acc = prime->add(acc, prime->mul(digits[j], minv[static_cast<size_t>(j) * em + i]));
            }
            c[i] = acc;
        }
        std::vector<uint16_t> out(m, 0);
        for (int j = 0; j < m; ++j) {
            int val = 0, shift = 1;
            for (int i = 0; i < e; ++i) {
                val += c[static_cast<size_t>(j) * e + i] * shift;
                shift *= p;
            }
            out[j] = static_cast<uint16_t>(val);
        }
        return out;
    }
};

}  // namespace

RankCode gabidulin_build(const GabidulinSpec& g, long long budget) {
    if (g.n > g.m) throw ParameterViolation("gabidulin requires n <= m");
    if (g.k < 1 || g.k > g.n) throw ParameterViolation("gabidulin requires 1 <= k <= n");
    Field fq = field_from_order(g.q);
    Int count = ipow(g.q, static_cast<long>(g.m) * g.k);
    if (count > budget) throw BudgetExceeded("codebook of " + count.str() + " words exceeds budget");

    SubfieldExpansion sb(fq, g.m);
    const Field& F = sb.big;
    const long Q = F->q();

    // Evaluation points gamma^j and their q-power (Frobenius) orbits.
    std::vector<std::vector<uint16_t>> fr(g.n, std::vector<uint16_t>(g.k));
    for (int j = 0; j < g.n; ++j) {
        uint16_t pt = F->pow(sb.gamma, j);
        for (int i = 0; i < g.k; ++i) {
            fr[j][i] = pt;
            pt = F->pow(pt, g.q);
        }
    }

    std::vector<MatrixGF> words;
    words.reserve(count.convert_to<size_t>());
    std::vector<uint16_t> msg(g.k, 0);
    for (;;) {
        MatrixGF w(fq, g.m, g.n);
        for (int j = 0; j < g.n; ++j) {
            uint16_t y = 0;
            for (int i = 0; i < g.k; ++i) {
                if (msg[i]) y = F->add(y, F->mul(msg[i], fr[j][i]));
            }
            std::vector<uint16_t> col = sb.coords(y);
            for (int i = 0; i < g.m; ++i) w.set(i, j, col[i]);
        }
        words.push_back(std::move(w));

        int i = g.k;
        bool done = true;
        while (i > 0) {
            --i;
            if (++msg[i] < Q) {
                done = false;
                break;
            }
            msg[i] = 0;
        }
        if (done) break;
    }
    return make_rank_code(fq, g.m, g.n, std::move(words), /*linear_hint=*/true);
}

Int mrd_weight_distribution(long q, long m, long n, long d, long r) {
    if (n > m) throw ParameterViolation("weight distribution requires n <= m");
    if (d < 1 || d > r || r > n) throw ParameterViolation("weight distribution requires d <= r <= n");
    Int sum = 0;
    for (long j = 0; j <= r - d; ++j) {
        Int term = qcomb::gaussian(q, r, j) * ipow(q, j * (j - 1) / 2) *
                   (ipow(q, m * (r - d + 1 - j)) - 1);
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return qcomb::gaussian(q, n, r) * sum;
}

Int crc_upper_bound(long q, long m, long n, long d, long r) {
    if (n > m) std::swap(m, n);  // the maximum is symmetric in (m, n)
    if (d < 1 || d > r) throw ParameterViolation("constant-rank bound requires 1 <= d <= r");
    return qcomb::gaussian(q, n, r) * qcomb::alpha(q, m, r - d + 1);
}

DistanceDistribution distance_distribution(const RankCode& code, const MatrixGF& C) {
    if (code.index_of(C) < 0) throw NotACodeword("reference matrix is not in the codebook");
    DistanceDistribution dist;
    dist.a.assign(std::min(code.m, code.n) + 1, Int(0));
    for (const MatrixGF& D : code.codebook) {
        dist.a[rank_distance(D, C)] += 1;
    }
    return dist;
}

RowSpaceDistribution row_space_distribution(const RankCode& code, const MatrixGF& C) {
    if (code.index_of(C) < 0) throw NotACodeword("reference matrix is not in the codebook");
    RowSpaceDistribution dist;
    for (const MatrixGF& D : code.codebook) {
        dist.counts[row_space(D - C)] += 1;
    }
    return dist;
}

Cdc make_cdc(Field f, int n, int r, std::vector<Subspace> words) {
    Cdc cdc;
    cdc.f = std::move(f);
    cdc.n = n;
    cdc.r = r;
    for (const Subspace& w : words) {
        if (w.ambient() != n || w.field()->q() != cdc.f->q()) {
            throw AmbientMismatch("codeword ambient space does not match the code");
        }
        if (w.dim() != r) throw ParameterViolation("constant-dimension code requires dim = r");
    }
    std::sort(words.begin(), words.end());
    cdc.codebook = std::move(words);
    if (cdc.codebook.size() >= 2) {
        int best = r + 1;
        for (size_t i = 0; i < cdc.codebook.size(); ++i) {
            for (size_t j = i + 1; j < cdc.codebook.size(); ++j) {
                best = std::min(best, injection_distance(cdc.codebook[i], cdc.codebook[j]));
            }
        }
        cdc.d_inj = (best <= r) ? best : 0;
    }
    return cdc;
}

Cdc lift_code(const RankCode& code) {
    std::vector<Subspace> words;
    words.reserve(code.codebook.size());
    for (const MatrixGF& C : code.codebook) words.push_back(lift(C));
    Cdc cdc = make_cdc(code.f, code.m + code.n, code.m, std::move(words));
    cdc.origin = std::make_shared<const RankCode>(code);
    return cdc;
}

DistanceDistribution cdc_distance_distribution(const Cdc& cdc, const Subspace& C) {
    if (cdc.index_of(C) < 0) throw NotACodeword("reference subspace is not in the codebook");
    DistanceDistribution dist;
    dist.a.assign(cdc.r + 1, Int(0));
    for (const Subspace& D : cdc.codebook) {
        dist.a[injection_distance(D, C)] += 1;
    }
    return dist;
}

Int g_r_count_with_center(const MatrixGF& R, long s, const Subspace& W, long long budget) {
    if (W.ambient() != R.cols() || W.field()->q() != R.field()->q()) {
        throw AmbientMismatch("row space and center matrix disagree on the ambient space");
    }
    long long count = 0;
    for_each_matrix_with_row_space(
        W, R.rows(),
        [&](const MatrixGF& X) {
            if (rank_distance(X, R) == s) ++count;
        },
        budget);
    return count;
}

Int g_r_count(const Subspace& U, long s, const Subspace& W, int m, long long budget) {
    if (U.ambient() != W.ambient() || U.field()->q() != W.field()->q()) {
        throw AmbientMismatch("subspaces live in different ambient spaces");
    }
    if (U.dim() > m) throw ParameterViolation("center row space dimension exceeds the row count");
    MatrixGF R(U.field(), m, U.ambient());
    for (int i = 0; i < U.dim(); ++i) {
        for (int j = 0; j < U.ambient(); ++j) R.set(i, j, U.basis_at(i, j));
    }
    return g_r_count_with_center(R, s, W, budget);
}

void write_rank_code(std::ostream& out, const RankCode& code) {
    out << code.f->q() << ' ' << code.m << ' ' << code.n << ' ' << code.codebook.size() << "\n\n";
    for (const MatrixGF& w : code.codebook) out << w.to_text() << '\n';
}

RankCode read_rank_code(std::istream& in) {
    long q, m, n, count;
    if (!(in >> q >> m >> n >> count) || m < 1 || n < 1 || count < 0) {
        throw Error("rank code file: bad header");
    }
    Field f = field_from_order(q);
    std::vector<MatrixGF> words;
    words.reserve(count);
    for (long i = 0; i < count; ++i) {
        words.push_back(MatrixGF::from_text(f, static_cast<int>(m), static_cast<int>(n), in));
    }
    return make_rank_code(f, static_cast<int>(m), static_cast<int>(n), std::move(words));
}

void write_cdc(std::ostream& out, const Cdc& cdc) {
    out << cdc.f->q() << ' ' << cdc.n << ' ' << cdc.r << ' ' << cdc.codebook.size() << "\n\n";
    for (const Subspace& w : cdc.codebook) out << w.to_text() << '\n';
}

Cdc read_cdc(std::istream& in) {
    long q, n, r, count;
    if (!(in >> q >> n >> r >> count) || n < 1 || r < 0 || r > n || count < 0) {
        throw Error("cdc file: bad header");
    }
    Field f = field_from_order(q);
    std::vector<Subspace> words;
    words.reserve(count);
    for (long i = 0; i < count; ++i) {
        MatrixGF basis = MatrixGF::from_text(f, static_cast<int>(r), static_cast<int>(n), in);
        Subspace S = row_space(basis);
        if (S.dim() != r) throw Error("cdc file: basis rows are linearly dependent");
        words.push_back(std::move(S));
    }
    return make_cdc(f, static_cast<int>(n), static_cast<int>(r), std::move(words));
}

}  // namespace ranklab::codes
