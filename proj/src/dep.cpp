#include "ranklab/dep.hpp"

#include <algorithm>

namespace ranklab::dep {

using namespace qcomb;

Interval ClosedFormBound::value(double tolerance) const {
    const Constants& c = constants(q, tolerance);
    Interval v = pow_q_interval(q, exponent);
    for (int i = 0; i < k_power; ++i) v = v * c.K;
    for (int i = 0; i > k_power; --i) v = v * c.K.inverse();
    for (int i = 0; i < l_power; ++i) v = v * c.L;
    for (int i = 0; i > l_power; --i) v = v * c.L.inverse();
    return v;
}

static void check_radius(int t, int d) {
    if (t < 0) throw ParameterViolation("decoding radius must be nonnegative");
    if (d > 0 && 2 * t + 1 > d) {
        throw ParameterViolation("decoding radius exceeds the unique-decoding guarantee");
    }
}

static void check_code_distance(const RankCode& code) {
    if (code.codebook.size() >= 2 && !code.has_min_distance()) {
        throw ParameterViolation("code has no minimum distance (duplicate codewords?)");
    }
}

static void check_cdc_distance(const Cdc& cdc) {
    if (cdc.codebook.size() >= 2 && !cdc.has_min_distance()) {
        throw ParameterViolation("code has no minimum distance (duplicate codewords?)");
    }
}

Rat dep_rank_exact(const RankCode& code, const MatrixGF& C, const Subspace& U, int t,
                   long long budget) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    if (U.ambient() != code.n) throw AmbientMismatch("error row space must live in GF(q)^n");
    if (U.dim() > code.m) throw ParameterViolation("no m-row error has this row space");
    if (code.codebook.size() < 2) return 0;
    check_code_distance(code);
    check_radius(t, code.d);
    const long u = U.dim();
    const int d = code.d;
    if (u < d - t) return 0;

    codes::RowSpaceDistribution rsd = row_space_distribution(code, C);
    Int total = 0;
    for (const auto& [W, count] : rsd.counts) {
        if (W.dim() < d) continue;
        Int inner = 0;
        for (int s = 0; s <= t; ++s) {
            inner += codes::g_r_count(W, s, U, code.m, budget);
        }
        total += count * inner;
    }
    return Rat(total, alpha(code.f->q(), code.m, u));
}

Rat dep_rank_exact_max(const RankCode& code, int t, long long budget) {
    Rat best = 0;
    for (const MatrixGF& C : code.codebook) {
        for (int u = 0; u <= code.n; ++u) {
            for_each_subspace(
                code.f, code.n, u,
                [&](const Subspace& U) { best = std::max(best, dep_rank_exact(code, C, U, t, budget)); },
                budget);
        }
    }
    return best;
}

Rat dep_rank_bound(long q, long m, long n, long d, long u, long t) {
    if (d < 1) throw ParameterViolation("minimum distance must be >= 1");
    check_radius(static_cast<int>(t), static_cast<int>(d));
    if (n_rank(q, m, n, u) == 0) throw ParameterViolation("no errors of rank u exist");
    Int total = 0;
    for (long w = d; w <= std::min(m, n); ++w) {
        Int js = 0;
        for (long s = 0; s <= t; ++s) js += j_rank(q, m, n, u, s, w);
        total += gaussian(q, n, w) * alpha(q, m, w - d + 1) * js;
    }
    return Rat(total, n_rank(q, m, n, u));
}

ClosedFormBound dep_rank_asymptotic(long q, long m, long n, long d) {
    if (n > m) throw ParameterViolation("asymptotic bound stated for n <= m");
    if (d < 1) throw ParameterViolation("minimum distance must be >= 1");
    long t = (d - 1) / 2;
    ClosedFormBound b;
    b.q = q;
    b.k_power = -2;
    b.exponent = Rat(-t * (m - n + t));
    if (d == 2 * t + 2) b.exponent -= m;
    return b;
}

Rat dep_rank_mrd(long q, long m, long n, long d, long u, long t) {
    if (n > m) throw ParameterViolation("exact maximum-cardinality DEP stated for n <= m");
    if (d < 1 || d > n) throw ParameterViolation("minimum distance out of range");
    check_radius(static_cast<int>(t), static_cast<int>(d));
    if (n_rank(q, m, n, u) == 0) throw ParameterViolation("no errors of rank u exist");
    Int total = 0;
    for (long w = d; w <= n; ++w) {
        Int js = 0;
        for (long s = 0; s <= t; ++s) js += j_rank(q, m, n, u, s, w);
        total += codes::mrd_weight_distribution(q, m, n, d, w) * js;
    }
    return Rat(total, n_rank(q, m, n, u));
}

Rat dep_rank_symmetric(const RankCode& code, const MatrixGF& C, long u, int t) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    if (code.codebook.size() < 2) return 0;
    check_code_distance(code);
    check_radius(t, code.d);
    if (n_rank(code.f->q(), code.m, code.n, u) == 0) {
        throw ParameterViolation("no errors of rank u exist");
    }
    codes::DistanceDistribution dist = distance_distribution(code, C);
    const long q = code.f->q();
    Int total = 0;
    for (long w = code.d; w < static_cast<long>(dist.a.size()); ++w) {
        if (dist.a[w] == 0) continue;
        Int js = 0;
        for (long s = 0; s <= t; ++s) js += j_rank(q, code.m, code.n, u, s, w);
        total += dist.a[w] * js;
    }
    return Rat(total, n_rank(q, code.m, code.n, u));
}

Rat dep_rank_dmt(const RankCode& code, const MatrixGF& C, int t) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    if (code.codebook.size() >= 2) check_code_distance(code);
    if (!code.has_min_distance()) return 0;
    check_radius(t, code.d);
    const long q = code.f->q();
    const long d = code.d;
    codes::DistanceDistribution dist = distance_distribution(code, C);
    Rat scale = Rat(ipow(q, t * (d - t)) * gaussian(q, d, t),
                    gaussian(q, code.n, d - t) * alpha(q, code.m, d - t));
    return scale * Rat(dist.at(d));
}

ClosedFormBound kk_mrd_dmt_lower(long q, long m, long n, long d) {
    if (n > m) throw ParameterViolation("lower bound stated for n <= m");
    if (d < 1) throw ParameterViolation("minimum distance must be >= 1");
    long t = (d - 1) / 2;
    ClosedFormBound b;
    b.q = q;
    b.k_power = 1;
    b.exponent = Rat(-t * (m - n + t));
    if (d == 2 * t + 2) b.exponent -= m;
    return b;
}

DominanceResult mrd_dominance_check(const RankCode& code, const MatrixGF& C, const Subspace& U,
                                    int t, long long budget) {
    const long q = code.f->q();
    const long m = code.m, n = code.n;
    if (n > m) throw ParameterViolation("dominance comparison stated for n <= m");
    if (!code.has_min_distance()) throw ParameterViolation("code has no minimum distance");
    const long d = code.d;
    if (q == 2 && n == m && d == m - 1) {
        throw ExcludedRegime("q=2, n=m, d=m-1 is outside the dominance statement");
    }
    DominanceResult res;
    res.lhs = dep_rank_exact(code, C, U, t, budget);
    res.rhs = constants(q).H * dep_rank_mrd(q, m, n, d, U.dim(), t);
    // Strict where a decoder error is possible at all; vacuous when both
    // sides vanish (error classes below the distance threshold).
    res.holds = res.lhs < res.rhs || (res.lhs == 0 && res.rhs == 0);
    return res;
}

namespace {

// Shared shape of the bounded-subspace-decoder DEP sums: weights[w] stands
// for the number of codewords at injection distance w from the sent one.
CdcDep cdc_subspace_sum(const Field& f, long n, long r, long d, long u, long v, long radius,
                        const std::vector<Int>& weights, long long budget) {
    const long q = f->q();
    Int cls = n_sub(q, n, r, v, u);
    if (cls == 0) return {Rat(0), false};
    if (u < d + 1 || std::llabs(v - r) > d - 1) return {Rat(0), true};
    Int total = 0;
    for (long w = d; w < static_cast<long>(weights.size()); ++w) {
        if (weights[w] == 0) continue;
        Int js = 0;
        for (long s = 0; s <= radius; ++s) {
            js += j_sub(f, n, u, s, 2 * w, r, r, v, budget);
        }
        total += weights[w] * js;
    }
    return {Rat(total, cls), true};
}

}  // namespace

CdcDep dep_cdc_subspace_exact(const Cdc& cdc, const Subspace& C, long u, long v,
                              long long budget) {
    if (cdc.index_of(C) < 0) throw NotACodeword("sent subspace is not a codeword");
    if (cdc.codebook.size() < 2) return {Rat(0), true};
    check_cdc_distance(cdc);
    codes::DistanceDistribution dist = cdc_distance_distribution(cdc, C);
    return cdc_subspace_sum(cdc.f, cdc.n, cdc.r, cdc.d_inj, u, v, cdc.d_inj - 1, dist.a, budget);
}

Rat dep_cdc_subspace_lifting_bound(long q, long n, long r, long d, long u, long v,
                                   long long budget) {
    if (r > n - r) throw ParameterViolation("lifting bound stated for r <= n-r");
    if (d < 1) throw ParameterViolation("minimum distance must be >= 1");
    Field f = field_from_order(q);
    std::vector<Int> weights(r + 1, Int(0));
    for (long w = d; w <= r; ++w) {
        weights[w] = gaussian(q, r, w) * alpha(q, n - r, w - d + 1);
    }
    return cdc_subspace_sum(f, n, r, d, u, v, d - 1, weights, budget).value;
}

CdcDep dep_cdc_subspace_kk(long q, long n, long r, long d, long u, long v, long long budget) {
    if (r > n - r) throw ParameterViolation("reference DEP stated for r <= n-r");
    Field f = field_from_order(q);
    std::vector<Int> weights(r + 1, Int(0));
    for (long w = d; w <= r; ++w) {
        // Rank distance distribution of a maximum-cardinality code of
        // (n-r) x r matrices (transposing to put the larger side first).
        weights[w] = codes::mrd_weight_distribution(q, n - r, r, d, w);
    }
    return cdc_subspace_sum(f, n, r, d, u, v, d - 1, weights, budget);
}

ClosedFormBound dep_cdc_subspace_asymptotic(long q, long n, long r, long d, long v) {
    if (r > n - r) throw ParameterViolation("bound stated for r <= n-r");
    if (d < 1) throw ParameterViolation("minimum distance must be >= 1");
    ClosedFormBound b;
    b.q = q;
    b.l_power = 1;
    Rat A = Rat(d - 1 + v - r, 2);
    Rat B = Rat(d - 1 + r - v, 2);
    b.exponent = -A * (Rat(n - 2 * r) + B);
    if ((d - 1 + r - v) % 2 != 0) {
        b.exponent -= Rat(1, 2) * (Rat(n - d + 1) + Rat(1, 2));
    }
    return b;
}

Rat dep_cdc_subspace_dmt(const Cdc& cdc, const Subspace& C, long v) {
    if (cdc.index_of(C) < 0) throw NotACodeword("sent subspace is not a codeword");
    const long q = cdc.f->q();
    const long r = cdc.r, n = cdc.n, d = cdc.d_inj;
    if (d < 1) return 0;
    long i = ((d - 1 + v - r) % 2 == 0) ? 1 : 2;
    long tau = (d - i + v - r) / 2;
    Int den = gaussian(q, r, d - tau) * gaussian(q, n - r, tau + i);
    if (den == 0) throw ParameterViolation("no channel output of this dimension can cause an error");
    codes::DistanceDistribution dist = cdc_distance_distribution(cdc, C);
    Rat scale = Rat(gaussian(q, d, tau) * gaussian(q, d, tau + i), den);
    return q_power(q, -(d - tau) * (tau + i)) * scale * Rat(dist.at(d));
}

ClosedFormBound kk_subspace_dmt_lower(long q, long n, long r, long d, long v) {
    ClosedFormBound b = dep_cdc_subspace_asymptotic(q, n, r, d, v);
    b.k_power = 2;
    b.l_power = 0;
    return b;
}

CdcDep dep_cdc_injection_exact(const Cdc& cdc, const Subspace& C, long mu, long v, int t,
                               long long budget) {
    if (cdc.index_of(C) < 0) throw NotACodeword("sent subspace is not a codeword");
    if (cdc.codebook.size() < 2) return {Rat(0), true};
    check_cdc_distance(cdc);
    const long r = cdc.r, d = cdc.d_inj;
    if (t < 0 || 2 * t + 1 > d) throw ParameterViolation("injection radius exceeds the guarantee");
    long dv = std::llabs(v - r);
    long u = 2 * mu - dv;
    Int cls = n_sub(cdc.f->q(), cdc.n, r, v, u);
    if (cls == 0) return {Rat(0), false};
    if (dv > t || mu < d - t + dv) return {Rat(0), true};
    // Identity with the subspace decoder: radius 2t - |v-r| at distance
    // u = 2mu - |v-r|.
    long radius = 2 * t - dv;
    codes::DistanceDistribution dist = cdc_distance_distribution(cdc, C);
    Int total = 0;
    for (long w = d; w < static_cast<long>(dist.a.size()); ++w) {
        if (dist.a[w] == 0) continue;
        Int js = 0;
        for (long s = 0; s <= radius; ++s) {
            js += j_sub(cdc.f, cdc.n, u, s, 2 * w, r, r, v, budget);
        }
        total += dist.a[w] * js;
    }
    return {Rat(total, cls), true};
}

ClosedFormBound dep_cdc_injection_bound(long q, long n, long r, long d, long t, long v) {
    if (r > n - r) throw ParameterViolation("bound stated for r <= n-r");
    if (d != 2 * t + 1 && d != 2 * t + 2) {
        throw ParameterViolation("radius must satisfy d = 2t+1 or d = 2t+2");
    }
    ClosedFormBound b;
    b.q = q;
    b.l_power = 1;
    Rat half_dv = Rat(std::llabs(v - r), 2);
    Rat half_v = Rat(v - r, 2);
    b.exponent = -(Rat(t) + half_v) * (Rat(n - 2 * r + t) - half_v) -
                 half_dv * (Rat(n - 2 * t) + half_dv);
    if (d == 2 * t + 2) b.exponent -= (n - r);
    return b;
}

DominanceResult kk_dominance_check(const Cdc& cdc, const Subspace& C, long u, long v,
                                   long long budget) {
    if (!cdc.origin) throw ParameterViolation("dominance comparison needs a lifted code");
    const long q = cdc.f->q();
    const long r = cdc.r, n = cdc.n, d = cdc.d_inj;
    if (r > n - r) throw ParameterViolation("dominance comparison stated for r <= n-r");
    if (!cdc.has_min_distance()) throw ParameterViolation("code has no minimum distance");
    if (q == 2 && r == n - r && d == n - r - 1) {
        throw ExcludedRegime("q=2, r=n-r, d=n-r-1 is outside the dominance statement");
    }
    DominanceResult res;
    res.lhs = dep_cdc_subspace_exact(cdc, C, u, v, budget).value;
    res.rhs = constants(q).H * dep_cdc_subspace_kk(q, n, r, d, u, v, budget).value;
    // Strict where a decoder error is possible at all; vacuous when both
    // sides vanish (error classes below the distance threshold).
    res.holds = res.lhs < res.rhs || (res.lhs == 0 && res.rhs == 0);
    return res;
}

std::vector<Fig1Row> figure1_exponents(long q, long n, long r, long d, long t) {
    std::vector<Fig1Row> rows;
    long lo = std::min(r - d + 1, r - t);
    long hi = std::max(r + d - 1, r + t);
    for (long v = lo; v <= hi; ++v) {
        Fig1Row row;
        row.v = v;
        if (v >= r - d + 1 && v <= r + d - 1) {
            row.subspace_exponent = dep_cdc_subspace_asymptotic(q, n, r, d, v).exponent;
        }
        if (v >= r - t && v <= r + t) {
            row.injection_exponent = dep_cdc_injection_bound(q, n, r, d, t, v).exponent;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ranklab::dep
