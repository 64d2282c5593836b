#include "ranklab/qcomb.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

#include "ranklab/enumerate.hpp"

namespace ranklab::qcomb {

Int alpha(long q, long m, long u) {
    if (m < 0 || u < 0) return 0;
    if (u == 0) return 1;
    if (u > m) return 0;
    Int qm = ipow(q, m);
    Int prod = 1;
    Int qi = 1;
    for (long i = 0; i < u; ++i) {
        prod *= qm - qi;
        qi *= q;
    }
    return prod;
}

Int gaussian(long q, long n, long r) {
    if (n < 0 || r < 0 || r > n) return 0;
    return alpha(q, n, r) / alpha(q, r, r);
}

Int n_rank(long q, long m, long n, long u) { return gaussian(q, n, u) * alpha(q, m, u); }

Int v_rank(long q, long m, long n, long t) {
    Int sum = 0;
    for (long s = 0; s <= t; ++s) sum += n_rank(q, m, n, s);
    return sum;
}

namespace {

// Incremental forward-elimination state for short rows; each stored pivot
// row is normalized to 1 at its pivot and already reduced against earlier
// pivots.
struct Echelon {
    static constexpr int kCap = 8;
    int rank = 0;
    uint16_t rows[kCap][kCap] = {};
    int piv[kCap] = {};

    void insert(const FieldSpec& F, int n, const uint16_t* row) {
        uint16_t w[kCap];
        int j0 = reduce(F, n, row, w);
        if (j0 < 0) return;
        uint16_t inv = F.inv(w[j0]);
        for (int j = 0; j < n; ++j) rows[rank][j] = F.mul(inv, w[j]);
        piv[rank] = j0;
        ++rank;
    }

    int rank_with(const FieldSpec& F, int n, const uint16_t* row) const {
        uint16_t w[kCap];
        return rank + (reduce(F, n, row, w) >= 0 ? 1 : 0);
    }

  private:
    // Reduces `row` against the stored pivots into w; returns the first
    // nonzero position of the residue, or -1 if it vanished.
    int reduce(const FieldSpec& F, int n, const uint16_t* row, uint16_t* w) const {
        for (int j = 0; j < n; ++j) w[j] = row[j];
        for (int k = 0; k < rank; ++k) {
            uint16_t c = w[piv[k]];
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (rows[k][j]) w[j] = F.sub(w[j], F.mul(c, rows[k][j]));
            }
        }
        for (int j = 0; j < n; ++j) {
            if (w[j] != 0) return j;
        }
        return -1;
    }
};

struct JRankTable {
    int kmax = 0;
    std::vector<long long> c;  // [d][u][s]
    long long& at(int d, int u, int s) {
        return c[(static_cast<size_t>(d) * (kmax + 1) + u) * (kmax + 1) + s];
    }
    long long get(int d, int u, int s) const {
        return c[(static_cast<size_t>(d) * (kmax + 1) + u) * (kmax + 1) + s];
    }
};

// One sweep of GF(q)^{m x n} filling J(d,u,s) for every d at once: around
// the center pair (0, D_d) with D_d the identity-block matrix of rank d,
// count matrices E with rk(E) = u and rk(E - D_d) = s. Rows are enumerated
// depth-first so the elimination state of the first k rows is shared.
JRankTable jrank_sweep(const Field& f, int m, int n) {
    const FieldSpec& F = *f;
    const int q = F.q();
    const int kmax = std::min(m, n);
    JRankTable tab;
    tab.kmax = kmax;
    tab.c.assign(static_cast<size_t>(kmax + 1) * (kmax + 1) * (kmax + 1), 0);

    if (m == 0 || n == 0) {
        tab.at(0, 0, 0) = 1;
        return tab;
    }

    // states[level][d]: elimination state of rows 0..level-1 of E - D_d.
    std::vector<std::array<Echelon, Echelon::kCap + 1>> states(m + 1);
    std::vector<std::vector<uint16_t>> row(m, std::vector<uint16_t>(n, 0));

    std::function<void(int)> walk = [&](int level) {
        std::vector<uint16_t>& r = row[level];
        std::fill(r.begin(), r.end(), 0);
        uint16_t w[Echelon::kCap];
        for (;;) {
            if (level == m - 1) {
                int u = states[level][0].rank_with(F, n, r.data());
                tab.at(0, u, u) += 1;
                for (int d = 1; d <= kmax; ++d) {
                    int s;
                    if (level < d) {
                        for (int j = 0; j < n; ++j) w[j] = r[j];
                        w[level] = F.sub(w[level], 1);
                        s = states[level][d].rank_with(F, n, w);
                    } else {
                        s = states[level][d].rank_with(F, n, r.data());
                    }
                    tab.at(d, u, s) += 1;
                }
            } else {
                for (int d = 0; d <= kmax; ++d) {
                    states[level + 1][d] = states[level][d];
                    if (level < d) {
                        for (int j = 0; j < n; ++j) w[j] = r[j];
                        w[level] = F.sub(w[level], 1);
                        states[level + 1][d].insert(F, n, w);
                    } else {
                        states[level + 1][d].insert(F, n, r.data());
                    }
                }
                walk(level + 1);
            }
            int j = n;
            bool done = true;
            while (j > 0) {
                --j;
                if (++r[j] < q) {
                    done = false;
                    break;
                }
                r[j] = 0;
            }
            if (done) break;
        }
    };
    walk(0);
    return tab;
}

const JRankTable& jrank_table(long q, long m, long n) {
    static std::map<std::tuple<long, long, long>, JRankTable> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    // The metric space is invariant under transposition, so share the table.
    long rows = std::max(m, n), cols = std::min(m, n);
    auto key = std::make_tuple(q, rows, cols);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    if (cols > Echelon::kCap || rows > 24) {
        throw BudgetExceeded("rank-sphere intersection enumeration limited to small matrices");
    }
    long long cap = std::max(default_budget(), 1LL << 28);
    if (ipow(q, rows * cols) > cap) {
        throw BudgetExceeded("rank-sphere intersection enumeration exceeds budget");
    }
    Field f = field_from_order(q);
    return cache.emplace(key, jrank_sweep(f, static_cast<int>(rows), static_cast<int>(cols)))
        .first->second;
}

}  // namespace

Int j_rank(long q, long m, long n, long u, long s, long d) {
    if (m < 0 || n < 0) return 0;
    long kmax = std::min(m, n);
    if (u < 0 || s < 0 || d < 0 || u > kmax || s > kmax || d > kmax) return 0;
    const JRankTable& tab = jrank_table(q, m, n);
    return tab.get(static_cast<int>(d), static_cast<int>(u), static_cast<int>(s));
}

Int n_sub(long q, long n, long r, long s, long d) {
    if (n < 0 || r < 0 || s < 0 || d < 0 || r > n || s > n) return 0;
    if ((r + d - s) % 2 != 0) return 0;
    long u = (r + d - s) / 2;
    if (u < 0 || d - u < 0) return 0;
    return q_power(q, u * (d - u)).convert_to<Int>() * gaussian(q, r, u) *
           gaussian(q, n - r, d - u);
}

Int n_inj(long q, long n, long r, long s, long d) {
    long ds = 2 * d - std::abs(r - s);
    if (ds < 0) return 0;
    return n_sub(q, n, r, s, ds);
}

Int j_sub_triangle(long q, long n, long u, long s, long a, long b, long c) {
    if (u < 0 || s < 0) return 0;
    if (a < 0 || b < 0 || c < 0 || a > n || b > n || c > n) return 0;
    long w = u + s;
    // A center pair with dimensions (a,b) at subspace distance w exists iff
    // t = (a+b-w)/2 is an integral intersection dimension fitting in GF(q)^n.
    if ((a + b - w) % 2 != 0) return 0;
    long t = (a + b - w) / 2;
    if (t < 0 || t > std::min(a, b) || a + b - t > n) return 0;
    if (u > std::min(a + c, a + 2 * b - c)) return 0;
    if (s > std::min(b + c, 2 * a + b - c)) return 0;
    if ((c - b + s) % 2 != 0 || (c - a + u) % 2 != 0) return 0;
    return gaussian(q, (a - b + u + s) / 2, (c - b + s) / 2) *
           gaussian(q, (b - a + u + s) / 2, (c - a + u) / 2);
}

bool center_pair_exists(long n, long a, long b, long w) {
    if (a < 0 || b < 0 || a > n || b > n) return false;
    if ((a + b - w) % 2 != 0) return false;
    long t = (a + b - w) / 2;
    return t >= 0 && t <= std::min(a, b) && a + b - t <= n;
}

namespace {

struct JSubTable {
    int n = 0;
    std::vector<long long> c;  // [dim][u][s], distances up to 2n
    long long& at(int dim, int u, int s) {
        return c[(static_cast<size_t>(dim) * (2 * n + 1) + u) * (2 * n + 1) + s];
    }
    long long get(int dim, int u, int s) const {
        return c[(static_cast<size_t>(dim) * (2 * n + 1) + u) * (2 * n + 1) + s];
    }
};

// Canonical center pair for dimensions (a,b) at subspace distance w: both
// are spans of unit vectors sharing the first t coordinates.
bool canonical_pair(const Field& f, long n, long a, long b, long w, Subspace* A, Subspace* B) {
    if (a < 0 || b < 0 || a > n || b > n) return false;
    if ((a + b - w) % 2 != 0) return false;
    long t = (a + b - w) / 2;
    if (t < 0 || t > std::min(a, b) || a + b - t > n) return false;
    std::vector<int> ca, cb;
    for (long i = 0; i < a; ++i) ca.push_back(static_cast<int>(i));
    for (long i = 0; i < t; ++i) cb.push_back(static_cast<int>(i));
    for (long i = a; i < a + b - t; ++i) cb.push_back(static_cast<int>(i));
    *A = unit_span(f, static_cast<int>(n), ca);
    *B = unit_span(f, static_cast<int>(n), cb);
    return true;
}

const JSubTable& jsub_table(const Field& f, long n, long a, long b, long w, long long budget) {
    static std::map<std::tuple<long, long, long, long, long>, JSubTable> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_tuple(static_cast<long>(f->q()), n, a, b, w);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Subspace A, B;
    if (!canonical_pair(f, n, a, b, w, &A, &B)) {
        throw NoSuchConfiguration("no center pair with the requested dimensions and distance");
    }
    JSubTable tab;
    tab.n = static_cast<int>(n);
    tab.c.assign(static_cast<size_t>(n + 1) * (2 * n + 1) * (2 * n + 1), 0);
    for (const Subspace& C : all_subspaces(f, static_cast<int>(n), budget)) {
        int du = subspace_distance(A, C);
        int ds = subspace_distance(B, C);
        tab.at(C.dim(), du, ds) += 1;
    }
    return cache.emplace(key, std::move(tab)).first->second;
}

}  // namespace

Int j_sub_general(const Field& f, long n, long u, long s, long w, long a, long b, long c,
                  long long budget) {
    const JSubTable& tab = jsub_table(f, n, a, b, w, budget);
    if (c < 0 || c > n) return 0;
    if (u < 0 || s < 0 || u > 2 * n || s > 2 * n) return 0;
    return tab.get(static_cast<int>(c), static_cast<int>(u), static_cast<int>(s));
}

Int j_sub(const Field& f, long n, long u, long s, long w, long a, long b, long c,
          long long budget) {
    if (u >= 0 && s >= 0 && u + s == w) return j_sub_triangle(f->q(), n, u, s, a, b, c);
    return j_sub_general(f, n, u, s, w, a, b, c, budget);
}

Rat f_exponent(long n, long r, long s, long t) {
    if (t < 0 || r < 0 || s < 0 || t > std::min(r + s, n / 2)) {
        throw PreconditionViolated("f exponent requires 0 <= t <= min(r+s, n/2)");
    }
    return Rat(t * (2 * n - t) - (r - s) * (2 * n - r - 3 * s), 4);
}

Interval sum_ns_bound(long q, long n, long r, long s, long t) {
    return constants(q).L * pow_q_interval(q, f_exponent(n, r, s, t));
}

const Constants& constants(long q, double tolerance) {
    static std::map<std::pair<long, double>, Constants> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(q, tolerance);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    if (q < 2) throw ParameterViolation("constants require q >= 2");
    Constants c;
    c.q = q;
    c.tolerance = tolerance;

    // K_q: partial products are upper bounds; the tail of the product is at
    // least 1 - sum_{i>j} q^-i (a geometric majorant of the missing factors).
    // The K enclosure is kept two orders tighter than asked so that the
    // derived L enclosure still lands inside the tolerance.
    Rat P(1);
    for (long j = 1;; ++j) {
        P *= Rat(1) - q_power(q, -j);
        Rat tail = q_power(q, -j) / (q - 1);
        if (tail < 1) {
            Rat lo = P * (Rat(1) - tail);
            if (to_double(P - lo) < tolerance / 100 * to_double(lo)) {
                c.k_lo = lo;
                c.k_hi = P;
                break;
            }
        }
        if (j > 4096) throw Error("K_q truncation failed to converge");
    }
    c.K = Interval{Interval::of(c.k_lo).lo, Interval::of(c.k_hi).hi};

    // L_q = K_q^-2 * (1 + sum_{i>=1} q^{-3i^2/4}); successive term ratios are
    // below q^{-15/4}, so twice the next term majorizes the tail.
    Interval S = Interval::point(1.0);
    for (long i = 1;; ++i) {
        Interval term = pow_q_interval(q, Rat(-3 * i * i, 4));
        S = S + term;
        if (term.hi < tolerance / 16 * S.lo) {
            Interval next = pow_q_interval(q, Rat(-3 * (i + 1) * (i + 1), 4));
            S.hi = Interval::next_up(S.hi + 2 * next.hi);
            break;
        }
        if (i > 4096) throw Error("L_q truncation failed to converge");
    }
    c.L = (c.K * c.K).inverse() * S;
    if (c.L.width() > tolerance) throw Error("L_q enclosure wider than the tolerance");

    c.H = (q == 2) ? Rat(7, 2) : Rat(q - 1, q - 2);

    return cache.emplace(key, std::move(c)).first->second;
}

}  // namespace ranklab::qcomb
