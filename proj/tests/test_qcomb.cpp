#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ranklab/enumerate.hpp"
#include "ranklab/qcomb.hpp"

using namespace ranklab;
using namespace ranklab::qcomb;

namespace {

// Independent sphere-surface oracle: number of dim-s subspaces at subspace
// distance d from U, by scanning the projective space.
long long count_at_distance(const Field& f, int n, const Subspace& U, int s, int d) {
    long long count = 0;
    for_each_subspace(f, n, s, [&](const Subspace& V) {
        if (subspace_distance(U, V) == d) ++count;
    });
    return count;
}

}  // namespace

TEST_CASE("alpha") {
    CHECK(alpha(2, 3, 0) == 1);
    CHECK(alpha(2, 5, 0) == 1);
    CHECK(alpha(2, 3, 2) == 42);
    CHECK(alpha(2, -1, 1) == 0);
    CHECK(alpha(2, 2, 3) == 0);
    CHECK(alpha(3, 2, 2) == Int((9 - 1) * (9 - 3)));
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian(2, 4, 0) == 1);
    CHECK(gaussian(2, 4, 2) == 35);
    CHECK(gaussian(2, 3, 1) == 7);
    CHECK(gaussian(2, 2, 3) == 0);
    CHECK(gaussian(2, -1, 0) == 0);
    CHECK(gaussian(3, 4, 2) == 130);
    // Symmetry [n r] = [n n-r].
    for (long n = 0; n <= 8; ++n) {
        for (long r = 0; r <= n; ++r) CHECK(gaussian(2, n, r) == gaussian(2, n, n - r));
    }
}

TEST_CASE("gaussian sandwich bounds") {
    for (long q : {2L, 3L, 4L}) {
        const Constants& c = constants(q);
        for (long n = 0; n <= 8; ++n) {
            for (long r = 0; r <= n; ++r) {
                Int g = gaussian(q, n, r);
                Rat power = q_power(q, r * (n - r));
                CHECK(Rat(g) >= power);
                // Strict upper bound via the certified rational endpoint.
                CHECK(Rat(g) * c.k_lo < power);
                CHECK(Rat(g) * c.k_hi < power + power);  // sanity: not wildly loose
            }
        }
    }
}

TEST_CASE("rank sphere sizes") {
    CHECK(n_rank(2, 2, 2, 0) == 1);
    CHECK(n_rank(2, 2, 2, 1) == 9);
    CHECK(v_rank(2, 2, 2, 1) == 10);
    CHECK(v_rank(2, 2, 2, 2) == 16);
    for (long q : {2L, 3L}) {
        for (long m = 1; m <= 3; ++m) {
            for (long n = 1; n <= 3; ++n) {
                CHECK(v_rank(q, m, n, std::min(m, n)) == ipow(q, m * n));
            }
        }
    }
    // Surface count against direct enumeration.
    Field f = field_create(2, 1);
    long long rank1 = 0;
    for_each_matrix(f, 2, 2, [&](const MatrixGF& A) {
        if (mat_rank(A) == 1) ++rank1;
    });
    CHECK(Int(rank1) == n_rank(2, 2, 2, 1));
}

TEST_CASE("rank sphere intersections") {
    CHECK(j_rank(2, 2, 2, 1, 1, 2) == 6);  // q^{1*1} [2 1]
    CHECK(j_rank(2, 3, 3, 0, 3, 3) == 1);
    CHECK(j_rank(2, 3, 3, 2, 1, 3) == 28);  // q^{2*1} [3 2]
    CHECK(j_rank(2, 3, 3, 9, 1, 1) == 0);

    // Direct two-center oracle for one instance.
    Field f = field_create(2, 1);
    MatrixGF B(f, 3, 3);
    for (int i = 0; i < 3; ++i) B.set(i, i, 1);
    long long direct = 0;
    for_each_matrix(f, 3, 3, [&](const MatrixGF& Z) {
        if (mat_rank(Z) == 2 && rank_distance(Z, B) == 1) ++direct;
    });
    CHECK(Int(direct) == j_rank(2, 3, 3, 2, 1, 3));
}

TEST_CASE("rank sphere identities at desk scale") {
    for (long q : {2L, 3L}) {
        for (long m = 1; m <= 3; ++m) {
            for (long n = 1; n <= 3; ++n) {
                long kmax = std::min(m, n);
                for (long d = 0; d <= kmax; ++d) {
                    for (long s = 0; s <= kmax; ++s) {
                        Int sum = 0;
                        for (long u = 0; u <= kmax; ++u) {
                            sum += j_rank(q, m, n, u, s, d);
                            CHECK(n_rank(q, m, n, d) * j_rank(q, m, n, u, s, d) ==
                                  n_rank(q, m, n, u) * j_rank(q, m, n, d, s, u));
                        }
                        CHECK(sum == n_rank(q, m, n, s));
                    }
                }
                // Special-case closed form.
                for (long d = 0; d <= kmax; ++d) {
                    for (long t = 0; t <= d; ++t) {
                        CHECK(j_rank(q, m, n, t, d - t, d) ==
                              ipow(q, t * (d - t)) * gaussian(q, d, t));
                    }
                }
            }
        }
    }
}

TEST_CASE("subspace sphere sizes") {
    CHECK(n_sub(2, 4, 2, 2, 0) == 1);
    CHECK(n_sub(2, 4, 2, 3, 2) == 0);  // parity: u would be 3/2
    CHECK(n_sub(2, 4, 2, 3, 3) == 12);
    CHECK(n_sub(2, 4, 2, 2, 2) == 18);

    Field f = field_create(2, 1);
    Subspace U = unit_span(f, 4, {0, 1});
    CHECK(Int(count_at_distance(f, 4, U, 3, 3)) == n_sub(2, 4, 2, 3, 3));
    CHECK(Int(count_at_distance(f, 4, U, 2, 2)) == n_sub(2, 4, 2, 2, 2));
    CHECK(Int(count_at_distance(f, 4, U, 1, 3)) == n_sub(2, 4, 2, 1, 3));

    // Exhaustive surface check for q=2, n=4.
    for (int r = 0; r <= 4; ++r) {
        Subspace A = unit_span(f, 4, [&] {
            std::vector<int> coords;
            for (int i = 0; i < r; ++i) coords.push_back(i);
            return coords;
        }());
        for (int s = 0; s <= 4; ++s) {
            for (int d = 0; d <= 8; ++d) {
                CHECK(Int(count_at_distance(f, 4, A, s, d)) == n_sub(2, 4, r, s, d));
            }
        }
    }
}

TEST_CASE("injection sphere sizes") {
    Field f = field_create(2, 1);
    Subspace U = unit_span(f, 4, {0, 1});
    for (int s = 0; s <= 4; ++s) {
        for (int d = 0; d <= 4; ++d) {
            long long direct = 0;
            for_each_subspace(f, 4, s, [&](const Subspace& V) {
                if (injection_distance(U, V) == d) ++direct;
            });
            CHECK(Int(direct) == n_inj(2, 4, 2, s, d));
        }
    }
}

TEST_CASE("collinear sphere intersections: closed form") {
    // u > a+c kills the count.
    CHECK(j_sub_triangle(2, 6, 4, 0, 1, 5, 1) == 0);
    CHECK(j_sub_triangle(2, 4, 2, 2, 2, 2, 2) == 9);
    CHECK(j_sub_triangle(2, 4, 3, 1, 2, 2, 3) == 3);
    // Sphere of radius 0 is its center.
    CHECK(j_sub_triangle(2, 4, 2, 0, 2, 2, 2) == 1);
    CHECK(j_sub_triangle(2, 4, 2, 0, 2, 2, 3) == 0);
}

TEST_CASE("general sphere intersections by enumeration") {
    Field f = field_create(2, 1);
    CHECK(j_sub_general(f, 4, 3, 1, 4, 2, 2, 3, default_budget()) == 3);
    CHECK(j_sub_general(f, 4, 2, 0, 2, 2, 2, 2, default_budget()) == 1);
    CHECK(j_sub_general(f, 4, 4, 0, 2, 2, 2, 2, default_budget()) == 0);
    CHECK_THROWS_AS(j_sub_general(f, 4, 1, 1, 9, 2, 2, 2, default_budget()),
                    NoSuchConfiguration);

    // Sum over u recovers the sphere size around the second center.
    Int sum1 = 0, sum2 = 0;
    for (long u = 0; u <= 8; ++u) {
        sum1 += j_sub_general(f, 4, u, 1, 2, 2, 2, 2, default_budget());
        sum2 += j_sub_general(f, 4, u, 2, 2, 2, 2, 2, default_budget());
    }
    CHECK(sum1 == n_sub(2, 4, 2, 2, 1));
    CHECK(sum1 == 0);
    CHECK(sum2 == n_sub(2, 4, 2, 2, 2));
    CHECK(sum2 == 18);
}

TEST_CASE("intersection volumes depend only on dimensions and distance") {
    Field f = field_create(2, 1);
    const int n = 4;
    const auto& all = all_subspaces(f, n);
    std::mt19937_64 rng(23);
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            for (int w = 0; w <= 2 * n; ++w) {
                // Collect pairs (A,B) of dims (a,b) at distance w.
                std::vector<std::pair<const Subspace*, const Subspace*>> pairs;
                for (const Subspace& A : all) {
                    if (A.dim() != a) continue;
                    for (const Subspace& B : all) {
                        if (B.dim() != b) continue;
                        if (subspace_distance(A, B) == w) pairs.emplace_back(&A, &B);
                    }
                }
                if (pairs.empty()) continue;
                for (int rep = 0; rep < 10; ++rep) {
                    auto [A, B] = pairs[rng() % pairs.size()];
                    for (int c = 0; c <= n; ++c) {
                        for (int u = 0; u <= 2 * n; ++u) {
                            for (int s = 0; s <= 2 * n; ++s) {
                                long long direct = 0;
                                for (const Subspace& C : all) {
                                    if (C.dim() == c && subspace_distance(*A, C) == u &&
                                        subspace_distance(*B, C) == s) {
                                        ++direct;
                                    }
                                }
                                CHECK(Int(direct) ==
                                      j_sub_general(f, n, u, s, w, a, b, c, default_budget()));
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("equal-dimension intersections reduce to the injection metric") {
    // Within one Grassmannian, J_S(2u,2s,2w;a,a,a) counts by injection
    // distances; verify against a direct scan.
    Field f = field_create(2, 1);
    const int n = 4, a = 2;
    std::vector<Subspace> grass;
    for_each_subspace(f, n, a, [&](const Subspace& S) { grass.push_back(S); });
    for (const Subspace& A : grass) {
        for (const Subspace& B : grass) {
            int w = injection_distance(A, B);
            for (int u = 0; u <= a; ++u) {
                for (int s = 0; s <= a; ++s) {
                    long long direct = 0;
                    for (const Subspace& C : grass) {
                        if (injection_distance(A, C) == u && injection_distance(B, C) == s) {
                            ++direct;
                        }
                    }
                    CHECK(Int(direct) ==
                          j_sub(f, n, 2 * u, 2 * s, 2 * w, a, a, a, default_budget()));
                }
            }
        }
    }
}

TEST_CASE("exponent function and the sphere-volume bound") {
    CHECK(f_exponent(6, 2, 2, 0) == 0);
    CHECK(f_exponent(4, 2, 2, 2) == 3);
    CHECK_THROWS_AS(f_exponent(4, 1, 0, 2), PreconditionViolated);

    // t = 0, r = s: the bound collapses to L_q and the sum to 1.
    Interval b0 = sum_ns_bound(2, 6, 2, 2, 0);
    CHECK(Rat(1) < Rat(b0.lo));

    // n=4, r=s=2, t=2: the exact sum is 19.
    Int sum = 0;
    for (long d = 0; d <= 2; ++d) sum += n_sub(2, 4, 2, 2, d);
    CHECK(sum == 19);
    Interval b = sum_ns_bound(2, 4, 2, 2, 2);
    CHECK(certainly_less(Rat(sum), b));

    // The bound is strict for every feasible desk-scale tuple.
    for (long r = 0; r <= 4; ++r) {
        for (long s = 0; s <= 4; ++s) {
            for (long t = 0; t <= std::min(r + s, 2L); ++t) {
                Int total = 0;
                for (long d = 0; d <= t; ++d) total += n_sub(2, 4, r, s, d);
                CHECK(certainly_less(Rat(total), sum_ns_bound(2, 4, r, s, t)));
            }
        }
    }
}

TEST_CASE("certified constants") {
    const Constants& c2 = constants(2);
    CHECK(c2.k_lo > 0);
    CHECK(c2.k_hi < 1);
    CHECK(c2.k_hi - c2.k_lo < Rat(1, 1000000000000LL) * c2.k_lo);
    CHECK(std::abs(c2.K.mid() - 0.2887880951) < 1e-9);
    CHECK(c2.L.lo > 1.0);
    CHECK(c2.L.width() < 1e-10 * c2.L.lo);
    CHECK(c2.H == Rat(7, 2));

    const Constants& c3 = constants(3);
    CHECK(c3.H == Rat(2));
    CHECK(constants(4).H == Rat(3, 2));
    CHECK(c3.k_lo > c2.k_lo);  // K_q increases with q
    CHECK(c3.K.lo > 0.5601);
    CHECK(c3.K.hi < 0.5602);

    // L_2 by a quick independent estimate: K^-2 * sum_i 2^{-3i^2/4}.
    double s = 0;
    for (int i = 0; i < 40; ++i) s += std::pow(2.0, -0.75 * i * i);
    double l2 = s / (0.2887880951 * 0.2887880951);
    CHECK(std::abs(c2.L.mid() - l2) < 1e-6);
}
