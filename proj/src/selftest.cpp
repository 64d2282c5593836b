#include "ranklab/selftest.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ranklab/dep.hpp"
#include "ranklab/sim.hpp"

namespace ranklab::selftest {

using namespace qcomb;
using codes::Cdc;
using codes::RankCode;

namespace {

struct Ctx {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
    template <typename A, typename B>
    void equal(const A& a, const B& b, const std::string& msg) {
        require(a == b, msg);
    }
};

// Shared desk-scale instances.
RankCode mrd_333() { return codes::gabidulin_build({2, 3, 3, 1}); }

RankCode pair_code_2x2() {
    Field f = field_create(2, 1);
    return codes::make_rank_code(f, 2, 2, {MatrixGF(f, 2, 2), MatrixGF::identity(f, 2)});
}

// Lifting with a nontrivial injection radius: 3x3 code with d = 3 gives a
// CDC in E_3(2,6) with t = 1.
Cdc cdc_t1() { return codes::lift_code(codes::gabidulin_build({2, 3, 3, 1})); }

// 2 x 3 maximum-cardinality code with d = 2 (transposed construction).
RankCode mrd_2x3() {
    RankCode g = codes::gabidulin_build({2, 3, 2, 1});
    std::vector<MatrixGF> words;
    for (const MatrixGF& w : g.codebook) words.push_back(w.transposed());
    return codes::make_rank_code(g.f, 2, 3, std::move(words), true);
}

Int js_or_zero(const Field& f, long n, long u, long s, long w, long a, long b, long c) {
    if (!center_pair_exists(n, a, b, w)) return 0;
    return j_sub_general(f, n, u, s, w, a, b, c, default_budget());
}

// ---- identity checks -------------------------------------------------

void check_rank_sphere_identities(Ctx& ctx) {
    for (long q : {2L, 3L}) {
        for (long m = 1; m <= 4; ++m) {
            for (long n = 1; n <= 4; ++n) {
                long kmax = std::min(m, n);
                for (long d = 0; d <= kmax; ++d) {
                    for (long s = 0; s <= kmax; ++s) {
                        Int sum = 0;
                        for (long u = 0; u <= kmax; ++u) {
                            sum += j_rank(q, m, n, u, s, d);
                            ctx.equal(n_rank(q, m, n, d) * j_rank(q, m, n, u, s, d),
                                      n_rank(q, m, n, u) * j_rank(q, m, n, d, s, u),
                                      "sphere scaling identity failed at q=" + std::to_string(q));
                        }
                        ctx.equal(sum, n_rank(q, m, n, s),
                                  "sphere sum identity failed at q=" + std::to_string(q));
                    }
                }
                for (long d = 0; d <= kmax; ++d) {
                    for (long t = 0; t <= d; ++t) {
                        ctx.equal(j_rank(q, m, n, t, d - t, d),
                                  ipow(q, t * (d - t)) * gaussian(q, d, t),
                                  "collinear rank intersection closed form failed");
                    }
                }
            }
        }
    }
}

void check_subspace_sphere_identities(Ctx& ctx) {
    const long q = 2;
    for (long n = 2; n <= 5; ++n) {
        Field f = field_from_order(q);
        for (long a = 0; a <= n; ++a) {
            for (long b = 0; b <= n; ++b) {
                for (long c = 0; c <= n; ++c) {
                    for (long w = 0; w <= 2 * n; ++w) {
                        if (!center_pair_exists(n, a, b, w)) continue;
                        for (long s = 0; s <= 2 * n; ++s) {
                            Int sum = 0;
                            for (long u = 0; u <= 2 * n; ++u) {
                                Int lhs = n_sub(q, n, a, b, w) *
                                          js_or_zero(f, n, u, s, w, a, b, c);
                                Int rhs = n_sub(q, n, a, c, u) *
                                          js_or_zero(f, n, w, s, u, a, c, b);
                                ctx.equal(lhs, rhs, "subspace sphere scaling identity failed");
                                sum += js_or_zero(f, n, u, s, w, a, b, c);
                            }
                            ctx.equal(sum, n_sub(q, n, b, c, s),
                                      "subspace sphere sum identity failed");
                        }
                    }
                }
            }
        }
    }
}

void check_gr_sum_identity(Ctx& ctx) {
    const long q = 2;
    for (int n = 1; n <= 3; ++n) {
        int m = n;
        Field f = field_from_order(q);
        for (int u = 0; u <= n; ++u) {
            Subspace U = unit_span(f, n, [&] {
                std::vector<int> cs;
                for (int i = 0; i < u; ++i) cs.push_back(i);
                return cs;
            }());
            for (int w = 0; w <= n; ++w) {
                for (int s = 0; s <= n; ++s) {
                    Int total = 0;
                    for_each_subspace(f, n, w, [&](const Subspace& W) {
                        total += codes::g_r_count(W, s, U, m);
                    });
                    ctx.equal(total * gaussian(q, n, u), gaussian(q, n, w) * j_rank(q, m, n, u, s, w),
                              "row-space-resolved sphere count identity failed");
                }
            }
        }
    }
}

void check_triangle_closed_form(Ctx& ctx) {
    const long q = 2;
    for (long n = 2; n <= 5; ++n) {
        Field f = field_from_order(q);
        for (long a = 0; a <= n; ++a) {
            for (long b = 0; b <= n; ++b) {
                for (long u = 0; u <= 2 * n; ++u) {
                    for (long s = 0; s <= 2 * n; ++s) {
                        if (!center_pair_exists(n, a, b, u + s)) continue;
                        for (long c = 0; c <= n; ++c) {
                            ctx.equal(j_sub_triangle(q, n, u, s, a, b, c),
                                      j_sub_general(f, n, u, s, u + s, a, b, c, default_budget()),
                                      "collinear closed form disagrees with enumeration at n=" +
                                          std::to_string(n));
                        }
                    }
                }
            }
        }
    }
}

void check_prop3_well_defined(Ctx& ctx) {
    // Ten random center pairs per dimension/distance class must all yield
    // the histogram of the canonical pair.
    Field f = field_create(2, 1);
    const int n = 4;
    const auto& all = all_subspaces(f, n);
    std::mt19937_64 rng(401);
    for (int a = 0; a <= n && ctx.ok; ++a) {
        for (int b = 0; b <= n && ctx.ok; ++b) {
            for (int w = 0; w <= 2 * n && ctx.ok; ++w) {
                std::vector<std::pair<const Subspace*, const Subspace*>> pairs;
                for (const Subspace& A : all) {
                    if (A.dim() != a) continue;
                    for (const Subspace& B : all) {
                        if (B.dim() == b && subspace_distance(A, B) == w) pairs.emplace_back(&A, &B);
                    }
                }
                if (pairs.empty()) continue;
                for (int rep = 0; rep < 10; ++rep) {
                    auto [A, B] = pairs[rng() % pairs.size()];
                    std::map<std::tuple<int, int, int>, long long> hist;
                    for (const Subspace& C : all) {
                        hist[{C.dim(), subspace_distance(*A, C), subspace_distance(*B, C)}] += 1;
                    }
                    for (const auto& [key, count] : hist) {
                        auto [c, u, s] = key;
                        ctx.equal(Int(count), js_or_zero(f, n, u, s, w, a, b, c),
                                  "count depends on the choice of centers");
                        if (!ctx.ok) return;
                    }
                }
            }
        }
    }
}

void check_gf_invariants(Ctx& ctx) {
    std::mt19937_64 rng(77);
    for (long q : {2L, 3L, 4L}) {
        Field f = field_from_order(q);
        // Canonicity: the row space is invariant under row operations.
        for (int m = 1; m <= 4; ++m) {
            for (int n = 1; n <= 4; ++n) {
                for (int rep = 0; rep < 5; ++rep) {
                    MatrixGF A(f, m, n);
                    for (auto& e : A.data()) e = static_cast<uint16_t>(rng() % q);
                    MatrixGF G(f, m, m);
                    do {
                        for (auto& e : G.data()) e = static_cast<uint16_t>(rng() % q);
                    } while (mat_rank(G) != m);
                    ctx.require(row_space(A) == row_space(G * A),
                                "row space must be invariant under row operations");
                }
            }
        }
    }
    // Modular law over small projective spaces.
    for (long q : {2L, 3L}) {
        Field f = field_from_order(q);
        for (int n = 1; n <= 4; ++n) {
            const auto& all = all_subspaces(f, n);
            for (const Subspace& A : all) {
                for (const Subspace& B : all) {
                    auto [su, in] = subspace_sum_intersect(A, B);
                    ctx.require(su.dim() + in.dim() == A.dim() + B.dim(),
                                "modular law violated");
                }
            }
        }
    }
    // Metric axioms on E(2,4).
    Field f2 = field_create(2, 1);
    const auto& all = all_subspaces(f2, 4);
    for (const Subspace& A : all) {
        for (const Subspace& B : all) {
            auto [ds_ab, di_ab] = subspace_distances(A, B);
            auto [ds_ba, di_ba] = subspace_distances(B, A);
            ctx.require(ds_ab == ds_ba && di_ab == di_ba, "distances must be symmetric");
            if (A.dim() == B.dim()) {
                ctx.require(ds_ab == 2 * di_ab, "equal dimensions force d_S = 2 d_I");
            }
            for (const Subspace& C : all) {
                ctx.require(subspace_distance(A, C) <= ds_ab + subspace_distance(B, C),
                            "triangle inequality violated");
                ctx.require(injection_distance(A, C) <=
                                di_ab + injection_distance(B, C),
                            "injection triangle inequality violated");
            }
            if (!ctx.ok) return;
        }
    }
    // Lifting isometry, exhaustively over 2x2 matrices.
    std::vector<MatrixGF> mats;
    for_each_matrix(f2, 2, 2, [&](const MatrixGF& A) { mats.push_back(A); });
    for (const MatrixGF& A : mats) {
        for (const MatrixGF& B : mats) {
            ctx.require(subspace_distance(lift(A), lift(B)) == 2 * rank_distance(A, B),
                        "lifting must double the rank distance");
        }
    }
    // Rank is transpose invariant, exhaustively over 2x3 matrices.
    for_each_matrix(f2, 2, 3, [&](const MatrixGF& A) {
        ctx.require(mat_rank(A) == mat_rank(A.transposed()), "rank changed under transpose");
    });
}

void check_enumeration_cardinalities(Ctx& ctx) {
    for (long q : {2L, 3L}) {
        Field f = field_from_order(q);
        for (int n = 1; n <= 4; ++n) {
            for (int r = 0; r <= n; ++r) {
                long long count = 0;
                std::set<Subspace> seen;
                for_each_subspace(f, n, r, [&](const Subspace& S) {
                    ++count;
                    seen.insert(S);
                });
                ctx.equal(Int(count), gaussian(q, n, r), "subspace count mismatch");
                ctx.equal(Int(seen.size()), gaussian(q, n, r), "duplicate subspaces emitted");
            }
        }
    }
    Field f = field_create(2, 1);
    long long mats = 0;
    for_each_matrix(f, 2, 3, [&](const MatrixGF&) { ++mats; });
    ctx.equal(Int(mats), ipow(2, 6), "matrix space count mismatch");
    long long full = 0;
    for_each_full_rank_matrix(f, 3, 2, [&](const MatrixGF&) { ++full; });
    ctx.equal(Int(full), alpha(2, 3, 2), "full-rank count mismatch");
    Subspace U = unit_span(f, 3, {0, 2});
    long long cls = 0;
    for_each_matrix_with_row_space(U, 3, [&](const MatrixGF& E) {
        if (row_space(E) == U) ++cls;
    });
    ctx.equal(Int(cls), alpha(2, 3, 2), "row-space class count mismatch");
}

void check_gaussian_sandwich(Ctx& ctx) {
    for (long q : {2L, 3L, 4L}) {
        const Constants& c = constants(q);
        for (long n = 0; n <= 8; ++n) {
            for (long r = 0; r <= n; ++r) {
                Rat g(gaussian(q, n, r));
                Rat power = q_power(q, r * (n - r));
                ctx.require(g >= power, "gaussian lower bound failed");
                ctx.require(g * c.k_hi < power, "gaussian upper bound failed");
            }
        }
    }
}

void check_constants(Ctx& ctx) {
    for (long q : {2L, 3L, 4L, 5L}) {
        const Constants& c = constants(q);
        ctx.require(c.k_lo > 0 && c.k_hi < 1, "K_q must lie in (0,1)");
        ctx.require(to_double(c.k_hi - c.k_lo) < 1e-12, "K_q enclosure too wide");
        ctx.require(c.L.lo > 1.0, "L_q must exceed 1");
        ctx.require(c.L.width() < 1e-12, "L_q enclosure too wide");
    }
    ctx.equal(constants(2).H, Rat(7, 2), "H_2 must be 7/2");
    ctx.equal(constants(3).H, Rat(2), "H_3 must be 2");
}

// ---- code-level checks -----------------------------------------------

void check_mrd_codes(Ctx& ctx) {
    for (long q : {2L, 3L}) {
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; n <= m; ++n) {
                for (int k = 1; k <= n; ++k) {
                    if (ipow(q, static_cast<long>(m) * k) > 20000) continue;
                    RankCode c = codes::gabidulin_build({q, m, n, k});
                    ctx.equal(c.d, n - k + 1, "minimum distance mismatch");
                    ctx.require(Int(c.codebook.size()) ==
                                    ipow(q, static_cast<long>(m) * (n - c.d + 1)),
                                "maximum cardinality violated");
                    codes::DistanceDistribution dist =
                        codes::distance_distribution(c, c.codebook.front());
                    for (int w = c.d; w <= n; ++w) {
                        ctx.equal(dist.a[w], codes::mrd_weight_distribution(q, m, n, c.d, w),
                                  "weight distribution disagrees with the enumerated code");
                    }
                }
            }
        }
    }
}

void check_crc_bounds(Ctx& ctx) {
    RankCode c = mrd_333();
    for (const MatrixGF& C : c.codebook) {
        codes::RowSpaceDistribution rsd = codes::row_space_distribution(c, C);
        for (const auto& [W, count] : rsd.counts) {
            if (W.dim() < c.d) continue;
            ctx.require(count <= alpha(2, c.m, W.dim() - c.d + 1),
                        "row-space class exceeds the constant-rank bound");
            ctx.require(count <= codes::crc_upper_bound(2, c.m, c.n, c.d, W.dim()) /
                                     gaussian(2, c.n, W.dim()),
                        "per-class average exceeds the normalized bound");
        }
    }
    // Lifted distribution bound A_w <= q^{-(n-r)(d-1)} N_S(r,r,2w).
    for (const Cdc& cdc : {codes::lift_code(pair_code_2x2()), codes::lift_code(mrd_2x3())}) {
        const RankCode& origin = *cdc.origin;
        Rat scale = q_power(2, -(cdc.n - cdc.r) * (origin.d - 1));
        for (const Subspace& C : cdc.codebook) {
            codes::DistanceDistribution dist = codes::cdc_distance_distribution(cdc, C);
            for (int w = origin.d; w <= cdc.r; ++w) {
                ctx.require(Rat(dist.a[w]) <= scale * Rat(n_sub(2, cdc.n, cdc.r, cdc.r, 2 * w)),
                            "lifted distance distribution exceeds its bound");
            }
        }
    }
}

void check_lifting(Ctx& ctx) {
    for (const RankCode& base : {pair_code_2x2(), mrd_2x3(), codes::gabidulin_build({2, 2, 2, 1})}) {
        Cdc cdc = codes::lift_code(base);
        ctx.equal(cdc.d_inj, base.d, "lifting must preserve the minimum distance");
        for (size_t i = 0; i < base.codebook.size(); ++i) {
            codes::DistanceDistribution a = codes::distance_distribution(base, base.codebook[i]);
            codes::DistanceDistribution b =
                codes::cdc_distance_distribution(cdc, lift(base.codebook[i]));
            ctx.require(a.a == b.a, "lifting must preserve the distance distribution");
        }
    }
}

// ---- DEP oracle checks -----------------------------------------------

void check_dep_mrd_oracle(Ctx& ctx) {
    RankCode c = mrd_333();
    for (int ci : {0, 3}) {
        const MatrixGF& C = c.codebook[ci];
        for (int u = 2; u <= 3; ++u) {
            Rat closed = dep::dep_rank_mrd(2, 3, 3, 3, u, 1);
            if (u == 2) ctx.equal(closed, Rat(2, 3), "reference value must be 2/3");
            for_each_subspace(c.f, 3, u, [&](const Subspace& U) {
                Rat exact = dep::dep_rank_exact(c, C, U, 1);
                Rat oracle = sim::exhaustive_dep_row_space(c, C, U, 1);
                ctx.equal(exact, oracle, "formula and exhaustive decoder disagree");
                ctx.equal(closed, oracle, "closed form and exhaustive decoder disagree");
            });
            ctx.equal(dep::dep_rank_symmetric(c, C, u, 1),
                      sim::exhaustive_dep_rank_symmetric(c, C, u, 1),
                      "rank symmetric formula and exhaustive decoder disagree");
        }
        ctx.equal(dep::dep_rank_dmt(c, C, 1), dep::dep_rank_symmetric(c, C, 2, 1),
                  "smallest-error-rank value mismatch");
    }
}

void check_dep_cdc_oracle(Ctx& ctx) {
    std::vector<Cdc> instances;
    instances.push_back(codes::lift_code(pair_code_2x2()));
    instances.push_back(codes::lift_code(codes::gabidulin_build({2, 2, 2, 1})));
    instances.push_back(codes::lift_code(mrd_2x3()));
    instances.push_back(cdc_t1());

    {
        const Cdc& cdc = instances[0];
        auto v = dep::dep_cdc_subspace_exact(cdc, cdc.codebook[0], 3, 3);
        ctx.require(v.feasible && v.value == Rat(1, 4), "reference value must be 1/4");
    }

    for (const Cdc& cdc : instances) {
        const int d = cdc.d_inj, t = cdc.t();
        size_t sent_limit = cdc.n >= 6 ? 2 : cdc.codebook.size();
        for (size_t ci = 0; ci < sent_limit; ++ci) {
            const Subspace& C = cdc.codebook[ci];
            for (int v = 0; v <= cdc.n; ++v) {
                for (int u = 0; u <= 2 * cdc.r + 2; ++u) {
                    auto analytic = dep::dep_cdc_subspace_exact(cdc, C, u, v);
                    auto oracle = sim::exhaustive_dep_cdc_subspace(cdc, C, u, v, d - 1);
                    ctx.equal(analytic.feasible, oracle.feasible, "feasibility flags disagree");
                    if (analytic.feasible) {
                        ctx.equal(analytic.value, oracle.value,
                                  "subspace-decoder formula and oracle disagree");
                    }
                }
                for (int mu = 0; mu <= cdc.r; ++mu) {
                    auto analytic = dep::dep_cdc_injection_exact(cdc, C, mu, v, t);
                    auto oracle = sim::exhaustive_dep_cdc_injection(cdc, C, mu, v, t);
                    ctx.equal(analytic.feasible, oracle.feasible, "feasibility flags disagree");
                    if (analytic.feasible) {
                        ctx.equal(analytic.value, oracle.value,
                                  "injection-decoder formula and oracle disagree");
                    }
                }
            }
            // Smallest-distance closed form against the general formula.
            for (int v = cdc.r - d + 1; v <= cdc.r + d - 1; ++v) {
                long i = ((d - 1 + v - cdc.r) % 2 == 0) ? 1 : 2;
                if (gaussian(2, cdc.r, d - (d - i + v - cdc.r) / 2) == 0) continue;
                Rat dmt;
                try {
                    dmt = dep::dep_cdc_subspace_dmt(cdc, C, v);
                } catch (const ParameterViolation&) {
                    continue;
                }
                auto general = dep::dep_cdc_subspace_exact(cdc, C, d + i, v);
                if (general.feasible) {
                    ctx.equal(dmt, general.value, "smallest-distance closed form mismatch");
                }
            }
        }
    }
}

void check_bound_chains(Ctx& ctx) {
    // Matrix-code chain; the 3x2 instance has even d and exercises the
    // extra q^-m branch of both closed forms.
    for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {3, 2}}) {
        RankCode c = codes::gabidulin_build({2, m, n, 1});
        const int d = c.d, t = c.t();
        const MatrixGF& C = c.codebook[0];
        Interval asym = dep::dep_rank_asymptotic(2, m, n, d).value();
        for (int u = 1; u <= std::min(m, n); ++u) {
            Rat mid = dep::dep_rank_bound(2, m, n, d, u, t);
            for_each_subspace(c.f, n, u, [&](const Subspace& U) {
                Rat lo = dep::dep_rank_exact(c, C, U, t);
                ctx.require(lo <= mid, "exact DEP exceeds its row-space bound");
            });
            ctx.require(certainly_less(mid, asym), "row-space bound exceeds the closed form");
        }
        // Strict lower bound at the smallest error rank.
        Interval lower = dep::kk_mrd_dmt_lower(2, m, n, d).value();
        Rat exact_dmt = dep::dep_rank_dmt(c, C, t);
        ctx.require(certainly_less(lower, exact_dmt),
                    "closed-form lower bound does not sit below the exact value");
    }

    // CDC chains on the lifted desk codes.
    for (const Cdc& cdc : {codes::lift_code(pair_code_2x2()), codes::lift_code(mrd_2x3())}) {
        const long n = cdc.n, r = cdc.r, d = cdc.d_inj, t = cdc.t();
        const Subspace& C = cdc.codebook[0];
        for (long v = r - d + 1; v <= r + d - 1; ++v) {
            Interval asym = dep::dep_cdc_subspace_asymptotic(2, n, r, d, v).value();
            for (long u = d + 1; u <= 2 * r; ++u) {
                auto exact = dep::dep_cdc_subspace_exact(cdc, C, u, v);
                if (!exact.feasible) continue;
                Rat mid = dep::dep_cdc_subspace_lifting_bound(2, n, r, d, u, v);
                ctx.require(exact.value <= mid, "exact CDC DEP exceeds the lifting bound");
                ctx.require(certainly_less(mid, asym),
                            "lifting bound exceeds the closed form");
            }
        }
        for (long v = r - t; v <= r + t; ++v) {
            Interval bound = dep::dep_cdc_injection_bound(2, n, r, d, t, v).value();
            for (long mu = 0; mu <= r; ++mu) {
                auto exact = dep::dep_cdc_injection_exact(cdc, C, mu, v, static_cast<int>(t));
                if (!exact.feasible) continue;
                ctx.require(certainly_less(exact.value, bound),
                            "injection DEP not strictly below its closed form");
            }
        }
    }
}

void check_dominance(Ctx& ctx) {
    // Five sub-codes of the 4x3 maximum-cardinality code (any subset keeps
    // d = 3 because all nonzero codewords have full column rank).
    RankCode mrd = codes::gabidulin_build({2, 4, 3, 1});
    std::vector<std::vector<int>> picks = {
        {0, 1}, {0, 2}, {0, 1, 2}, {0, 3, 5}, {0, 1, 7, 9}};
    for (const auto& pick : picks) {
        std::vector<MatrixGF> words;
        for (int i : pick) words.push_back(mrd.codebook[i]);
        RankCode sub = codes::make_rank_code(mrd.f, 4, 3, std::move(words));
        ctx.equal(sub.d, mrd.d, "sub-code must keep the minimum distance");
        for (const MatrixGF& C : sub.codebook) {
            for (int u = 2; u <= 3; ++u) {
                for_each_subspace(sub.f, 3, u, [&](const Subspace& U) {
                    auto res = dep::mrd_dominance_check(sub, C, U, 1);
                    ctx.require(res.holds, "matrix-code dominance violated");
                });
            }
        }
    }
    RankCode excluded = codes::gabidulin_build({2, 3, 3, 2});
    bool raised = false;
    try {
        dep::mrd_dominance_check(excluded, excluded.codebook[0],
                                 unit_span(excluded.f, 3, {0, 1}), 0);
    } catch (const ExcludedRegime&) {
        raised = true;
    }
    ctx.require(raised, "excluded matrix-code regime must raise");

    // Five sub-codes of the lifted 2x3 maximum-cardinality code.
    RankCode base = mrd_2x3();
    std::vector<std::vector<int>> cdc_picks = {
        {0, 1}, {0, 2}, {0, 1, 2}, {0, 3, 5}, {0, 1, 6, 7}};
    for (const auto& pick : cdc_picks) {
        std::vector<MatrixGF> words;
        for (int i : pick) words.push_back(base.codebook[i]);
        RankCode subbase = codes::make_rank_code(base.f, base.m, base.n, std::move(words));
        ctx.equal(subbase.d, base.d, "sub-code must keep the minimum distance");
        Cdc sub = codes::lift_code(subbase);
        for (const Subspace& C : sub.codebook) {
            for (long v = sub.r - sub.d_inj + 1; v <= sub.r + sub.d_inj - 1; ++v) {
                for (long u = sub.d_inj + 1; u <= 2 * sub.r; ++u) {
                    if (n_sub(2, sub.n, sub.r, v, u) == 0) continue;
                    auto res = dep::kk_dominance_check(sub, C, u, v);
                    ctx.require(res.holds, "lifted-code dominance violated");
                }
            }
        }
    }
    Cdc excluded_cdc = codes::lift_code(codes::gabidulin_build({2, 2, 2, 2}));
    raised = false;
    try {
        dep::kk_dominance_check(excluded_cdc, excluded_cdc.codebook[0], 2, 2);
    } catch (const ExcludedRegime&) {
        raised = true;
    }
    ctx.require(raised, "excluded lifted-code regime must raise");
}

void check_tightness(Ctx& ctx) {
    for (long q : {2L, 3L}) {
        for (long m = 2; m <= 6; ++m) {
            for (long n = 2; n <= m; ++n) {
                for (long d = 1; d <= n; ++d) {
                    auto up = dep::dep_rank_asymptotic(q, m, n, d);
                    auto lo = dep::kk_mrd_dmt_lower(q, m, n, d);
                    ctx.equal(up.exponent, lo.exponent, "exponents must agree");
                    ctx.require(lo.k_power - up.k_power == 3,
                                "bound ratio must be K_q^3 structurally");
                }
            }
        }
    }
    // Numeric version: lower/upper ratio inside the K^3 enclosure.
    auto up = dep::dep_rank_asymptotic(2, 5, 4, 3).value();
    auto lo = dep::kk_mrd_dmt_lower(2, 5, 4, 3).value();
    const Constants& c = constants(2);
    Interval k3 = c.K * c.K * c.K;
    ctx.require(lo.lo / up.hi <= k3.hi && lo.hi / up.lo >= k3.lo,
                "numeric bound ratio escapes the K_q^3 enclosure");
}

void check_transpose_equivalence(Ctx& ctx) {
    RankCode col_code = codes::gabidulin_build({2, 3, 2, 1});  // 3x2 matrices
    std::vector<MatrixGF> words;
    for (const MatrixGF& w : col_code.codebook) words.push_back(w.transposed());
    RankCode row_code = codes::make_rank_code(col_code.f, 2, 3, std::move(words), true);
    for (size_t i = 0; i < col_code.codebook.size(); ++i) {
        const MatrixGF Ct = col_code.codebook[i].transposed();
        for (int u = 0; u <= 2; ++u) {
            for_each_subspace(col_code.f, 2, u, [&](const Subspace& U) {
                Rat a = sim::exhaustive_dep_row_space(col_code, col_code.codebook[i], U, 0);
                Rat b = sim::exhaustive_dep_column_space(row_code, Ct, U, 0);
                ctx.equal(a, b, "row/column space channels disagree across transposition");
            });
        }
    }
}

void check_fig1(Ctx& ctx) {
    auto rows = dep::figure1_exponents(2, 50, 20, 9, 4);
    ctx.equal(rows.front().v, 12L, "table must start at v = r-d+1");
    ctx.equal(rows.back().v, 28L, "table must end at v = r+d-1");
    for (const auto& row : rows) {
        if (row.v == 20) {
            ctx.require(row.subspace_exponent && *row.subspace_exponent == Rat(-56),
                        "subspace exponent at v=r must be -56");
            ctx.require(row.injection_exponent && *row.injection_exponent == Rat(-56),
                        "injection exponent at v=r must be -56");
        }
        if (row.v == 19 || row.v == 21) {
            ctx.require(row.subspace_exponent && row.injection_exponent &&
                            *row.subspace_exponent == *row.injection_exponent,
                        "exponents must agree at v = r+-1");
        }
        if (row.v == 22) {
            ctx.require(*row.subspace_exponent == Rat(-65), "v=r+2 subspace exponent");
            ctx.require(*row.injection_exponent == Rat(-108), "v=r+2 injection exponent");
        }
        if (std::llabs(row.v - 20) >= 2 && row.subspace_exponent && row.injection_exponent) {
            ctx.require(*row.subspace_exponent > *row.injection_exponent,
                        "decoders must diverge strictly for |v-r| >= 2");
        }
    }
}

// ---- simulation checks -------------------------------------------------

void check_sampler_uniformity(Ctx& ctx) {
    Field f = field_create(2, 1);
    const long long draws = 100000;

    // Row-space sampler over supports of size 3, 6, and 7.
    struct RowCase {
        int m, n;
        std::vector<int> coords;
    };
    for (const RowCase& rc :
         {RowCase{2, 2, {0}}, RowCase{2, 2, {0, 1}}, RowCase{3, 3, {1}}}) {
        Subspace U = unit_span(f, rc.n, rc.coords);
        std::map<std::vector<uint16_t>, long long> hist;
        std::vector<MatrixGF> support;
        for_each_matrix_with_row_space(U, rc.m, [&](const MatrixGF& E) { support.push_back(E); });
        sim::RngEngine rng = sim::trial_rng(1234, support.size());
        for (long long i = 0; i < draws; ++i) {
            MatrixGF E = sim::sample_error_with_row_space(U, rc.m, rng);
            if (row_space(E) != U) {
                ctx.require(false, "sampled error has the wrong row space");
                return;
            }
            hist[E.data()] += 1;
        }
        ctx.equal(hist.size(), support.size(), "sampler missed part of its support");
        std::vector<long long> counts;
        for (const auto& [k, v] : hist) counts.push_back(v);
        ctx.require(sim::chi_square_uniform_ok(counts), "row-space sampler failed chi-square");
    }

    // Operator sampler over supports of size 3, 12, 16, and 18.
    Subspace V_in = unit_span(f, 4, {0, 1});
    for (auto [eps, rho] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {2, 2}, {1, 1}}) {
        std::map<Subspace, long long> hist;
        sim::RngEngine rng = sim::trial_rng(7, static_cast<uint64_t>(eps * 8 + rho));
        for (long long i = 0; i < draws; ++i) {
            hist[sim::sample_operator_output(V_in, eps, rho, rng)] += 1;
        }
        Int expected = n_sub(2, 4, 2, 2 + eps - rho, eps + rho);
        ctx.equal(Int(hist.size()), expected, "operator sampler missed part of its support");
        std::vector<long long> counts;
        for (const auto& [k, v] : hist) counts.push_back(v);
        ctx.require(sim::chi_square_uniform_ok(counts), "operator sampler failed chi-square");
    }
}

void check_sphere_packing(Ctx& ctx) {
    RankCode c = mrd_333();
    for_each_matrix(c.f, 3, 3, [&](const MatrixGF& Y) {
        int inside = 0;
        for (const MatrixGF& D : c.codebook) {
            if (rank_distance(Y, D) <= c.t()) ++inside;
        }
        ctx.require(inside <= 1, "decoding spheres overlap at the guaranteed radius");
    });
    for (const Cdc& cdc : {codes::lift_code(pair_code_2x2()), codes::lift_code(mrd_2x3())}) {
        for (const Subspace& V : all_subspaces(cdc.f, cdc.n)) {
            int inside = 0;
            for (const Subspace& D : cdc.codebook) {
                if (subspace_distance(V, D) <= cdc.d_inj - 1) ++inside;
            }
            ctx.require(inside <= 1, "subspace decoding spheres overlap");
        }
    }
}

void check_prop7_sets(Ctx& ctx) {
    std::vector<Cdc> instances;
    instances.push_back(codes::lift_code(pair_code_2x2()));
    instances.push_back(codes::lift_code(codes::gabidulin_build({2, 2, 2, 1})));
    instances.push_back(codes::lift_code(mrd_2x3()));
    instances.push_back(cdc_t1());
    for (const Cdc& cdc : instances) {
        const int t = cdc.t();
        for (const Subspace& V : all_subspaces(cdc.f, cdc.n)) {
            int radius = 2 * t - std::abs(V.dim() - cdc.r);
            sim::DecodeOutcome inj = sim::bdd_injection(cdc, V, t);
            sim::DecodeOutcome sub = radius < 0 ? sim::DecodeOutcome::failure()
                                                : sim::bdd_subspace(cdc, V, radius);
            ctx.equal(inj.decoded, sub.decoded, "decodable sets differ");
            if (inj.decoded) ctx.equal(inj.index, sub.index, "decoded codewords differ");
        }
    }
}

void check_mc_consistency(Ctx& ctx) {
    RankCode c = mrd_333();
    const MatrixGF& C = c.codebook[0];
    Subspace U = unit_span(c.f, 3, {0, 1});
    const double rank_ref = 2.0 / 3.0;

    Cdc cdc = codes::lift_code(pair_code_2x2());
    const Subspace& Cs = cdc.codebook[0];
    const double cdc_ref = 0.25;

    int rank_band = 0, rank_ci = 0, cdc_band = 0, cdc_ci = 0;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        sim::SimResult r =
            sim::estimate_dep_row_space({seed, 100000, 4}, c, C, U, 1);
        double sigma = sim::wilson_halfwidth(r.errors, r.trials, 1.0);
        if (std::abs(r.estimate - rank_ref) <= 3 * sigma) ++rank_band;
        if (r.ci_lo <= rank_ref && rank_ref <= r.ci_hi) ++rank_ci;

        sim::SimResult s = sim::estimate_dep_operator({seed, 100000, 4}, cdc, Cs, 2, 1,
                                                      sim::CdcDecoder::Subspace);
        double sigma2 = sim::wilson_halfwidth(s.errors, s.trials, 1.0);
        if (std::abs(s.estimate - cdc_ref) <= 3 * sigma2) ++cdc_band;
        if (s.ci_lo <= cdc_ref && cdc_ref <= s.ci_hi) ++cdc_ci;
    }
    ctx.require(rank_band >= 18, "matrix-code estimates drift beyond 3 sigma: " +
                                     std::to_string(rank_band) + "/20");
    ctx.require(cdc_band >= 18,
                "CDC estimates drift beyond 3 sigma: " + std::to_string(cdc_band) + "/20");
    ctx.require(rank_ci >= 18, "too few matrix-code CIs cover the analytic value");
    ctx.require(cdc_ci >= 18, "too few CDC CIs cover the analytic value");

    // Bit-identical across worker counts for a fixed seed.
    sim::SimResult a = sim::estimate_dep_row_space({42, 20000, 1}, c, C, U, 1);
    sim::SimResult b = sim::estimate_dep_row_space({42, 20000, 8}, c, C, U, 1);
    ctx.require(a.errors == b.errors && a.failures == b.failures && a.successes == b.successes,
                "results depend on the worker count");
    sim::SimResult a2 = sim::estimate_dep_operator({42, 20000, 1}, cdc, Cs, 2, 1,
                                                   sim::CdcDecoder::Subspace);
    sim::SimResult b2 = sim::estimate_dep_operator({42, 20000, 8}, cdc, Cs, 2, 1,
                                                   sim::CdcDecoder::Subspace);
    ctx.require(a2.errors == b2.errors && a2.failures == b2.failures,
                "operator-channel results depend on the worker count");
}

void check_lemma1_invariance(Ctx& ctx) {
    Field f = field_create(2, 1);
    for (int n = 2; n <= 3; ++n) {
        const auto& all = all_subspaces(f, n);
        for (const Subspace& U : all) {
            if (U.dim() > n) continue;
            for (const Subspace& W : all) {
                for (int s = 0; s <= n; ++s) {
                    Int reference = codes::g_r_count(U, s, W, n);
                    for_each_matrix_with_row_space(U, n, [&](const MatrixGF& R) {
                        ctx.equal(codes::g_r_count_with_center(R, s, W), reference,
                                  "count depends on the center representative");
                    });
                }
            }
        }
    }
}

using CheckFn = std::function<void(Ctx&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"identities.rank-spheres", check_rank_sphere_identities},
        {"identities.subspace-spheres", check_subspace_sphere_identities},
        {"identities.gr-sum", check_gr_sum_identity},
        {"identities.triangle", check_triangle_closed_form},
        {"identities.well-defined", check_prop3_well_defined},
        {"gf.invariants", check_gf_invariants},
        {"enumerate.cardinalities", check_enumeration_cardinalities},
        {"qcomb.sandwich", check_gaussian_sandwich},
        {"qcomb.constants", check_constants},
        {"codes.mrd", check_mrd_codes},
        {"codes.crc-bound", check_crc_bounds},
        {"codes.lifting", check_lifting},
        {"dep.mrd-oracle", check_dep_mrd_oracle},
        {"dep.cdc-oracle", check_dep_cdc_oracle},
        {"dep.bound-chains", check_bound_chains},
        {"dep.dominance", check_dominance},
        {"dep.tightness", check_tightness},
        {"dep.transpose", check_transpose_equivalence},
        {"fig1.exponents", check_fig1},
        {"sim.uniformity", check_sampler_uniformity},
        {"sim.sphere-packing", check_sphere_packing},
        {"sim.prop7-sets", check_prop7_sets},
        {"sim.mc-consistency", check_mc_consistency},
        {"sim.lemma1", check_lemma1_invariance},
    };
    return checks;
}

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

CheckResult run_check(const std::string& name) {
    for (const auto& [n, fn] : registry()) {
        if (n == name) {
            CheckResult res;
            res.name = n;
            auto t0 = std::chrono::steady_clock::now();
            Ctx ctx;
            try {
                fn(ctx);
            } catch (const std::exception& e) {
                ctx.ok = false;
                ctx.detail = std::string("exception: ") + e.what();
            }
            res.pass = ctx.ok;
            res.detail = ctx.detail;
            res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return res;
        }
    }
    throw Error("unknown check: " + name);
}

std::vector<CheckResult> run_all(const std::string& filter) {
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : registry()) {
        if (!filter.empty() && name.find(filter) == std::string::npos) continue;
        out.push_back(run_check(name));
    }
    return out;
}

CheckResult check_code_file(const std::string& path, bool is_cdc) {
    CheckResult res;
    res.name = "code-file.consistency";
    auto t0 = std::chrono::steady_clock::now();
    Ctx ctx;
    try {
        std::ifstream in(path);
        if (!in) throw Error("cannot open " + path);
        if (is_cdc) {
            codes::Cdc cdc = codes::read_cdc(in);
            std::set<Subspace> dedup(cdc.codebook.begin(), cdc.codebook.end());
            ctx.require(dedup.size() == cdc.codebook.size(), "duplicate codewords in file");
            if (cdc.codebook.size() >= 2) {
                ctx.require(cdc.has_min_distance(), "minimum distance undefined");
                codes::DistanceDistribution dist =
                    codes::cdc_distance_distribution(cdc, cdc.codebook.front());
                ctx.equal(dist.a[0], Int(1), "self-distance class must have size 1");
            }
        } else {
            codes::RankCode code = codes::read_rank_code(in);
            std::set<MatrixGF> dedup(code.codebook.begin(), code.codebook.end());
            ctx.require(dedup.size() == code.codebook.size(), "duplicate codewords in file");
            if (code.codebook.size() >= 2) {
                ctx.require(code.has_min_distance(), "minimum distance undefined");
                for (const MatrixGF& C : {code.codebook.front(), code.codebook.back()}) {
                    codes::DistanceDistribution dist = codes::distance_distribution(code, C);
                    ctx.equal(dist.a[0], Int(1), "self-distance class must have size 1");
                    Int total = 0;
                    for (const Int& x : dist.a) total += x;
                    ctx.equal(total, Int(code.codebook.size()),
                              "distance classes must partition the codebook");
                    codes::RowSpaceDistribution rsd = codes::row_space_distribution(code, C);
                    std::vector<Int> marg(std::min(code.m, code.n) + 1, Int(0));
                    for (const auto& [W, cnt] : rsd.counts) marg[W.dim()] += cnt;
                    for (size_t w = 0; w < marg.size(); ++w) {
                        ctx.equal(marg[w], dist.a[w], "row-space marginal mismatch");
                    }
                    for (const auto& [W, cnt] : rsd.counts) {
                        if (W.dim() >= code.d && code.d > 0) {
                            ctx.require(cnt <= alpha(code.f->q(), code.m, W.dim() - code.d + 1),
                                        "row-space class exceeds the constant-rank bound");
                        }
                    }
                }
            }
        }
    } catch (const std::exception& e) {
        ctx.ok = false;
        ctx.detail = std::string("exception: ") + e.what();
    }
    res.pass = ctx.ok;
    res.detail = ctx.detail;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace ranklab::selftest
