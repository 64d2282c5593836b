#include "ranklab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ranklab::sim {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RngEngine trial_rng(uint64_t master_seed, uint64_t trial_index) {
    return RngEngine(splitmix64(splitmix64(master_seed) + trial_index));
}

uint64_t uniform_below(RngEngine& rng, uint64_t bound) {
    if (bound == 0) throw ParameterViolation("uniform_below: empty range");
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}

MatrixGF sample_error_with_row_space(const Subspace& U, int m, RngEngine& rng) {
    const Field& f = U.field();
    const int u = U.dim();
    if (u > m) throw ParameterViolation("row space dimension exceeds the row count");
    MatrixGF F(f, m, u);
    if (u > 0) {
        const int q = f->q();
        do {
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < u; ++j) {
                    F.set(i, j, static_cast<uint16_t>(uniform_below(rng, q)));
                }
            }
        } while (mat_rank(F) != u);
    }
    return F * U.basis_matrix();
}

Subspace sample_operator_output(const Subspace& V_in, int eps, int rho, RngEngine& rng) {
    const Field& f = V_in.field();
    const int n = V_in.ambient();
    const int r = V_in.dim();
    const int q = f->q();
    const int v = r + eps - rho;
    const int u = eps + rho;
    if (rho < 0 || eps < 0 || rho > r || eps > n - r) {
        throw NoValidOutput("erasure or error count outside the feasible range");
    }
    if (qcomb::n_sub(q, n, r, v, u) == 0) throw NoValidOutput("no output with these parameters");

    const int keep = r - rho;
    for (long attempt = 0; attempt < 100000000L; ++attempt) {
        // Uniform keep-dimensional subspace of V_in.
        MatrixGF G(f, keep, r);
        if (keep > 0) {
            do {
                for (int i = 0; i < keep; ++i) {
                    for (int j = 0; j < r; ++j) {
                        G.set(i, j, static_cast<uint16_t>(uniform_below(rng, q)));
                    }
                }
            } while (mat_rank(G) != keep);
        }
        MatrixGF stacked(f, keep + eps, n);
        if (keep > 0) {
            MatrixGF S = G * V_in.basis_matrix();
            for (int i = 0; i < keep; ++i) {
                for (int j = 0; j < n; ++j) stacked.set(i, j, S.at(i, j));
            }
        }
        for (int i = 0; i < eps; ++i) {
            for (int j = 0; j < n; ++j) {
                stacked.set(keep + i, j, static_cast<uint16_t>(uniform_below(rng, q)));
            }
        }
        Subspace V = row_space(stacked);
        if (V.dim() == v && subspace_distance(V_in, V) == u) return V;
    }
    throw Error("operator channel sampling failed to accept");
}

namespace {

template <typename Dist>
DecodeOutcome bdd_generic(size_t count, int radius, const Dist& dist) {
    int found = -1;
    for (size_t i = 0; i < count; ++i) {
        if (dist(i) <= radius) {
            if (found >= 0) {
                throw AmbiguousRadius("two codewords inside the decoding radius");
            }
            found = static_cast<int>(i);
        }
    }
    return found >= 0 ? DecodeOutcome::at(found) : DecodeOutcome::failure();
}

}  // namespace

DecodeOutcome bdd_rank(const RankCode& code, const MatrixGF& Y, int t) {
    return bdd_generic(code.codebook.size(), t,
                       [&](size_t i) { return rank_distance(code.codebook[i], Y); });
}

DecodeOutcome bdd_subspace(const Cdc& cdc, const Subspace& V, int radius) {
    return bdd_generic(cdc.codebook.size(), radius,
                       [&](size_t i) { return subspace_distance(cdc.codebook[i], V); });
}

DecodeOutcome bdd_injection(const Cdc& cdc, const Subspace& V, int t) {
    return bdd_generic(cdc.codebook.size(), t,
                       [&](size_t i) { return injection_distance(cdc.codebook[i], V); });
}

Rat exhaustive_dep_row_space(const RankCode& code, const MatrixGF& C, const Subspace& U, int t,
                             long long budget) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    if (U.dim() > code.m) throw ParameterViolation("no m-row error has this row space");
    const int sent = code.index_of(C);
    long long wrong = 0, total = 0;
    for_each_matrix_with_row_space(
        U, code.m,
        [&](const MatrixGF& E) {
            ++total;
            DecodeOutcome out = bdd_rank(code, C + E, t);
            if (out.decoded && out.index != sent) ++wrong;
        },
        budget);
    return Rat(wrong, total);
}

Rat exhaustive_dep_rank_symmetric(const RankCode& code, const MatrixGF& C, int u, int t,
                                  long long budget) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    const int sent = code.index_of(C);
    long long wrong = 0, total = 0;
    for_each_subspace(
        code.f, code.n, u,
        [&](const Subspace& W) {
            for_each_matrix_with_row_space(
                W, code.m,
                [&](const MatrixGF& E) {
                    ++total;
                    DecodeOutcome out = bdd_rank(code, C + E, t);
                    if (out.decoded && out.index != sent) ++wrong;
                },
                budget);
        },
        budget);
    if (total == 0) throw ParameterViolation("no errors of rank u exist");
    return Rat(wrong, total);
}

Rat exhaustive_dep_column_space(const RankCode& code, const MatrixGF& C, const Subspace& U, int t,
                                long long budget) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    const int sent = code.index_of(C);
    long long wrong = 0, total = 0;
    // Errors with column space U are the transposes of matrices with row
    // space U.
    for_each_matrix_with_row_space(
        U, code.n,
        [&](const MatrixGF& X) {
            ++total;
            DecodeOutcome out = bdd_rank(code, C + X.transposed(), t);
            if (out.decoded && out.index != sent) ++wrong;
        },
        budget);
    return Rat(wrong, total);
}

CdcOracleResult exhaustive_dep_cdc_subspace(const Cdc& cdc, const Subspace& C, int u, int v,
                                            int radius, long long budget) {
    if (cdc.index_of(C) < 0) throw NotACodeword("sent subspace is not a codeword");
    const int sent = cdc.index_of(C);
    CdcOracleResult res;
    for_each_subspace(
        cdc.f, cdc.n, v,
        [&](const Subspace& V) {
            if (subspace_distance(V, C) != u) return;
            ++res.total;
            DecodeOutcome out = bdd_subspace(cdc, V, radius);
            if (out.decoded && out.index != sent) ++res.wrong;
        },
        budget);
    if (res.total == 0) {
        res.feasible = false;
        return res;
    }
    res.value = Rat(res.wrong, res.total);
    return res;
}

CdcOracleResult exhaustive_dep_cdc_injection(const Cdc& cdc, const Subspace& C, int mu, int v,
                                             int t, long long budget) {
    if (cdc.index_of(C) < 0) throw NotACodeword("sent subspace is not a codeword");
    const int sent = cdc.index_of(C);
    CdcOracleResult res;
    for_each_subspace(
        cdc.f, cdc.n, v,
        [&](const Subspace& V) {
            if (injection_distance(V, C) != mu) return;
            ++res.total;
            DecodeOutcome out = bdd_injection(cdc, V, t);
            if (out.decoded && out.index != sent) ++res.wrong;
        },
        budget);
    if (res.total == 0) {
        res.feasible = false;
        return res;
    }
    res.value = Rat(res.wrong, res.total);
    return res;
}

std::pair<double, double> wilson_interval(long long errors, long long trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double rad = z * std::sqrt(p * (1.0 - p) / n + z2 / (4 * n * n)) / denom;
    double lo = errors == 0 ? 0.0 : std::max(0.0, center - rad);
    double hi = errors == trials ? 1.0 : std::min(1.0, center + rad);
    return {lo, hi};
}

double wilson_halfwidth(long long errors, long long trials, double z) {
    auto [lo, hi] = wilson_interval(errors, trials, z);
    return 0.5 * (hi - lo);
}

namespace {

constexpr double kZ95 = 1.959963984540054;

// Runs trials on cfg.workers threads; outcome counts are integers, so the
// accumulated result does not depend on the partition.
template <typename Trial>
SimResult run_trials(const SimConfig& cfg, const Trial& trial) {
    if (cfg.trials < 1) throw ParameterViolation("trial count must be >= 1");
    int workers = std::max(1, cfg.workers);
    struct Counts {
        long long success = 0, error = 0, failure = 0;
    };
    std::vector<Counts> per(workers);
    auto work = [&](int w) {
        for (long long i = w; i < cfg.trials; i += workers) {
            RngEngine rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
            int outcome = trial(rng);  // 0 success, 1 error, 2 failure
            if (outcome == 0) ++per[w].success;
            if (outcome == 1) ++per[w].error;
            if (outcome == 2) ++per[w].failure;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }
    SimResult res;
    res.trials = cfg.trials;
    for (const Counts& c : per) {
        res.successes += c.success;
        res.errors += c.error;
        res.failures += c.failure;
    }
    res.estimate = static_cast<double>(res.errors) / static_cast<double>(res.trials);
    std::tie(res.ci_lo, res.ci_hi) = wilson_interval(res.errors, res.trials, kZ95);
    return res;
}

}  // namespace

SimResult estimate_dep_row_space(const SimConfig& cfg, const RankCode& code, const MatrixGF& C,
                                 const Subspace& U, int t) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    const int sent = code.index_of(C);
    return run_trials(cfg, [&](RngEngine& rng) {
        MatrixGF E = sample_error_with_row_space(U, code.m, rng);
        DecodeOutcome out = bdd_rank(code, C + E, t);
        if (!out.decoded) return 2;
        return out.index == sent ? 0 : 1;
    });
}

SimResult estimate_dep_rank_symmetric(const SimConfig& cfg, const RankCode& code,
                                      const MatrixGF& C, int u, int t) {
    if (code.index_of(C) < 0) throw NotACodeword("sent matrix is not a codeword");
    if (qcomb::n_rank(code.f->q(), code.m, code.n, u) == 0) {
        throw ParameterViolation("no errors of rank u exist");
    }
    const int sent = code.index_of(C);
    const int q = code.f->q();
    return run_trials(cfg, [&](RngEngine& rng) {
        // Uniform rank-u error by rejection over the full matrix space.
        MatrixGF E(code.f, code.m, code.n);
        do {
            for (int i = 0; i < code.m; ++i) {
                for (int j = 0; j < code.n; ++j) {
                    E.set(i, j, static_cast<uint16_t>(uniform_below(rng, q)));
                }
            }
        } while (mat_rank(E) != u);
        DecodeOutcome out = bdd_rank(code, C + E, t);
        if (!out.decoded) return 2;
        return out.index == sent ? 0 : 1;
    });
}

SimResult estimate_dep_operator(const SimConfig& cfg, const Cdc& cdc, const Subspace& C, int eps,
                                int rho, CdcDecoder decoder) {
    if (cdc.index_of(C) < 0) throw NotACodeword("sent subspace is not a codeword");
    const int sent = cdc.index_of(C);
    const int radius = decoder == CdcDecoder::Subspace ? cdc.d_inj - 1 : cdc.t();
    return run_trials(cfg, [&](RngEngine& rng) {
        Subspace V = sample_operator_output(C, eps, rho, rng);
        DecodeOutcome out = decoder == CdcDecoder::Subspace ? bdd_subspace(cdc, V, radius)
                                                            : bdd_injection(cdc, V, radius);
        if (!out.decoded) return 2;
        return out.index == sent ? 0 : 1;
    });
}

bool chi_square_uniform_ok(const std::vector<long long>& counts, double significance) {
    const size_t k = counts.size();
    if (k < 2) return true;
    long long total = 0;
    for (long long c : counts) total += c;
    if (total == 0) return false;
    double expected = static_cast<double>(total) / static_cast<double>(k);
    double stat = 0.0;
    for (long long c : counts) {
        double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    // Wilson-Hilferty approximation of the chi-square quantile.
    double df = static_cast<double>(k - 1);
    double z = significance == 0.01 ? 2.3263478740408408 : 1.6448536269514722;
    double term = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    double quantile = df * term * term * term;
    return stat < quantile;
}

}  // namespace ranklab::sim
