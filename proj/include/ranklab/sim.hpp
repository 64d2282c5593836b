#pragma once

#include <cstdint>
#include <random>

#include "ranklab/codes.hpp"

namespace ranklab::sim {

using codes::Cdc;
using codes::RankCode;

using RngEngine = std::mt19937_64;

// Per-trial stream derived from (master seed, trial index); results are
// independent of how trials are split across workers.
RngEngine trial_rng(uint64_t master_seed, uint64_t trial_index);

// Uniform draw from [0, bound) by rejection on 64-bit words.
uint64_t uniform_below(RngEngine& rng, uint64_t bound);

// Uniform over the alpha(m,u) matrices E with rowspace(E) = U, realized as
// F * B_U with F drawn uniformly among full-column-rank m x u matrices by
// rejection.
MatrixGF sample_error_with_row_space(const Subspace& U, int m, RngEngine& rng);

// Uniform over the N_S(r, r+eps-rho, eps+rho) subspaces of dimension
// r+eps-rho at subspace distance eps+rho from V_in: keep a uniform
// (r-rho)-dimensional subspace, extend by eps uniform vectors, accept iff
// dimension and distance come out exact.
Subspace sample_operator_output(const Subspace& V_in, int eps, int rho, RngEngine& rng);

struct DecodeOutcome {
    bool decoded = false;
    int index = -1;  // codebook index when decoded

    static DecodeOutcome failure() { return {}; }
    static DecodeOutcome at(int i) { return {true, i}; }
};

// Bounded distance decoders: the unique codeword within the radius, or a
// failure. Two codewords inside the radius mean the radius exceeds the
// unique-decoding guarantee; that raises AmbiguousRadius instead of
// tie-breaking silently.
DecodeOutcome bdd_rank(const RankCode& code, const MatrixGF& Y, int t);
DecodeOutcome bdd_subspace(const Cdc& cdc, const Subspace& V, int radius);
DecodeOutcome bdd_injection(const Cdc& cdc, const Subspace& V, int t);

// Exhaustive DEP oracles: exact ratio of wrong decodes over the full
// conditioning class.
Rat exhaustive_dep_row_space(const RankCode& code, const MatrixGF& C, const Subspace& U, int t,
                             long long budget = default_budget());
Rat exhaustive_dep_rank_symmetric(const RankCode& code, const MatrixGF& C, int u, int t,
                                  long long budget = default_budget());
// Errors sharing a column space (the transposed channel).
Rat exhaustive_dep_column_space(const RankCode& code, const MatrixGF& C, const Subspace& U, int t,
                                long long budget = default_budget());

struct CdcOracleResult {
    Rat value;
    bool feasible = true;
    long long wrong = 0;
    long long total = 0;
};
CdcOracleResult exhaustive_dep_cdc_subspace(const Cdc& cdc, const Subspace& C, int u, int v,
                                            int radius, long long budget = default_budget());
CdcOracleResult exhaustive_dep_cdc_injection(const Cdc& cdc, const Subspace& C, int mu, int v,
                                             int t, long long budget = default_budget());

struct SimConfig {
    uint64_t seed = 0;
    long long trials = 1;
    int workers = 1;
};

struct SimResult {
    long long trials = 0;
    long long successes = 0;
    long long errors = 0;
    long long failures = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
};

// Wilson score interval for errors/trials at confidence z.
std::pair<double, double> wilson_interval(long long errors, long long trials, double z);
double wilson_halfwidth(long long errors, long long trials, double z);

SimResult estimate_dep_row_space(const SimConfig& cfg, const RankCode& code, const MatrixGF& C,
                                 const Subspace& U, int t);
SimResult estimate_dep_rank_symmetric(const SimConfig& cfg, const RankCode& code,
                                      const MatrixGF& C, int u, int t);

enum class CdcDecoder { Subspace, Injection };
SimResult estimate_dep_operator(const SimConfig& cfg, const Cdc& cdc, const Subspace& C, int eps,
                                int rho, CdcDecoder decoder);

// Chi-square goodness-of-fit against the uniform distribution on `support`
// categories; true when the statistic stays below the 0.99 quantile.
bool chi_square_uniform_ok(const std::vector<long long>& counts, double significance = 0.01);

}  // namespace ranklab::sim
