#pragma once

#include <optional>

#include "ranklab/codes.hpp"

namespace ranklab::dep {

using codes::Cdc;
using codes::RankCode;

// Closed-form bound of the shape K_q^kp * L_q^lp * q^exponent. Keeping the
// structure (rather than just a float) lets bound-vs-bound relations be
// checked algebraically and exponent tables be emitted exactly.
struct ClosedFormBound {
    long q = 2;
    int k_power = 0;
    int l_power = 0;
    Rat exponent;  // log_q of the power factor

    Interval value(double tolerance = 1e-12) const;
};

// DEP of a bounded rank distance decoder with radius t for `code` over the
// equal row space channel, conditioned on the error row space U. Exact.
Rat dep_rank_exact(const RankCode& code, const MatrixGF& C, const Subspace& U, int t,
                   long long budget = default_budget());

// Maximum of the conditional DEP over all sent codewords and all error row
// spaces; an upper bound on the unconditional DEP under any prior.
Rat dep_rank_exact_max(const RankCode& code, int t, long long budget = default_budget());

// Upper bound on the above that depends on the error only through its rank,
// obtained by bounding the row-space distribution of any distance-d code.
Rat dep_rank_bound(long q, long m, long n, long d, long u, long t);

// Parameter-free exponential bound: K_q^-2 q^{-t(m-n+t)} for odd d,
// an extra q^-m for even d. Valid for every code and every error.
ClosedFormBound dep_rank_asymptotic(long q, long m, long n, long d);

// Exact DEP of a linear maximum-cardinality code (n <= m), any codeword.
Rat dep_rank_mrd(long q, long m, long n, long d, long u, long t);

// DEP over the rank symmetric channel (all errors of rank u equiprobable).
Rat dep_rank_symmetric(const RankCode& code, const MatrixGF& C, long u, int t);

// DEP at the smallest error rank u = d-t that can cause a decoder error.
Rat dep_rank_dmt(const RankCode& code, const MatrixGF& C, int t);

// Strict lower bound on the u = d-t DEP of a maximum-cardinality code;
// differs from the asymptotic upper bound by the scalar K_q^3.
ClosedFormBound kk_mrd_dmt_lower(long q, long m, long n, long d);

struct DominanceResult {
    Rat lhs;
    Rat rhs;
    bool holds = false;
};

// lhs = DEP of `code`, rhs = H_q * (maximum-cardinality reference DEP with
// the same parameters); lhs < rhs outside the excluded regime
// (q = 2, n = m, d = m-1).
DominanceResult mrd_dominance_check(const RankCode& code, const MatrixGF& C, const Subspace& U,
                                    int t, long long budget = default_budget());

// CDC DEP values carry a marker for channel classes that contain no output
// (parity makes N_S(r,v,u) = 0); such queries are not errors.
struct CdcDep {
    Rat value;
    bool feasible = true;
};

// DEP of a bounded subspace distance decoder with radius d-1 for a CDC of
// minimum injection distance d over the symmetric operator channel,
// conditioned on output dimension v at subspace distance u. Exact.
CdcDep dep_cdc_subspace_exact(const Cdc& cdc, const Subspace& C, long u, long v,
                              long long budget = default_budget());

// Upper bound for liftings of rank metric codes: the distance distribution
// is replaced by its constant-rank-code bound. Exact rational.
Rat dep_cdc_subspace_lifting_bound(long q, long n, long r, long d, long u, long v,
                                   long long budget = default_budget());

// Closed-form bound L_q q^{...} for liftings; branches on the parity of
// d-1+r-v (odd parity shrinks the usable decoding radius by one).
ClosedFormBound dep_cdc_subspace_asymptotic(long q, long n, long r, long d, long v);

// Exact DEP at the smallest decodable subspace distance u = d+i, where i
// makes u+v-r even (i = 1 or 2).
Rat dep_cdc_subspace_dmt(const Cdc& cdc, const Subspace& C, long v);

// Strict lower bound K_q^2 q^{...} on the same quantity for liftings of
// maximum-cardinality codes.
ClosedFormBound kk_subspace_dmt_lower(long q, long n, long r, long d, long v);

// DEP of a bounded injection distance decoder with radius t, conditioned on
// output dimension v at injection distance mu; equals the subspace-decoder
// DEP at distance 2mu-|v-r| with radius 2t-|v-r|.
CdcDep dep_cdc_injection_exact(const Cdc& cdc, const Subspace& C, long mu, long v, int t,
                               long long budget = default_budget());

// Closed-form bound for liftings in the injection metric.
ClosedFormBound dep_cdc_injection_bound(long q, long n, long r, long d, long t, long v);

// lhs = subspace-decoder DEP of the lifted code, rhs = H_q * (lifted
// maximum-cardinality reference); lhs < rhs outside the excluded regime
// (q = 2, r = n-r, d = n-r-1).
DominanceResult kk_dominance_check(const Cdc& cdc, const Subspace& C, long u, long v,
                                   long long budget = default_budget());

// Reference DEP of the lifting of a maximum-cardinality code (its distance
// distribution is parameter-determined, no construction needed).
CdcDep dep_cdc_subspace_kk(long q, long n, long r, long d, long u, long v,
                           long long budget = default_budget());

struct Fig1Row {
    long v = 0;
    std::optional<Rat> subspace_exponent;   // defined for r-d+1 <= v <= r+d-1
    std::optional<Rat> injection_exponent;  // defined for r-t <= v <= r+t
};

// log_q exponents of the two closed-form decoder bounds per output
// dimension; the decoders coincide for |v-r| <= 1 and diverge beyond.
std::vector<Fig1Row> figure1_exponents(long q, long n, long r, long d, long t);

}  // namespace ranklab::dep
