#pragma once

#include "ranklab/exact.hpp"
#include "ranklab/field.hpp"

namespace ranklab::qcomb {

// alpha(m,u) = prod_{i=0}^{u-1} (q^m - q^i); 0 for m < 0 or u > m >= 0,
// 1 for u = 0. Also the number of full-column-rank m x u matrices and the
// number of m x n matrices with a fixed row space of dimension u.
Int alpha(long q, long m, long u);

// Gaussian binomial: number of r-dimensional subspaces of GF(q)^n.
// 0 outside 0 <= r <= n.
Int gaussian(long q, long n, long r);

// Number of m x n matrices at rank distance u from a fixed matrix.
Int n_rank(long q, long m, long n, long u);

// Volume of the rank-metric ball of radius t.
Int v_rank(long q, long m, long n, long t);

// Volume of the intersection of two rank-metric spheres with radii u and s
// whose centers are at distance d. Computed by exhaustive enumeration around
// a canonical center pair and memoized per (q, m, n); out-of-range arguments
// give 0.
Int j_rank(long q, long m, long n, long u, long s, long d);

// Number of subspaces of dimension s at subspace distance d from a fixed
// subspace of dimension r in GF(q)^n; 0 when (r+d-s)/2 is not an integer.
Int n_sub(long q, long n, long r, long s, long d);

// Same in the injection metric: N_I(r,s,d) = N_S(r,s,2d-|r-s|).
Int n_inj(long q, long n, long r, long s, long d);

// Volume of the intersection of spheres of subspace radii u and s around
// centers of dimensions a and b at subspace distance u+s (collinear case),
// by the two-binomial closed form. Zero outside the feasible regimes.
Int j_sub_triangle(long q, long n, long u, long s, long a, long b, long c);

// Whether GF(q)^n contains a pair of subspaces of dimensions a and b at
// subspace distance w.
bool center_pair_exists(long n, long a, long b, long w);

// General intersection volume J_S(u,s,w;a,b,c) by exhaustive enumeration of
// E_c(q,n) around one canonical center pair (well-defined: the count depends
// only on the dimensions and the center distance). Memoized per
// (q,n,a,b,w). NoSuchConfiguration when no center pair with the requested
// dimensions and distance exists in GF(q)^n.
Int j_sub_general(const Field& f, long n, long u, long s, long w, long a, long b, long c,
                  long long budget);

// Dispatcher: closed form when w == u+s, enumeration otherwise.
Int j_sub(const Field& f, long n, long u, long s, long w, long a, long b, long c,
          long long budget);

// Exact exponent with 4 f(r,s,t) = t(2n-t) - (r-s)(2n-r-3s); requires
// t <= min(r+s, floor(n/2)).
Rat f_exponent(long n, long r, long s, long t);

// Certified enclosure of L_q * q^{f(r,s,t)}, a strict upper bound on
// sum_{d<=t} N_S(r,s,d).
Interval sum_ns_bound(long q, long n, long r, long s, long t);

// Truncated constants with certified enclosures.
//   K_q = prod_{j>=1} (1 - q^-j)        (rational endpoints)
//   L_q = K_q^-2 * sum_{i>=0} q^{-3i^2/4}
//   H_2 = 7/2, H_q = (q-1)/(q-2) for q > 2
struct Constants {
    long q = 0;
    double tolerance = 0.0;
    Rat k_lo, k_hi;  // exact rational enclosure of K_q
    Interval K;
    Interval L;
    Rat H;
};

const Constants& constants(long q, double tolerance = 1e-12);

}  // namespace ranklab::qcomb
