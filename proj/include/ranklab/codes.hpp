#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "ranklab/enumerate.hpp"
#include "ranklab/qcomb.hpp"
#include "ranklab/subspace.hpp"

namespace ranklab::codes {

// Explicit rank metric code: a finite set of m x n matrices over GF(q).
struct RankCode {
    Field f;
    int m = 0, n = 0;
    std::vector<MatrixGF> codebook;  // sorted by entry string
    int d = 0;                       // minimum rank distance; 0 when undefined
    bool is_linear = false;
    bool is_mrd = false;

    bool has_min_distance() const { return d > 0; }
    int t() const { return d > 0 ? (d - 1) / 2 : 0; }
    int index_of(const MatrixGF& C) const;  // -1 when absent
};

// Sorts the words, computes the minimum distance and flags; duplicates are
// kept (they surface as d = 0 and fail the consistency checks).
RankCode make_rank_code(Field f, int m, int n, std::vector<MatrixGF> words,
                        bool linear_hint = false);

struct GabidulinSpec {
    long q = 2;
    int m = 0;  // rows; also the extension degree of GF(q^m)
    int n = 0;  // columns, n <= m
    int k = 1;  // message length, 1 <= k <= n
};

// Evaluation of the q-linearized polynomials of q-degree < k at n points of
// GF(q^m) that are linearly independent over GF(q) (the default points are
// powers of a fixed degree-m element). Codewords are expanded to m x n
// matrices over GF(q); the result is linear with d = n-k+1 and meets the
// maximum cardinality q^{m(n-d+1)}.
RankCode gabidulin_build(const GabidulinSpec& g, long long budget = default_budget());

// Number of codewords at rank distance r from a fixed codeword of a linear
// maximum-cardinality code in GF(q)^{m x n} (n <= m) with minimum distance
// d, via the alternating q-binomial weight enumerator. The enumerated
// distribution of a constructed code is the oracle of record for this value.
Int mrd_weight_distribution(long q, long m, long n, long d, long r);

// Upper bound on the cardinality of a constant-rank code with minimum
// distance d and constant rank r; symmetric in (m, n).
Int crc_upper_bound(long q, long m, long n, long d, long r);

struct DistanceDistribution {
    std::vector<Int> a;  // a[w] = number of codewords at distance w
    Int at(size_t w) const { return w < a.size() ? a[w] : Int(0); }
};

// Exact counts by exhaustive pairwise computation; C must be a codeword.
DistanceDistribution distance_distribution(const RankCode& code, const MatrixGF& C);

struct RowSpaceDistribution {
    std::map<Subspace, Int> counts;  // W -> |{D : rowspace(D - C) = W}|
};
RowSpaceDistribution row_space_distribution(const RankCode& code, const MatrixGF& C);

// Constant-dimension code: a set of r-dimensional subspaces of GF(q)^n.
struct Cdc {
    Field f;
    int n = 0, r = 0;
    std::vector<Subspace> codebook;  // sorted
    int d_inj = 0;  // minimum injection distance (subspace distance 2*d_inj)
    std::shared_ptr<const RankCode> origin;  // set when built by lifting

    bool has_min_distance() const { return d_inj > 0; }
    int t() const { return d_inj > 0 ? (d_inj - 1) / 2 : 0; }
    int index_of(const Subspace& C) const;
};

Cdc make_cdc(Field f, int n, int r, std::vector<Subspace> words);

// Lifting C -> rowspace(I_r | C) of every codeword; injection distance
// distribution equals the rank distance distribution of the original code.
Cdc lift_code(const RankCode& code);

// Distribution by injection distance (codewords at subspace distance 2w).
DistanceDistribution cdc_distance_distribution(const Cdc& cdc, const Subspace& C);

// Number of matrices with row space W at rank distance s from one fixed
// m-row matrix whose row space is U. Independent of the chosen
// representative.
Int g_r_count(const Subspace& U, long s, const Subspace& W, int m,
              long long budget = default_budget());

// Same count around an explicit center matrix (representative-independence
// is a tested property).
Int g_r_count_with_center(const MatrixGF& R, long s, const Subspace& W,
                          long long budget = default_budget());

// Codebook files: header "q m n |C|" (rank codes) or "q n r |C|" (CDCs),
// then one codeword block per entry in the matrix text format.
void write_rank_code(std::ostream& out, const RankCode& code);
RankCode read_rank_code(std::istream& in);
void write_cdc(std::ostream& out, const Cdc& cdc);
Cdc read_cdc(std::istream& in);

}  // namespace ranklab::codes
