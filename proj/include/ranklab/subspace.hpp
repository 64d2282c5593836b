#pragma once

#include <utility>
#include <vector>

#include "ranklab/matrix.hpp"

namespace ranklab {

// Subspace of GF(q)^n in canonical form: the unique reduced-row-echelon
// basis. Two values are equal iff their bases are identical entry-wise.
class Subspace {
  public:
    Subspace() = default;

    static Subspace zero(const Field& f, int n) { return Subspace(f, n, {}, {}); }

    // Trusts that `rref` (r x n, row-major) already is a reduced row echelon
    // basis with the given pivot columns.
    static Subspace from_rref_unchecked(Field f, int n, std::vector<uint16_t> rref,
                                        std::vector<int> pivots) {
        return Subspace(std::move(f), n, std::move(rref), std::move(pivots));
    }

    int ambient() const { return n_; }
    int dim() const { return r_; }
    const Field& field() const { return f_; }
    const std::vector<uint16_t>& basis_data() const { return b_; }
    const std::vector<int>& pivots() const { return piv_; }
    uint16_t basis_at(int i, int j) const { return b_[static_cast<size_t>(i) * n_ + j]; }

    MatrixGF basis_matrix() const;
    bool contains(const std::vector<uint16_t>& v) const;

    bool operator==(const Subspace& o) const {
        return f_->q() == o.f_->q() && n_ == o.n_ && r_ == o.r_ && b_ == o.b_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        if (r_ != o.r_) return r_ < o.r_;
        return b_ < o.b_;
    }

    std::string to_text() const { return basis_matrix().to_text(); }

  private:
    Subspace(Field f, int n, std::vector<uint16_t> b, std::vector<int> piv)
        : f_(std::move(f)), n_(n), r_(static_cast<int>(piv.size())), b_(std::move(b)),
          piv_(std::move(piv)) {}

    Field f_;
    int n_ = 0, r_ = 0;
    std::vector<uint16_t> b_;
    std::vector<int> piv_;
};

// Canonical row space; invariant under left-multiplication by any
// nonsingular matrix.
Subspace row_space(const MatrixGF& A);

// (U+V, U∩V); dim(U+V) + dim(U∩V) = dim U + dim V.
std::pair<Subspace, Subspace> subspace_sum_intersect(const Subspace& U, const Subspace& V);

// (d_S, d_I) = (dim(U+V) - dim(U∩V), max(dim U, dim V) - dim(U∩V)).
std::pair<int, int> subspace_distances(const Subspace& U, const Subspace& V);

int subspace_distance(const Subspace& U, const Subspace& V);   // d_S
int injection_distance(const Subspace& U, const Subspace& V);  // d_I

// Row space of (I_r | C) for C in GF(q)^{r x (n-r)}; rank-distance
// preserving: d_S(lift(C), lift(D)) = 2 rk(C-D).
Subspace lift(const MatrixGF& C);

// span{e_i : i in coords} (coords are 0-based column indices).
Subspace unit_span(const Field& f, int n, std::vector<int> coords);

}  // namespace ranklab
