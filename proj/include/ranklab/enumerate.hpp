#pragma once

#include <functional>

#include "ranklab/subspace.hpp"

namespace ranklab {

// Enumeration budget in visited items; RANKLAB_BUDGET overrides the default
// of 2^24.
long long default_budget();

// All q^{mn} matrices, lexicographic in the row-major entry string. The
// callback receives a reused buffer; copy it if you keep it.
void for_each_matrix(const Field& f, int m, int n,
                     const std::function<void(const MatrixGF&)>& fn,
                     long long budget = default_budget());

// All alpha(m,u) full-column-rank m x u matrices, in the induced
// lexicographic order.
void for_each_full_rank_matrix(const Field& f, int m, int u,
                               const std::function<void(const MatrixGF&)>& fn,
                               long long budget = default_budget());

// All alpha(m, dim U) matrices in GF(q)^{m x n} with row space exactly U,
// realized as F * B_U over full-column-rank F.
void for_each_matrix_with_row_space(const Subspace& U, int m,
                                    const std::function<void(const MatrixGF&)>& fn,
                                    long long budget = default_budget());

// All gaussian(n,r) subspaces, ordered by pivot-column set then by free
// entries, both lexicographic.
void for_each_subspace(const Field& f, int n, int r,
                       const std::function<void(const Subspace&)>& fn,
                       long long budget = default_budget());

// Cached full projective space E(q,n), ordered by dimension then as above.
const std::vector<Subspace>& all_subspaces(const Field& f, int n,
                                           long long budget = default_budget());

}  // namespace ranklab
