#include "ranklab/subspace.hpp"

#include <algorithm>

namespace ranklab {

MatrixGF Subspace::basis_matrix() const {
    MatrixGF B(f_, r_, n_);
    B.data() = b_;
    return B;
}

bool Subspace::contains(const std::vector<uint16_t>& v) const {
    if (static_cast<int>(v.size()) != n_) throw AmbientMismatch("vector length != ambient dimension");
    // Reduce v against the RREF basis; v is in the span iff the residue is 0.
    std::vector<uint16_t> w = v;
    for (int i = 0; i < r_; ++i) {
        uint16_t c = w[piv_[i]];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j) {
            w[j] = f_->sub(w[j], f_->mul(c, basis_at(i, j)));
        }
    }
    return std::all_of(w.begin(), w.end(), [](uint16_t x) { return x == 0; });
}

Subspace row_space(const MatrixGF& A) {
    std::vector<uint16_t> buf = A.data();
    RrefResult res = rref_in_place(*A.field(), A.rows(), A.cols(), buf);
    return Subspace::from_rref_unchecked(A.field(), A.cols(), std::move(buf), std::move(res.pivots));
}

static void check_same_ambient(const Subspace& U, const Subspace& V) {
    if (U.ambient() != V.ambient() || U.field()->q() != V.field()->q()) {
        throw AmbientMismatch("subspaces live in different ambient spaces");
    }
}

std::pair<Subspace, Subspace> subspace_sum_intersect(const Subspace& U, const Subspace& V) {
    check_same_ambient(U, V);
    const Field& f = U.field();
    int n = U.ambient();
    int ru = U.dim(), rv = V.dim();

    // Zassenhaus: eliminate [B_U | B_U; B_V | 0]. Rows with nonzero left
    // block span U+V on the left; rows with zero left block carry a basis of
    // U∩V in the right block.
    int rows = ru + rv;
    std::vector<uint16_t> z(static_cast<size_t>(rows) * 2 * n, 0);
    for (int i = 0; i < ru; ++i) {
        for (int j = 0; j < n; ++j) {
            z[static_cast<size_t>(i) * 2 * n + j] = U.basis_at(i, j);
            z[static_cast<size_t>(i) * 2 * n + n + j] = U.basis_at(i, j);
        }
    }
    for (int i = 0; i < rv; ++i) {
        for (int j = 0; j < n; ++j) {
            z[static_cast<size_t>(ru + i) * 2 * n + j] = V.basis_at(i, j);
        }
    }
    RrefResult res = rref_in_place(*f, rows, 2 * n, z);

    std::vector<uint16_t> sum_rows, inter_rows;
    std::vector<int> sum_piv, inter_piv;
    for (int i = 0; i < res.rank; ++i) {
        if (res.pivots[i] < n) {
            for (int j = 0; j < n; ++j) sum_rows.push_back(z[static_cast<size_t>(i) * 2 * n + j]);
            sum_piv.push_back(res.pivots[i]);
        } else {
            for (int j = 0; j < n; ++j) inter_rows.push_back(z[static_cast<size_t>(i) * 2 * n + n + j]);
            inter_piv.push_back(res.pivots[i] - n);
        }
    }
    Subspace sum = Subspace::from_rref_unchecked(f, n, std::move(sum_rows), std::move(sum_piv));
    Subspace inter = Subspace::from_rref_unchecked(f, n, std::move(inter_rows), std::move(inter_piv));
    return {sum, inter};
}

namespace {

// dim(U+V) by eliminating the stacked bases; bit-packed for GF(2).
int stacked_rank(const Subspace& U, const Subspace& V) {
    const FieldSpec& F = *U.field();
    int n = U.ambient();
    if (F.q() == 2 && n <= 64) {
        uint64_t basis[64] = {0};
        int rank = 0;
        auto insert = [&](const Subspace& S, int i) {
            uint64_t v = 0;
            for (int j = 0; j < n; ++j) {
                if (S.basis_at(i, j)) v |= 1ULL << j;
            }
            while (v != 0) {
                int b = std::countr_zero(v);
                if (basis[b] == 0) {
                    basis[b] = v;
                    ++rank;
                    break;
                }
                v ^= basis[b];
            }
        };
        for (int i = 0; i < U.dim(); ++i) insert(U, i);
        for (int i = 0; i < V.dim(); ++i) insert(V, i);
        return rank;
    }
    int rows = U.dim() + V.dim();
    std::vector<uint16_t> buf;
    buf.reserve(static_cast<size_t>(rows) * n);
    buf.insert(buf.end(), U.basis_data().begin(), U.basis_data().end());
    buf.insert(buf.end(), V.basis_data().begin(), V.basis_data().end());
    return rank_in_place(F, rows, n, buf);
}

}  // namespace

std::pair<int, int> subspace_distances(const Subspace& U, const Subspace& V) {
    check_same_ambient(U, V);
    int sum = stacked_rank(U, V);
    int inter = U.dim() + V.dim() - sum;
    int ds = sum - inter;
    int di = std::max(U.dim(), V.dim()) - inter;
    return {ds, di};
}

int subspace_distance(const Subspace& U, const Subspace& V) {
    return subspace_distances(U, V).first;
}

int injection_distance(const Subspace& U, const Subspace& V) {
    return subspace_distances(U, V).second;
}

Subspace lift(const MatrixGF& C) {
    if (C.rows() < 1) throw ParameterViolation("lift requires at least one row");
    int r = C.rows(), nn = C.cols();
    int n = r + nn;
    std::vector<uint16_t> b(static_cast<size_t>(r) * n, 0);
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) {
        b[static_cast<size_t>(i) * n + i] = 1;
        for (int j = 0; j < nn; ++j) b[static_cast<size_t>(i) * n + r + j] = C.at(i, j);
        piv[i] = i;
    }
    // (I_r | C) is already in reduced row echelon form.
    return Subspace::from_rref_unchecked(C.field(), n, std::move(b), std::move(piv));
}

Subspace unit_span(const Field& f, int n, std::vector<int> coords) {
    std::sort(coords.begin(), coords.end());
    int r = static_cast<int>(coords.size());
    std::vector<uint16_t> b(static_cast<size_t>(r) * n, 0);
    for (int i = 0; i < r; ++i) {
        if (coords[i] < 0 || coords[i] >= n) throw ParameterViolation("unit_span coordinate out of range");
        b[static_cast<size_t>(i) * n + coords[i]] = 1;
    }
    return Subspace::from_rref_unchecked(f, n, std::move(b), std::move(coords));
}

}  // namespace ranklab
