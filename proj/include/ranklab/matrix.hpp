#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ranklab/field.hpp"

namespace ranklab {

// Dense matrix over GF(q), immutable by convention once built.
class MatrixGF {
  public:
    MatrixGF() = default;
    MatrixGF(Field f, int m, int n)
        : f_(std::move(f)), m_(m), n_(n), e_(static_cast<size_t>(m) * n, 0) {}

    static MatrixGF identity(const Field& f, int n);

    int rows() const { return m_; }
    int cols() const { return n_; }
    const Field& field() const { return f_; }

    uint16_t at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, uint16_t v) { e_[static_cast<size_t>(i) * n_ + j] = v; }

    const std::vector<uint16_t>& data() const { return e_; }
    std::vector<uint16_t>& data() { return e_; }

    MatrixGF operator+(const MatrixGF& o) const;
    MatrixGF operator-(const MatrixGF& o) const;
    MatrixGF operator*(const MatrixGF& o) const;
    MatrixGF transposed() const;

    bool is_zero() const;
    bool operator==(const MatrixGF& o) const {
        return f_->q() == o.f_->q() && m_ == o.m_ && n_ == o.n_ && e_ == o.e_;
    }
    bool operator!=(const MatrixGF& o) const { return !(*this == o); }
    bool operator<(const MatrixGF& o) const;

    // One row per line, entries as base-q digits separated by spaces.
    std::string to_text() const;
    static MatrixGF from_text(const Field& f, int m, int n, std::istream& in);

  private:
    Field f_;
    int m_ = 0, n_ = 0;
    std::vector<uint16_t> e_;
};

// Gaussian elimination rank; rank(A) == rank(transposed(A)).
int mat_rank(const MatrixGF& A);

// rk(A - B); DimensionMismatch on unequal shapes or fields.
int rank_distance(const MatrixGF& A, const MatrixGF& B);

// In-place Gauss-Jordan on a row-major m x n buffer. Rows are compacted so
// the first `rank` rows hold the reduced row echelon form.
struct RrefResult {
    int rank = 0;
    std::vector<int> pivots;
};
RrefResult rref_in_place(const FieldSpec& F, int m, int n, std::vector<uint16_t>& a);

// Rank of a row-major buffer without canonicalizing (destroys the buffer).
int rank_in_place(const FieldSpec& F, int m, int n, std::vector<uint16_t>& a);

}  // namespace ranklab
