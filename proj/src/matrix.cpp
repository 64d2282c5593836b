#include "ranklab/matrix.hpp"

#include <bit>
#include <istream>
#include <sstream>

namespace ranklab {

MatrixGF MatrixGF::identity(const Field& f, int n) {
    MatrixGF I(f, n, n);
    for (int i = 0; i < n; ++i) I.set(i, i, 1);
    return I;
}

MatrixGF MatrixGF::operator+(const MatrixGF& o) const {
    if (m_ != o.m_ || n_ != o.n_ || f_->q() != o.f_->q()) {
        throw DimensionMismatch("matrix addition shape mismatch");
    }
    MatrixGF r(f_, m_, n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_->add(e_[i], o.e_[i]);
    return r;
}

MatrixGF MatrixGF::operator-(const MatrixGF& o) const {
    if (m_ != o.m_ || n_ != o.n_ || f_->q() != o.f_->q()) {
        throw DimensionMismatch("matrix subtraction shape mismatch");
    }
    MatrixGF r(f_, m_, n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_->sub(e_[i], o.e_[i]);
    return r;
}

MatrixGF MatrixGF::operator*(const MatrixGF& o) const {
    if (n_ != o.m_ || f_->q() != o.f_->q()) {
        throw DimensionMismatch("matrix product inner dimension mismatch");
    }
    MatrixGF r(f_, m_, o.n_);
    for (int i = 0; i < m_; ++i) {
        for (int k = 0; k < n_; ++k) {
            uint16_t aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.n_; ++j) {
                uint16_t prod = f_->mul(aik, o.at(k, j));
                r.set(i, j, f_->add(r.at(i, j), prod));
            }
        }
    }
    return r;
}

MatrixGF MatrixGF::transposed() const {
    MatrixGF r(f_, n_, m_);
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < n_; ++j) r.set(j, i, at(i, j));
    }
    return r;
}

bool MatrixGF::is_zero() const {
    for (uint16_t v : e_) {
        if (v != 0) return false;
    }
    return true;
}

bool MatrixGF::operator<(const MatrixGF& o) const {
    if (m_ != o.m_) return m_ < o.m_;
    if (n_ != o.n_) return n_ < o.n_;
    return e_ < o.e_;
}

std::string MatrixGF::to_text() const {
    std::ostringstream out;
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (j > 0) out << ' ';
            out << at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

MatrixGF MatrixGF::from_text(const Field& f, int m, int n, std::istream& in) {
    MatrixGF r(f, m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            long v;
            if (!(in >> v)) throw Error("matrix text: unexpected end of input");
            if (v < 0 || v >= f->q()) throw Error("matrix text: entry out of field range");
            r.set(i, j, static_cast<uint16_t>(v));
        }
    }
    return r;
}

namespace {

// Bit-packed elimination for GF(2) with at most 64 columns.
int rank_gf2(int m, int n, const std::vector<uint16_t>& a) {
    uint64_t basis[64] = {0};
    int rank = 0;
    for (int i = 0; i < m; ++i) {
        uint64_t v = 0;
        for (int j = 0; j < n; ++j) {
            if (a[static_cast<size_t>(i) * n + j]) v |= 1ULL << j;
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
    }
    return rank;
}

}  // namespace

int rank_in_place(const FieldSpec& F, int m, int n, std::vector<uint16_t>& a) {
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int i = rank; i < m; ++i) {
            if (a[static_cast<size_t>(i) * n + col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int j = col; j < n; ++j) {
                std::swap(a[static_cast<size_t>(pivot) * n + j], a[static_cast<size_t>(rank) * n + j]);
            }
        }
        uint16_t inv = F.inv(a[static_cast<size_t>(rank) * n + col]);
        for (int i = rank + 1; i < m; ++i) {
            uint16_t x = a[static_cast<size_t>(i) * n + col];
            if (x == 0) continue;
            uint16_t c = F.mul(x, inv);
            for (int j = col; j < n; ++j) {
                uint16_t sub = F.mul(c, a[static_cast<size_t>(rank) * n + j]);
                a[static_cast<size_t>(i) * n + j] = F.sub(a[static_cast<size_t>(i) * n + j], sub);
            }
        }
        ++rank;
    }
    return rank;
}

RrefResult rref_in_place(const FieldSpec& F, int m, int n, std::vector<uint16_t>& a) {
    RrefResult res;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int i = rank; i < m; ++i) {
            if (a[static_cast<size_t>(i) * n + col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int j = 0; j < n; ++j) {
                std::swap(a[static_cast<size_t>(pivot) * n + j], a[static_cast<size_t>(rank) * n + j]);
            }
        }
        uint16_t inv = F.inv(a[static_cast<size_t>(rank) * n + col]);
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(rank) * n + j] = F.mul(inv, a[static_cast<size_t>(rank) * n + j]);
        }
        for (int i = 0; i < m; ++i) {
            if (i == rank) continue;
            uint16_t x = a[static_cast<size_t>(i) * n + col];
            if (x == 0) continue;
            for (int j = 0; j < n; ++j) {
                uint16_t sub = F.mul(x, a[static_cast<size_t>(rank) * n + j]);
                a[static_cast<size_t>(i) * n + j] = F.sub(a[static_cast<size_t>(i) * n + j], sub);
            }
        }
        res.pivots.push_back(col);
        ++rank;
    }
    res.rank = rank;
    a.resize(static_cast<size_t>(rank) * n);
    return res;
}

int mat_rank(const MatrixGF& A) {
    if (A.field()->q() == 2 && A.cols() <= 64) {
        return rank_gf2(A.rows(), A.cols(), A.data());
    }
    std::vector<uint16_t> buf = A.data();
    return rank_in_place(*A.field(), A.rows(), A.cols(), buf);
}

int rank_distance(const MatrixGF& A, const MatrixGF& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols() || A.field()->q() != B.field()->q()) {
        throw DimensionMismatch("rank distance requires equal shapes");
    }
    return mat_rank(A - B);
}

}  // namespace ranklab
