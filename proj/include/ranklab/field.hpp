#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ranklab/errors.hpp"

namespace ranklab {

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

inline constexpr long kMaxFieldOrder = 1L << 16;

// GF(p^e) with exp/log multiplication tables. Elements are packed base-p
// digit strings: the value sum c_i p^i stands for the polynomial sum c_i x^i
// over GF(p), reduced modulo a fixed irreducible polynomial. The reduction
// polynomial is the lexicographically smallest irreducible monic polynomial
// of degree e (smallest packed value), so canonical forms are stable across
// runs and machines.
class FieldSpec {
  public:
    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    // Monic reduction polynomial, constant term first, reduction()[e] == 1.
    // Empty for prime fields.
    const std::vector<int>& reduction() const { return reduction_; }

    uint16_t add(uint16_t a, uint16_t b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[static_cast<size_t>(a) * q_ + b];
        return add_digitwise(a, b);
    }
    uint16_t neg(uint16_t a) const { return neg_[a]; }
    uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }
    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        int k = log_[a] + log_[b];
        if (k >= q_ - 1) k -= q_ - 1;
        return exp_[k];
    }
    uint16_t inv(uint16_t a) const {
        if (a == 0) throw ParameterViolation("field inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    uint16_t pow(uint16_t a, long long k) const;

    // Discrete log with respect to the stored generator; a != 0.
    int log(uint16_t a) const {
        if (a == 0) throw ParameterViolation("field log of zero");
        return log_[a];
    }
    uint16_t exp(long long k) const {
        long long m = k % (q_ - 1);
        if (m < 0) m += q_ - 1;
        return exp_[m];
    }
    uint16_t generator() const { return exp_[1]; }

    friend Field field_create(int p, int e);

  private:
    FieldSpec() = default;
    uint16_t add_digitwise(uint16_t a, uint16_t b) const;

    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<int> reduction_;
    std::vector<uint16_t> exp_;   // q-1 entries, exp_[k] = g^k
    std::vector<int> log_;        // q entries, log_[0] unused
    std::vector<uint16_t> neg_;   // q entries
    std::vector<uint16_t> add_table_;  // q*q entries for small non-binary q
};

// Shared, cached field instances; deterministic per (p, e).
Field field_create(int p, int e);

// Factors q = p^e; NonPrimeCharacteristic if q is not a prime power.
Field field_from_order(long q);

}  // namespace ranklab
