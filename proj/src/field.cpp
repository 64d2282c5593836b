#include "ranklab/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ranklab {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long>(d) * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

// Dense polynomials over GF(p), constant term first.
using Poly = std::vector<int>;

int poly_deg(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] != 0) return i;
    }
    return -1;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    int dm = poly_deg(m);
    int inv_lead = 1;
    for (int x = 1; x < p; ++x) {
        if (x * m[dm] % p == 1) inv_lead = x;
    }
    for (int da = poly_deg(a); da >= dm; da = poly_deg(a)) {
        int c = a[da] * inv_lead % p;
        for (int i = 0; i <= dm; ++i) {
            a[da - dm + i] = ((a[da - dm + i] - c * m[i]) % p + p) % p;
        }
    }
    a.resize(dm);
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    }
    return r;
}

Poly poly_from_value(long v, int p, int len) {
    Poly a(len, 0);
    for (int i = 0; i < len; ++i) {
        a[i] = static_cast<int>(v % p);
        v /= p;
    }
    return a;
}

bool poly_is_zero(const Poly& a) { return poly_deg(a) < 0; }

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool poly_irreducible(const Poly& f, int p) {
    int df = poly_deg(f);
    for (int dg = 1; 2 * dg <= df; ++dg) {
        long count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (long v = 0; v < count; ++v) {
            Poly g = poly_from_value(v, p, dg + 1);
            g[dg] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

std::vector<int> prime_factors(long n) {
    std::vector<int> fs;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(static_cast<int>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(static_cast<int>(n));
    return fs;
}

}  // namespace

uint16_t FieldSpec::add_digitwise(uint16_t a, uint16_t b) const {
    int x = a, y = b, out = 0, shift = 1;
    for (int i = 0; i < e_; ++i) {
        out += (x % p_ + y % p_) % p_ * shift;
        x /= p_;
        y /= p_;
        shift *= p_;
    }
    return static_cast<uint16_t>(out);
}

uint16_t FieldSpec::pow(uint16_t a, long long k) const {
    if (a == 0) {
        if (k <= 0) throw ParameterViolation("0 raised to non-positive power");
        return 0;
    }
    long long m = (static_cast<long long>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
    if (m < 0) m += q_ - 1;
    return exp_[m];
}

Field field_create(int p, int e) {
    if (!is_prime(p)) throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw UnsupportedOrder("extension degree must be >= 1");
    long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw UnsupportedOrder("field order exceeds table limit 2^16");
    }

    static std::map<std::pair<int, int>, Field> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, e});
        if (it != cache.end()) return it->second;
    }

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->e_ = e;
    spec->q_ = static_cast<int>(q);

    if (e > 1) {
        // Lowest packed value first, so the choice is reproducible.
        long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long v = 0; v < count; ++v) {
            Poly f = poly_from_value(v, p, e + 1);
            f[e] = 1;
            if (poly_irreducible(f, p)) {
                spec->reduction_ = f;
                break;
            }
        }
        if (spec->reduction_.empty()) throw UnsupportedOrder("no irreducible polynomial found");
    }

    // Slow multiply used only while bootstrapping tables.
    auto mul_slow = [&](int a, int b) -> int {
        if (spec->e_ == 1) return static_cast<int>((static_cast<long>(a) * b) % p);
        Poly pa = poly_from_value(a, p, e);
        Poly pb = poly_from_value(b, p, e);
        Poly pr = poly_mod(poly_mul(pa, pb, p), spec->reduction_, p);
        long out = 0, shift = 1;
        for (int i = 0; i < e; ++i) {
            out += pr[i] * shift;
            shift *= p;
        }
        return static_cast<int>(out);
    };
    auto pow_slow = [&](int a, long k) -> int {
        int acc = 1, b = a;
        while (k > 0) {
            if (k & 1) acc = mul_slow(acc, b);
            b = mul_slow(b, b);
            k >>= 1;
        }
        return acc;
    };

    // Generator: smallest element whose order is q-1.
    std::vector<int> factors = prime_factors(q - 1);
    int gen = 0;
    for (int cand = (q == 2 ? 1 : 2); cand < q; ++cand) {
        bool ok = true;
        for (int f : factors) {
            if (pow_slow(cand, (q - 1) / f) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = cand;
            break;
        }
    }
    if (gen == 0) throw UnsupportedOrder("no generator found");

    spec->exp_.resize(q - 1);
    spec->log_.assign(q, 0);
    int cur = 1;
    for (int k = 0; k < q - 1; ++k) {
        spec->exp_[k] = static_cast<uint16_t>(cur);
        spec->log_[cur] = k;
        cur = mul_slow(cur, gen);
    }
    if (cur != 1) throw UnsupportedOrder("generator order check failed");

    spec->neg_.resize(q);
    for (int a = 0; a < q; ++a) {
        int x = a, out = 0, shift = 1;
        for (int i = 0; i < e; ++i) {
            out += (p - x % p) % p * shift;
            x /= p;
            shift *= p;
        }
        spec->neg_[a] = static_cast<uint16_t>(out);
    }

    if (p != 2 && q <= 256) {
        spec->add_table_.resize(static_cast<size_t>(q) * q);
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                spec->add_table_[static_cast<size_t>(a) * q + b] = spec->add_digitwise(
                    static_cast<uint16_t>(a), static_cast<uint16_t>(b));
            }
        }
    }

    Field result = spec;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(std::make_pair(p, e), result);
    return it->second;
}

Field field_from_order(long q) {
    if (q < 2) throw NonPrimeCharacteristic("field order must be >= 2");
    long p = 0;
    for (long d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return field_create(static_cast<int>(q), 1);
    int e = 0;
    long v = q;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1) throw NonPrimeCharacteristic(std::to_string(q) + " is not a prime power");
    return field_create(static_cast<int>(p), e);
}

}  // namespace ranklab
