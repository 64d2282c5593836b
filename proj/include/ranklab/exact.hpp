#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "ranklab/errors.hpp"

namespace ranklab {

// Exact arithmetic backing every counting formula and DEP value.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(long base, long exp) {
    if (exp < 0) throw ParameterViolation("ipow: negative exponent");
    return boost::multiprecision::pow(Int(base), static_cast<unsigned>(exp));
}

// q^e as an exact rational, e may be negative.
inline Rat q_power(long q, long e) {
    if (e >= 0) return Rat(ipow(q, e));
    return Rat(Int(1), ipow(q, -e));
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw ParameterViolation("rat_pow: division by zero");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat acc(1), b = base;
    long k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string rat_to_string(const Rat& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Closed enclosure [lo, hi] over double with outward rounding. Every
// arithmetic step pads by one ulp on each side, which covers the at most
// half-ulp error of the corresponding double operation.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static double next_up(double x) {
        return std::nextafter(x, std::numeric_limits<double>::infinity());
    }
    static double next_down(double x) {
        return std::nextafter(x, -std::numeric_limits<double>::infinity());
    }

    static Interval point(double v) { return {v, v}; }

    // Tight double enclosure of an exact rational.
    static Interval of(const Rat& r) {
        double mid = to_double(r);
        double lo = mid, hi = mid;
        while (Rat(lo) > r) lo = next_down(lo);
        while (Rat(hi) < r) hi = next_up(hi);
        return {lo, hi};
    }

    Interval operator+(const Interval& o) const {
        return {next_down(lo + o.lo), next_up(hi + o.hi)};
    }
    Interval operator-(const Interval& o) const {
        return {next_down(lo - o.hi), next_up(hi - o.lo)};
    }
    Interval operator*(const Interval& o) const {
        double c0 = lo * o.lo, c1 = lo * o.hi, c2 = hi * o.lo, c3 = hi * o.hi;
        double mn = std::fmin(std::fmin(c0, c1), std::fmin(c2, c3));
        double mx = std::fmax(std::fmax(c0, c1), std::fmax(c2, c3));
        return {next_down(mn), next_up(mx)};
    }
    // Requires 0 outside [lo, hi].
    Interval inverse() const {
        if (lo <= 0.0 && hi >= 0.0) throw ParameterViolation("Interval::inverse: contains zero");
        return {next_down(1.0 / hi), next_up(1.0 / lo)};
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Certified enclosure of q^e for rational e (denominators up to a few).
// The bracket is validated in exact rational arithmetic, so the returned
// endpoints are rigorous.
inline Interval pow_q_interval(long q, const Rat& e) {
    Int num = boost::multiprecision::numerator(e);
    Int den = boost::multiprecision::denominator(e);
    long num_l = num.convert_to<long>();
    long den_l = den.convert_to<long>();
    Rat target_pow_den = q_power(q, num_l);  // (q^e)^den == q^num
    double guess = std::pow(static_cast<double>(q), to_double(e));
    if (!(guess > 0.0) || !std::isfinite(guess)) {
        throw ParameterViolation("pow_q_interval: exponent out of double range");
    }
    double lo = guess, hi = guess;
    while (rat_pow(Rat(lo), den_l) > target_pow_den) lo = Interval::next_down(lo);
    while (rat_pow(Rat(lo), den_l) <= target_pow_den) {
        double nxt = Interval::next_up(lo);
        if (rat_pow(Rat(nxt), den_l) > target_pow_den) break;
        lo = nxt;
    }
    while (rat_pow(Rat(hi), den_l) < target_pow_den) hi = Interval::next_up(hi);
    return {lo, hi};
}

// a < b certainly (exact left side against certified enclosure).
inline bool certainly_less(const Rat& a, const Interval& b) { return a < Rat(b.lo); }
inline bool certainly_less(const Interval& a, const Rat& b) { return Rat(a.hi) < b; }
inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi < b.lo; }

}  // namespace ranklab
