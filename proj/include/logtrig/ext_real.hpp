#pragma once

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cstdio>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "logtrig/errors.hpp"

namespace logtrig {

/// Significand width in bits.
using precision_t = long;

/// Narrowest supported significand (IEEE binary64).
inline constexpr precision_t min_precision = 53;

inline precision_t check_precision(precision_t bits) {
    if (bits < min_precision) throw invalid_precision(bits);
    return bits;
}

/// Extended-precision real number. Wraps an MPFR value with value
/// semantics; every instance carries its own significand width.
///
/// Binary operations between two ExtReals round once, to the wider of
/// the two operand precisions. Integer operands are exact.
class ExtReal {
public:
    ExtReal() { mpfr_init2(v_, min_precision); mpfr_set_zero(v_, 1); }

    explicit ExtReal(precision_t bits) {
        mpfr_init2(v_, check_precision(bits));
        mpfr_set_zero(v_, 1);
    }

    explicit ExtReal(double x, precision_t bits = min_precision) {
        mpfr_init2(v_, check_precision(bits));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    static ExtReal integer(long n, precision_t bits) {
        ExtReal r(raw_tag{}, bits);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }

    /// Parses a decimal string, rounding once to `bits`.
    static ExtReal from_string(const std::string& s, precision_t bits) {
        ExtReal r(raw_tag{}, bits);
        if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw invalid_parameter("not a decimal number: '" + s + "'");
        return r;
    }

    ExtReal(const ExtReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    ExtReal(ExtReal&& o) noexcept {
        v_[0] = o.v_[0];
        o.v_[0]._mpfr_d = nullptr;
    }

    ExtReal& operator=(const ExtReal& o) {
        if (this != &o) {
            if (v_[0]._mpfr_d == nullptr)
                mpfr_init2(v_, mpfr_get_prec(o.v_));
            else
                mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    ExtReal& operator=(ExtReal&& o) noexcept {
        if (this != &o) {
            if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
            v_[0] = o.v_[0];
            o.v_[0]._mpfr_d = nullptr;
        }
        return *this;
    }

    ~ExtReal() {
        if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
    }

    precision_t precision_bits() const { return mpfr_get_prec(v_); }

    /// Value re-rounded to `bits` (exact when widening).
    ExtReal rounded_to(precision_t bits) const {
        ExtReal r(raw_tag{}, bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Shortest-form decimal with the given number of significant digits.
    std::string to_string(int significant_digits) const {
        char buf[128];
        int need = mpfr_snprintf(buf, sizeof buf, "%.*RNg",
                                 significant_digits, v_);
        if (need < static_cast<int>(sizeof buf)) return std::string(buf);
        std::vector<char> big(static_cast<std::size_t>(need) + 1);
        mpfr_snprintf(big.data(), big.size(), "%.*RNg", significant_digits, v_);
        return std::string(big.data());
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Base-2 exponent e with |x| in [2^(e-1), 2^e). Requires x regular.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    ExtReal operator-() const {
        ExtReal r(raw_tag{}, precision_bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        ExtReal r(raw_tag{}, join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator-(const ExtReal& a, const ExtReal& b) {
        ExtReal r(raw_tag{}, join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
        ExtReal r(raw_tag{}, join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
        ExtReal r(raw_tag{}, join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    friend ExtReal operator+(const ExtReal& a, long n) {
        ExtReal r(raw_tag{}, a.precision_bits());
        mpfr_add_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator+(long n, const ExtReal& a) { return a + n; }
    friend ExtReal operator-(const ExtReal& a, long n) {
        ExtReal r(raw_tag{}, a.precision_bits());
        mpfr_sub_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator-(long n, const ExtReal& a) {
        ExtReal r(raw_tag{}, a.precision_bits());
        mpfr_si_sub(r.v_, n, a.v_, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator*(const ExtReal& a, long n) {
        ExtReal r(raw_tag{}, a.precision_bits());
        mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator*(long n, const ExtReal& a) { return a * n; }
    friend ExtReal operator/(const ExtReal& a, long n) {
        ExtReal r(raw_tag{}, a.precision_bits());
        mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend ExtReal operator/(long n, const ExtReal& a) {
        ExtReal r(raw_tag{}, a.precision_bits());
        mpfr_si_div(r.v_, n, a.v_, MPFR_RNDN);
        return r;
    }

    ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }
    ExtReal& operator-=(const ExtReal& o) { return *this = *this - o; }
    ExtReal& operator*=(const ExtReal& o) { return *this = *this * o; }
    ExtReal& operator/=(const ExtReal& o) { return *this = *this / o; }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) {
        return !(a == b);
    }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        return mpfr_less_p(a.v_, b.v_) != 0;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) {
        return mpfr_lessequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator>(const ExtReal& a, const ExtReal& b) {
        return mpfr_greater_p(a.v_, b.v_) != 0;
    }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) {
        return mpfr_greaterequal_p(a.v_, b.v_) != 0;
    }

    struct raw_tag {};
    ExtReal(raw_tag, precision_t bits) { mpfr_init2(v_, check_precision(bits)); }

private:
    static precision_t join(const ExtReal& a, const ExtReal& b) {
        return std::max(a.precision_bits(), b.precision_bits());
    }

    mpfr_t v_;
};

namespace detail {

template <int (*F)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
inline ExtReal unary(const ExtReal& x) {
    ExtReal r(ExtReal::raw_tag{}, x.precision_bits());
    F(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace detail

inline ExtReal abs(const ExtReal& x) { return detail::unary<mpfr_abs>(x); }
inline ExtReal sqrt(const ExtReal& x) { return detail::unary<mpfr_sqrt>(x); }
inline ExtReal exp(const ExtReal& x) { return detail::unary<mpfr_exp>(x); }
inline ExtReal log(const ExtReal& x) { return detail::unary<mpfr_log>(x); }
inline ExtReal sin(const ExtReal& x) { return detail::unary<mpfr_sin>(x); }
inline ExtReal cos(const ExtReal& x) { return detail::unary<mpfr_cos>(x); }
inline ExtReal tan(const ExtReal& x) { return detail::unary<mpfr_tan>(x); }

/// x * 2^k, exact.
inline ExtReal ldexp2(const ExtReal& x, long k) {
    ExtReal r(ExtReal::raw_tag{}, x.precision_bits());
    mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}

/// 2^k at the given precision, exact.
inline ExtReal pow2(long k, precision_t bits) {
    ExtReal r(ExtReal::raw_tag{}, bits);
    mpfr_set_ui_2exp(r.raw(), 1, k, MPFR_RNDN);
    return r;
}

/// pi, correctly rounded to `bits`.
inline ExtReal const_pi(precision_t bits) {
    ExtReal r(ExtReal::raw_tag{}, bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

/// ln 2, correctly rounded to `bits`.
inline ExtReal const_ln2(precision_t bits) {
    ExtReal r(ExtReal::raw_tag{}, bits);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

/// Unit in the last place of a regular x: 2^(exponent - precision).
inline ExtReal ulp(const ExtReal& x) {
    if (!x.is_finite() || x.is_zero()) return ExtReal(0.0, x.precision_bits());
    return pow2(x.exponent() - x.precision_bits(), x.precision_bits());
}

/// |a - b| <= n units in the last place, at the coarser of the two
/// precisions and the larger of the two exponents.
inline bool within_ulps(const ExtReal& a, const ExtReal& b, long n) {
    if (a == b) return true;
    if (a.is_nan() || b.is_nan()) return false;
    long e = std::max(a.is_zero() ? LONG_MIN : a.exponent(),
                      b.is_zero() ? LONG_MIN : b.exponent());
    precision_t p = std::min(a.precision_bits(), b.precision_bits());
    return abs(a - b) <= pow2(e - p, p) * n;
}

/// sin(pi * num / den) for integer num, den >= 1.
///
/// The argument is reduced as an exact rational before any rounding:
/// num/den is brought into [0, 1/2] using the period, the sign rule
/// sin(pi(x+1)) = -sin(pi x) and the reflection sin(pi(1-x)) = sin(pi x),
/// and the fraction is put in lowest terms. Calls that are equal under
/// those symmetries therefore return bit-identical results.
inline ExtReal sin_pi_rational(long long num, unsigned long long den,
                               precision_t bits) {
    check_precision(bits);
    if (den == 0) throw invalid_parameter("sin_pi_rational: den must be >= 1");
    const long long period = 2 * static_cast<long long>(den);
    long long r = num % period;
    if (r < 0) r += period;
    int sign = 1;
    if (r >= static_cast<long long>(den)) {
        sign = -1;
        r -= static_cast<long long>(den);
    }
    if (r == 0) return ExtReal(0.0, bits);
    unsigned long long n = static_cast<unsigned long long>(r);
    unsigned long long d = den;
    if (2 * n > d) n = d - n;
    const unsigned long long g = std::gcd(n, d);
    n /= g;
    d /= g;

    const precision_t work = bits + 8;
    ExtReal t(ExtReal::raw_tag{}, work);
    mpfr_const_pi(t.raw(), MPFR_RNDN);
    mpfr_mul_ui(t.raw(), t.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_div_ui(t.raw(), t.raw(), static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_sin(t.raw(), t.raw(), MPFR_RNDN);
    ExtReal out(ExtReal::raw_tag{}, bits);
    mpfr_set(out.raw(), t.raw(), MPFR_RNDN);
    if (sign < 0) mpfr_neg(out.raw(), out.raw(), MPFR_RNDN);
    return out;
}

/// cos(pi * num / den), via cos(pi x) = sin(pi (x + 1/2)).
inline ExtReal cos_pi_rational(long long num, unsigned long long den,
                               precision_t bits) {
    if (den == 0) throw invalid_parameter("cos_pi_rational: den must be >= 1");
    return sin_pi_rational(2 * num + static_cast<long long>(den), 2 * den,
                           bits);
}

}  // namespace logtrig
