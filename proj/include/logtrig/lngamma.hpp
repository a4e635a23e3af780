#pragma once

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "logtrig/ext_real.hpp"
#include "logtrig/summation.hpp"

namespace logtrig {
namespace detail {

/// Stirling-series coefficients c_k = B_{2k} / ((2k)(2k-1)) as exact
/// rationals, via the tangent-number triangle:
/// c_k = (-1)^(k-1) T_k / ((2k-1) 4^k (4^k - 1)).
/// The triangle is a batch computation, so the cache is rebuilt with
/// doubling size whenever a higher coefficient is requested.
inline mpq_class stirling_coefficient(std::size_t k) {
    static std::mutex mu;
    static std::vector<mpq_class> cache;  // cache[i] = c_{i+1}

    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() < k) {
        const std::size_t n = std::max<std::size_t>(2 * k, 16);
        std::vector<mpz_class> t(n + 1);
        t[1] = 1;
        for (std::size_t i = 2; i <= n; ++i)
            t[i] = t[i - 1] * static_cast<long>(i - 1);
        for (std::size_t kk = 2; kk <= n; ++kk)
            for (std::size_t j = kk; j <= n; ++j)
                t[j] = static_cast<long>(j - kk) * t[j - 1] +
                       static_cast<long>(j - kk + 2) * t[j];
        cache.clear();
        cache.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) {
            mpz_class four_i;
            mpz_ui_pow_ui(four_i.get_mpz_t(), 4, static_cast<unsigned long>(i));
            mpq_class c(t[i], (four_i - 1) * four_i *
                                  static_cast<long>(2 * i - 1));
            c.canonicalize();
            if (i % 2 == 0) c = -c;
            cache.push_back(c);
        }
    }
    return cache[k - 1];
}

inline bool stirling_tail(mpfr_ptr out, mpfr_srcptr z, precision_t work,
                          long scale_exp) {
    // out = sum_k c_k z^(1-2k); false if the asymptotic terms stop
    // shrinking before reaching 2^(scale_exp - work - 2).
    ExtReal zz(ExtReal::raw_tag{}, work);
    mpfr_sqr(zz.raw(), z, MPFR_RNDN);
    ExtReal inv_z2(ExtReal::raw_tag{}, work);
    mpfr_si_div(inv_z2.raw(), 1, zz.raw(), MPFR_RNDN);
    ExtReal power(ExtReal::raw_tag{}, work);
    mpfr_si_div(power.raw(), 1, z, MPFR_RNDN);

    ExtReal term(ExtReal::raw_tag{}, work);
    ExtReal coeff(ExtReal::raw_tag{}, work);
    mpfr_set_zero(out, 1);
    long prev_exp = LONG_MAX;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(work); ++k) {
        mpfr_set_q(coeff.raw(), stirling_coefficient(k).get_mpq_t(),
                   MPFR_RNDN);
        mpfr_mul(term.raw(), coeff.raw(), power.raw(), MPFR_RNDN);
        const long texp = mpfr_zero_p(term.raw())
                              ? scale_exp - work - 10
                              : static_cast<long>(mpfr_get_exp(term.raw()));
        if (texp >= prev_exp) return false;  // past the optimal truncation
        mpfr_add(out, out, term.raw(), MPFR_RNDN);
        if (texp < scale_exp - work - 2) return true;
        prev_exp = texp;
        mpfr_mul(power.raw(), power.raw(), inv_z2.raw(), MPFR_RNDN);
    }
    return false;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
///
/// Stirling's asymptotic series evaluated after shifting the argument
/// upward (ln Gamma(x) = ln Gamma(x+m) - sum ln(x+j)) until the series
/// converges below the working precision; the shift threshold scales with
/// the precision, so no fixed coefficient table is involved. Relative
/// error stays below 2^(8 - precision) except within ~2^-50 of the zeros
/// of ln Gamma at x = 1 and x = 2 (those two are returned exactly).
inline ExtReal lngamma(const ExtReal& x) {
    if (x.is_nan() || x.sign() <= 0)
        throw std::domain_error("lngamma: requires x > 0");
    const precision_t bits = x.precision_bits();
    if (mpfr_cmp_ui(x.raw(), 1) == 0 || mpfr_cmp_ui(x.raw(), 2) == 0)
        return ExtReal(0.0, bits);

    const precision_t work = bits + 64;
    // Optimal-truncation floor of the series is ~exp(-2 pi z); keep it
    // below 2^-(work+4).
    double threshold = 0.1103 * static_cast<double>(work + 4) + 8.0;
    for (;;) {
        ExtReal z = x.rounded_to(work);
        long shift = 0;
        if (mpfr_cmp_d(z.raw(), threshold) < 0) {
            shift = static_cast<long>(threshold - mpfr_get_d(z.raw(), MPFR_RNDD)) + 1;
            mpfr_add_si(z.raw(), z.raw(), shift, MPFR_RNDN);
        }

        // (z - 1/2) ln z - z + ln(2 pi)/2
        ExtReal lz = log(z);
        ExtReal base(ExtReal::raw_tag{}, work);
        mpfr_set(base.raw(), z.raw(), MPFR_RNDN);
        mpfr_sub_d(base.raw(), base.raw(), 0.5, MPFR_RNDN);
        mpfr_mul(base.raw(), base.raw(), lz.raw(), MPFR_RNDN);
        mpfr_sub(base.raw(), base.raw(), z.raw(), MPFR_RNDN);
        ExtReal two_pi = const_pi(work);
        mpfr_mul_2si(two_pi.raw(), two_pi.raw(), 1, MPFR_RNDN);
        ExtReal half_ln_2pi = ldexp2(log(two_pi), -1);
        mpfr_add(base.raw(), base.raw(), half_ln_2pi.raw(), MPFR_RNDN);

        ExtReal tail(ExtReal::raw_tag{}, work);
        const long scale_exp = base.is_zero() ? 0 : base.exponent();
        if (!detail::stirling_tail(tail.raw(), z.raw(), work, scale_exp)) {
            threshold *= 1.5;  // series still diverging: shift further
            continue;
        }
        ExtReal result = base + tail;

        if (shift > 0) {
            SumAccumulator logs(work);
            ExtReal t(ExtReal::raw_tag{}, work);
            for (long j = 0; j < shift; ++j) {
                mpfr_add_si(t.raw(), x.raw(), j, MPFR_RNDN);
                mpfr_log(t.raw(), t.raw(), MPFR_RNDN);
                logs.add(t);
            }
            result -= logs.total();
        }
        return result.rounded_to(bits);
    }
}

}  // namespace logtrig
