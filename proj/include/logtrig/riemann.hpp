#pragma once

#include <span>
#include <vector>

#include "logtrig/ext_real.hpp"
#include "logtrig/identities.hpp"
#include "logtrig/lngamma.hpp"
#include "logtrig/summation.hpp"
#include "logtrig/targets.hpp"

namespace logtrig {
namespace detail {

/// sum_{n=1}^{N-1} term(n) by ascending-n compensated summation, where
/// term(n) = term(N-n) bit-for-bit; the first half is cached and reused.
template <class TermFn>
ExtReal mirrored_full_sum(long N, precision_t bits, TermFn term) {
    SumAccumulator acc(bits);
    const long half = N / 2;
    std::vector<ExtReal> cache;
    cache.reserve(static_cast<std::size_t>(half));
    for (long n = 1; n <= half; ++n) {
        cache.push_back(term(n));
        acc.add(cache.back());
    }
    for (long n = half + 1; n <= N - 1; ++n)
        acc.add(cache[static_cast<std::size_t>(N - n - 1)]);
    return acc.total();
}

}  // namespace detail

/// sum_{n=1}^{N-1} ln sin(n pi/N); equals ln N - (N-1) ln 2 exactly.
/// Requires N >= 2.
inline ExtReal log_sin_sum(long N, precision_t bits) {
    check_precision(bits);
    if (N < 2) throw invalid_parameter("log_sin_sum: N must be >= 2");
    return detail::mirrored_full_sum(N, bits, [&](long n) {
        return log(sin_pi_rational(n, static_cast<unsigned long long>(N), bits));
    });
}

/// sum_{n=1}^{N-1} ln(pi / sin(n pi/N)); equals (N-1) ln(2 pi) - ln N
/// exactly. Requires N >= 3. Terms pair exactly under n <-> N-n.
inline ExtReal gamma_reflection_sum(long N, precision_t bits) {
    check_precision(bits);
    if (N < 3) throw invalid_parameter("gamma_reflection_sum: N must be >= 3");
    const ExtReal pi = const_pi(bits);
    return detail::mirrored_full_sum(N, bits, [&](long n) {
        return log(pi / sin_pi_rational(n, static_cast<unsigned long long>(N), bits));
    });
}

/// The same quantity as gamma_reflection_sum, but routed through the
/// log-gamma function: sum_{n=1}^{N-1} [lnGamma(n/N) + lnGamma(1 - n/N)].
/// Cross-check route; agrees with gamma_reflection_sum to relative
/// 2^(24 - bits).
inline ExtReal gamma_reflection_sum_via_lngamma(long N, precision_t bits) {
    check_precision(bits);
    if (N < 3)
        throw invalid_parameter(
            "gamma_reflection_sum_via_lngamma: N must be >= 3");
    SumAccumulator acc(bits);
    for (long n = 1; n <= N - 1; ++n) {
        acc.add(lngamma(ExtReal::integer(n, bits) / N));
        acc.add(lngamma(ExtReal::integer(N - n, bits) / N));
    }
    return acc.total();
}

struct RiemannRecord {
    long n_param = 0;  // N, or the odd M for the tangent family
    ExtReal sum_value;
    ExtReal predicted_residual;
    ExtReal observed_error;
};

struct ConvergenceReport {
    IntegralTarget target;
    std::vector<RiemannRecord> records;
    ExtReal extrapolated_limit;
    ExtReal extrapolation_error;
};

/// One pre-limit partial sum of the target's defining identity, arranged
/// on the grid x_n = n/N with spacing 1/(N-1) (1/M for the tangent
/// family) and scaled so sum_value estimates the integral over
/// [lower, upper] directly. Note the grid is deliberately nonstandard:
/// the points step by 1/N while the weight is 1/(N-1), so this is not a
/// plain uniform partition -- that exact pairing is what makes the
/// finite-N discrepancy closed-form. It is not merely asymptotic: it is
/// exactly the predicted residual,
///   sine/cosine families:  (upper-lower) * ln N/(N-1)
///   tangent family:        pi * ln M/(2M)
///   gamma family:          -ln N/(2(N-1))
/// so observed_error and predicted_residual agree to rounding noise at
/// every N.
inline RiemannRecord riemann_sum(const IntegralTarget& target, long N,
                                 precision_t bits) {
    check_precision(bits);
    if (target.id == IntegralTargetId::log_abs_sin_shifted)
        throw invalid_parameter(
            "riemann_sum: log-abs-sin-shifted is verified by quadrature only");
    if (N < 3) throw invalid_parameter("riemann_sum: N must be >= 3");
    if (target.id == IntegralTargetId::log_tan_0_halfpi && N % 2 == 0)
        throw invalid_parameter(
            "riemann_sum: the tangent family requires odd M");

    const ExtReal pi = const_pi(bits);
    const ExtReal ln_n = log(ExtReal::integer(N, bits));
    const auto den = static_cast<unsigned long long>(N);

    RiemannRecord rec;
    rec.n_param = N;
    switch (target.id) {
        case IntegralTargetId::log_sin_0_pi: {
            ExtReal s = log_sin_sum(N, bits);
            rec.sum_value = pi * s / (N - 1);
            rec.predicted_residual = pi * ln_n / (N - 1);
            break;
        }
        case IntegralTargetId::log_sin_0_halfpi: {
            SumAccumulator acc(bits);
            for (long n = 1; n <= N / 2; ++n)
                acc.add(log(sin_pi_rational(n, den, bits)));
            rec.sum_value = pi * acc.total() / (N - 1);
            rec.predicted_residual = ldexp2(pi * ln_n / (N - 1), -1);
            break;
        }
        case IntegralTargetId::log_cos_0_halfpi: {
            // cos(pi/2 - n pi/N), written as the cosine of the exact
            // rational (N-2n)/(2N) of pi.
            SumAccumulator acc(bits);
            for (long n = 1; n <= N / 2; ++n)
                acc.add(log(cos_pi_rational(N - 2 * n, 2 * den, bits)));
            rec.sum_value = pi * acc.total() / (N - 1);
            rec.predicted_residual = ldexp2(pi * ln_n / (N - 1), -1);
            break;
        }
        case IntegralTargetId::log_tan_0_halfpi: {
            const ExtReal pi_w = const_pi(bits + 8);
            SumAccumulator acc(bits);
            for (long n = 1; n <= (N - 1) / 2; ++n)
                acc.add(log(tan(pi_w * n / N)).rounded_to(bits));
            rec.sum_value = pi * acc.total() / N;
            rec.predicted_residual = ldexp2(pi * ln_n / N, -1);
            break;
        }
        case IntegralTargetId::log_gamma_0_1: {
            ExtReal s = gamma_reflection_sum(N, bits);
            rec.sum_value = ldexp2(s / (N - 1), -1);
            rec.predicted_residual = -ldexp2(ln_n / (N - 1), -1);
            break;
        }
        case IntegralTargetId::log_abs_sin_shifted:
            break;  // unreachable
    }
    rec.observed_error = rec.sum_value - target.closed_form;
    return rec;
}

/// Runs riemann_sum over an ascending n_list and removes the known
/// residual term by fitting sum(N) = L + c * rho(N) through the two
/// largest N, with rho the family's predicted residual. Because the
/// residual law is exact, c is 1 to rounding and L lands on the closed
/// form. A single-element list subtracts the predicted residual instead.
inline ConvergenceReport converge(const IntegralTarget& target,
                                  std::span<const long> n_list,
                                  precision_t bits) {
    if (n_list.empty()) throw invalid_parameter("converge: empty n_list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw invalid_parameter("converge: n_list must be ascending");

    ConvergenceReport report{target, {}, ExtReal(bits), ExtReal(bits)};
    report.records.reserve(n_list.size());
    for (long n : n_list) report.records.push_back(riemann_sum(target, n, bits));

    if (report.records.size() == 1) {
        const RiemannRecord& r = report.records.back();
        report.extrapolated_limit = r.sum_value - r.predicted_residual;
    } else {
        const RiemannRecord& r1 = report.records[report.records.size() - 2];
        const RiemannRecord& r2 = report.records.back();
        ExtReal c = (r2.sum_value - r1.sum_value) /
                    (r2.predicted_residual - r1.predicted_residual);
        report.extrapolated_limit = r2.sum_value - c * r2.predicted_residual;
    }
    report.extrapolation_error =
        abs(report.extrapolated_limit - target.closed_form);
    return report;
}

}  // namespace logtrig
