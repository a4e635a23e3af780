#pragma once

#include <array>
#include <optional>
#include <string>

#include "logtrig/ext_real.hpp"

namespace logtrig {

/// The definite integrals the library evaluates and cross-checks:
///   log_sin_0_pi          int_0^pi    ln sin t dt            = -pi ln 2
///   log_sin_0_halfpi      int_0^pi/2  ln sin t dt            = -(pi/2) ln 2
///   log_cos_0_halfpi      int_0^pi/2  ln cos t dt            = -(pi/2) ln 2
///   log_tan_0_halfpi      int_0^pi/2  ln tan t dt            = 0
///   log_gamma_0_1         int_0^1     ln Gamma(x) dx         = ln sqrt(2 pi)
///   log_abs_sin_shifted   int_0^1     ln|sin(pi x+theta)| dx = -ln 2
enum class IntegralTargetId {
    log_sin_0_pi,
    log_sin_0_halfpi,
    log_cos_0_halfpi,
    log_tan_0_halfpi,
    log_gamma_0_1,
    log_abs_sin_shifted,
};

inline constexpr IntegralTargetId all_integral_targets[] = {
    IntegralTargetId::log_sin_0_pi,      IntegralTargetId::log_sin_0_halfpi,
    IntegralTargetId::log_cos_0_halfpi,  IntegralTargetId::log_tan_0_halfpi,
    IntegralTargetId::log_gamma_0_1,     IntegralTargetId::log_abs_sin_shifted,
};

/// The targets whose value the product identities reach (all but the
/// shifted-sine integral, which is verified by quadrature only).
inline constexpr IntegralTargetId product_based_targets[] = {
    IntegralTargetId::log_sin_0_pi,     IntegralTargetId::log_sin_0_halfpi,
    IntegralTargetId::log_cos_0_halfpi, IntegralTargetId::log_tan_0_halfpi,
    IntegralTargetId::log_gamma_0_1,
};

inline const char* target_name(IntegralTargetId id) {
    switch (id) {
        case IntegralTargetId::log_sin_0_pi: return "log-sin-0-pi";
        case IntegralTargetId::log_sin_0_halfpi: return "log-sin-0-halfpi";
        case IntegralTargetId::log_cos_0_halfpi: return "log-cos-0-halfpi";
        case IntegralTargetId::log_tan_0_halfpi: return "log-tan-0-halfpi";
        case IntegralTargetId::log_gamma_0_1: return "log-gamma-0-1";
        case IntegralTargetId::log_abs_sin_shifted: return "log-abs-sin-shifted";
    }
    return "?";
}

inline std::optional<IntegralTargetId> target_from_name(const std::string& s) {
    for (IntegralTargetId id : all_integral_targets)
        if (s == target_name(id)) return id;
    return std::nullopt;
}

struct IntegralTarget {
    IntegralTargetId id;
    ExtReal lower;
    ExtReal upper;
    ExtReal closed_form;
    std::optional<ExtReal> theta;  // log_abs_sin_shifted only
};

/// Builds a registry entry with interval and closed form at `bits`.
/// theta is required exactly for log_abs_sin_shifted.
inline IntegralTarget make_target(IntegralTargetId id, precision_t bits,
                                  std::optional<ExtReal> theta = {}) {
    check_precision(bits);
    const bool wants_theta = id == IntegralTargetId::log_abs_sin_shifted;
    if (wants_theta != theta.has_value())
        throw invalid_parameter(
            "make_target: theta is required exactly for log-abs-sin-shifted");

    const ExtReal zero(0.0, bits);
    const ExtReal pi = const_pi(bits);
    const ExtReal half_pi = ldexp2(pi, -1);
    const ExtReal minus_half_pi_ln2 = -ldexp2(pi * const_ln2(bits), -1);

    switch (id) {
        case IntegralTargetId::log_sin_0_pi:
            return {id, zero, pi, -(pi * const_ln2(bits)), {}};
        case IntegralTargetId::log_sin_0_halfpi:
            return {id, zero, half_pi, minus_half_pi_ln2, {}};
        case IntegralTargetId::log_cos_0_halfpi:
            return {id, zero, half_pi, minus_half_pi_ln2, {}};
        case IntegralTargetId::log_tan_0_halfpi:
            return {id, zero, half_pi, zero, {}};
        case IntegralTargetId::log_gamma_0_1:
            return {id, zero, ExtReal(1.0, bits),
                    ldexp2(log(ldexp2(const_pi(bits + 8), 1)), -1).rounded_to(bits),
                    {}};
        case IntegralTargetId::log_abs_sin_shifted:
            return {id, zero, ExtReal(1.0, bits), -const_ln2(bits),
                    std::move(theta)};
    }
    throw invalid_parameter("make_target: unknown target");
}

}  // namespace logtrig
