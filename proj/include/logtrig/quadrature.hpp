#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logtrig/ext_real.hpp"
#include "logtrig/lngamma.hpp"
#include "logtrig/summation.hpp"
#include "logtrig/targets.hpp"

namespace logtrig {

/// Result of a tanh-sinh integration.
struct QuadratureResult {
    ExtReal value;
    ExtReal error_estimate;  // absolute; difference of the last two levels
    std::size_t node_count = 0;
    int level = 0;
    /// Integer bound on |t| where the transformed weight underflows;
    /// level L uses at most 2^(L+1) * cutoff + 1 nodes.
    long cutoff = 0;
    /// Successive per-level estimates, for convergence diagnostics.
    std::vector<ExtReal> level_values;
};

/// An integrand on a finite interval, finite at every strict interior
/// point; endpooint behaviour may be (log-)singular.
struct IntegrandSpec {
    std::string label;
    ExtReal lower;
    ExtReal upper;
    bool singular_lower = false;
    bool singular_upper = false;
    std::function<ExtReal(const ExtReal&)> evaluate;
};

/// Refinement stalled before two successive levels agreed; carries the
/// best estimate reached.
class no_convergence : public std::runtime_error {
public:
    no_convergence(ExtReal best, ExtReal estimate, const std::string& what)
        : std::runtime_error(what),
          best_(std::move(best)),
          estimate_(std::move(estimate)) {}
    const ExtReal& best_value() const noexcept { return best_; }
    const ExtReal& error_estimate() const noexcept { return estimate_; }

private:
    ExtReal best_;
    ExtReal estimate_;
};

namespace detail {

inline constexpr int tanh_sinh_max_level = 12;

struct TanhSinhNode {
    ExtReal weight;  // (pi/2) cosh t / cosh^2((pi/2) sinh t)
    ExtReal delta;   // 1 - tanh((pi/2) sinh t), evaluated cancellation-free
};

inline TanhSinhNode tanh_sinh_node(const ExtReal& t, const ExtReal& half_pi) {
    ExtReal et = exp(t);
    ExtReal inv_et = 1L / et;
    ExtReal cosh_t = ldexp2(et + inv_et, -1);
    ExtReal s = half_pi * ldexp2(et - inv_et, -1);
    ExtReal es = exp(s);
    ExtReal inv_es = 1L / es;
    ExtReal cosh_s = ldexp2(es + inv_es, -1);
    return {half_pi * cosh_t / (cosh_s * cosh_s), inv_es / cosh_s};
}

}  // namespace detail

/// Double-exponential (tanh-sinh) quadrature on a finite interval.
///
/// Nodes are placed via x = lower + h*delta / upper - h*delta with
/// delta = 1 - |tanh((pi/2) sinh t)| computed from exponentials, so
/// abscissas cluster toward the endpoints without ever reaching them;
/// integrable logarithmic endpoint singularities are handled as-is.
/// Levels halve the step until two successive estimates agree within
/// abs_tol; the per-level node run stops once the transformed weight
/// underflows 2^(-bits-10).
inline QuadratureResult tanh_sinh_integrate(const IntegrandSpec& spec,
                                            const ExtReal& abs_tol,
                                            precision_t bits) {
    check_precision(bits);
    if (!spec.lower.is_finite() || !spec.upper.is_finite() ||
        !(spec.lower < spec.upper))
        throw invalid_parameter("tanh_sinh: interval must be finite");
    if (!(abs_tol > pow2(16 - bits, bits)))
        throw invalid_parameter("tanh_sinh: abs_tol must exceed 2^(16-bits)");

    const precision_t w = bits + 16;
    const ExtReal half_pi = ldexp2(const_pi(w), -1);
    const ExtReal h = ldexp2(spec.upper.rounded_to(w) - spec.lower.rounded_to(w), -1);
    const ExtReal center = ldexp2(spec.upper.rounded_to(w) + spec.lower.rounded_to(w), -1);
    const ExtReal weight_floor = pow2(-bits - 10, w);

    auto eval = [&](const ExtReal& x) {
        ExtReal fx = spec.evaluate(x);
        if (!fx.is_finite())
            throw bad_integrand(
                "tanh_sinh: non-finite integrand value inside (" +
                spec.label + ")");
        return fx;
    };

    QuadratureResult result;
    SumAccumulator weighted(w);  // sum of weight * f over all nodes so far

    // Center node t = 0: weight pi/2, x at the midpoint.
    weighted.add(half_pi * eval(center));
    result.node_count = 1;

    ExtReal previous;  // estimate of the previous level
    for (int level = 0; level <= detail::tanh_sinh_max_level; ++level) {
        // New abscissas this level: integers at level 0, odd multiples of
        // the halved step afterwards.
        const long stride = level == 0 ? 1 : 2;
        for (long k = 1;; k += stride) {
            ExtReal t = ldexp2(ExtReal::integer(k, w), -level);
            detail::TanhSinhNode node = detail::tanh_sinh_node(t, half_pi);
            if (node.weight < weight_floor) {
                if (level == 0) result.cutoff = k;
                break;
            }
            ExtReal offset = h * node.delta;
            ExtReal x_lo = spec.lower + offset;
            ExtReal x_hi = spec.upper - offset;
            // Offsets that round onto an endpoint contribute below the
            // weight floor; skip them rather than evaluate at the edge.
            if (x_lo > spec.lower) {
                weighted.add(node.weight * eval(x_lo));
                ++result.node_count;
            }
            if (x_hi < spec.upper) {
                weighted.add(node.weight * eval(x_hi));
                ++result.node_count;
            }
        }

        ExtReal estimate = h * ldexp2(weighted.total(), -level);
        result.level_values.push_back(estimate.rounded_to(bits));
        result.level = level;
        if (level > 0) {
            ExtReal diff = abs(estimate - previous);
            if (diff <= abs_tol.rounded_to(w)) {
                result.value = estimate.rounded_to(bits);
                result.error_estimate = diff.rounded_to(bits);
                return result;
            }
            if (level == detail::tanh_sinh_max_level)
                throw no_convergence(
                    estimate.rounded_to(bits), diff.rounded_to(bits),
                    "tanh_sinh: level cap reached without convergence (" +
                        spec.label + ")");
        }
        previous = estimate;
    }
    throw no_convergence(previous.rounded_to(bits), previous.rounded_to(bits),
                         "tanh_sinh: unreachable");
}

/// Splits an integrand at strictly interior, strictly ascending points.
/// The pieces cover the original interval exactly; each acquires a
/// (possibly singular) boundary at the split points.
inline std::vector<IntegrandSpec> split_at_interior_singularity(
    const IntegrandSpec& spec, std::span<const ExtReal> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] > spec.lower) || !(points[i] < spec.upper))
            throw invalid_split("split: points must be strictly interior");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw invalid_split("split: points must be strictly ascending");
    }
    std::vector<IntegrandSpec> parts;
    parts.reserve(points.size() + 1);
    ExtReal lo = spec.lower;
    bool lo_singular = spec.singular_lower;
    for (const ExtReal& pt : points) {
        parts.push_back({spec.label, lo, pt, lo_singular, true, spec.evaluate});
        lo = pt;
        lo_singular = true;
    }
    parts.push_back(
        {spec.label, lo, spec.upper, lo_singular, spec.singular_upper,
         spec.evaluate});
    return parts;
}

/// The registry integrands.
inline IntegrandSpec make_integrand(const IntegralTarget& target) {
    IntegrandSpec spec;
    spec.label = target_name(target.id);
    spec.lower = target.lower;
    spec.upper = target.upper;
    switch (target.id) {
        case IntegralTargetId::log_sin_0_pi:
            spec.singular_lower = spec.singular_upper = true;
            spec.evaluate = [](const ExtReal& x) { return log(sin(x)); };
            break;
        case IntegralTargetId::log_sin_0_halfpi:
            spec.singular_lower = true;
            spec.evaluate = [](const ExtReal& x) { return log(sin(x)); };
            break;
        case IntegralTargetId::log_cos_0_halfpi:
            spec.singular_upper = true;
            spec.evaluate = [](const ExtReal& x) { return log(cos(x)); };
            break;
        case IntegralTargetId::log_tan_0_halfpi:
            spec.singular_lower = spec.singular_upper = true;
            spec.evaluate = [](const ExtReal& x) { return log(tan(x)); };
            break;
        case IntegralTargetId::log_gamma_0_1:
            spec.singular_lower = true;
            spec.evaluate = [](const ExtReal& x) { return lngamma(x); };
            break;
        case IntegralTargetId::log_abs_sin_shifted: {
            ExtReal theta = *target.theta;
            spec.evaluate = [theta](const ExtReal& x) {
                const precision_t w = x.precision_bits() + 8;
                return log(abs(sin(const_pi(w) * x.rounded_to(w) +
                                   theta.rounded_to(w))))
                    .rounded_to(x.precision_bits());
            };
            break;
        }
    }
    return spec;
}

/// Locates the single interior zero of sin(pi x + theta) on (0, 1) by
/// bisection at working precision. Returns nothing when theta is a
/// multiple of pi (the zeros then sit on the boundary).
inline std::optional<ExtReal> shifted_interior_zero(const ExtReal& theta,
                                                    precision_t bits) {
    const precision_t w = bits + 16;
    const ExtReal pi = const_pi(w);
    auto g = [&](const ExtReal& x) { return sin(pi * x + theta.rounded_to(w)); };
    ExtReal lo(0.0, w);
    ExtReal hi(1.0, w);
    ExtReal g_lo = g(lo);  // sin(theta); g(1) = -sin(theta)
    if (g_lo.is_zero()) return std::nullopt;
    const int target_sign = -g_lo.sign();
    for (precision_t i = 0; i < w + 2; ++i) {
        ExtReal mid = ldexp2(lo + hi, -1);
        ExtReal gm = g(mid);
        if (gm.is_zero()) return mid;
        if (gm.sign() == target_sign)
            hi = mid;
        else
            lo = mid;
    }
    ExtReal zero = ldexp2(lo + hi, -1);
    if (!(zero > ExtReal(0.0, w)) || !(zero < ExtReal(1.0, w)))
        return std::nullopt;
    return zero;
}

struct OracleComparison {
    QuadratureResult quadrature;
    ExtReal deviation;  // |value - closed_form|
};

/// Integrates a registry target independently of the product identities
/// and reports the absolute deviation from its closed form. The shifted
/// log-sine integrand is split at the interior zero of its argument
/// before integration. Contract: deviation < 10 * abs_tol.
inline OracleComparison oracle_check(const IntegralTarget& target,
                                     const ExtReal& abs_tol,
                                     precision_t bits) {
    IntegrandSpec spec = make_integrand(target);
    std::vector<IntegrandSpec> pieces;
    if (target.id == IntegralTargetId::log_abs_sin_shifted) {
        if (auto zero = shifted_interior_zero(*target.theta, bits)) {
            std::vector<ExtReal> pts{zero->rounded_to(bits + 16)};
            pieces = split_at_interior_singularity(spec, pts);
        }
    }
    if (pieces.empty()) pieces.push_back(spec);

    QuadratureResult combined;
    ExtReal value(0.0, bits);
    ExtReal estimate(0.0, bits);
    for (const IntegrandSpec& piece : pieces) {
        QuadratureResult r = tanh_sinh_integrate(piece, abs_tol, bits);
        value += r.value;
        estimate += r.error_estimate;
        combined.node_count += r.node_count;
        combined.level = std::max(combined.level, r.level);
        combined.cutoff = std::max(combined.cutoff, r.cutoff);
    }
    combined.value = value;
    combined.error_estimate = estimate;
    return {std::move(combined),
            abs(value - target.closed_form.rounded_to(bits))};
}

}  // namespace logtrig
