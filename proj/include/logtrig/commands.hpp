#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "logtrig/identities.hpp"
#include "logtrig/quadrature.hpp"
#include "logtrig/report.hpp"
#include "logtrig/riemann.hpp"
#include "logtrig/targets.hpp"

namespace logtrig {

inline constexpr long default_n_list[] = {100, 1000, 10000, 100000};
inline constexpr long default_n_max_verify = 100;
inline constexpr long default_n_max_report = 1000;
inline constexpr double default_abs_tol = 1e-10;
/// theta used for shifted-sine rows when the caller does not pass one
/// (the oracle command always requires an explicit theta).
inline constexpr const char* default_theta_literal = "0.7";

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline ExtReal resolve_theta(const std::optional<ExtReal>& theta,
                             precision_t bits) {
    if (theta) return theta->rounded_to(std::max(bits, theta->precision_bits()));
    return ExtReal::from_string(default_theta_literal, bits);
}

inline std::string join_longs(std::span<const long> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

/// The tangent family needs odd M; when the caller relies on the default
/// n_list, shift each default entry up by one. Explicit even values are
/// rejected by riemann_sum instead.
inline std::vector<long> resolve_n_list(IntegralTargetId id,
                                        std::span<const long> user_list) {
    std::vector<long> ns(user_list.begin(), user_list.end());
    if (ns.empty()) {
        ns.assign(std::begin(default_n_list), std::end(default_n_list));
        if (id == IntegralTargetId::log_tan_0_halfpi)
            for (long& n : ns) ++n;
    }
    return ns;
}

/// Magnitude of the largest scaled summand of the target's Riemann sum;
/// the record contract is |observed - predicted| < 2^(24-p) N max_term.
inline ExtReal record_max_term(IntegralTargetId id, long n, precision_t bits) {
    const auto den = static_cast<unsigned long long>(n);
    switch (id) {
        case IntegralTargetId::log_sin_0_pi:
        case IntegralTargetId::log_sin_0_halfpi:
        case IntegralTargetId::log_cos_0_halfpi:
            return abs(log(sin_pi_rational(1, den, bits))) * const_pi(bits) /
                   (n - 1);
        case IntegralTargetId::log_tan_0_halfpi:
            return abs(log(tan(const_pi(bits + 8) / n))).rounded_to(bits) *
                   const_pi(bits) / n;
        case IntegralTargetId::log_gamma_0_1:
            return ldexp2(
                abs(log(const_pi(bits) / sin_pi_rational(1, den, bits))) /
                    (n - 1),
                -1);
        case IntegralTargetId::log_abs_sin_shifted: break;
    }
    throw invalid_parameter("record_max_term: no Riemann family");
}

inline long family_rank(IdentityFamily f) {
    for (std::size_t i = 0; i < std::size(all_identity_families); ++i)
        if (all_identity_families[i] == f) return static_cast<long>(i);
    return -1;
}

inline long identity_min_n(IdentityFamily f) {
    return (f == IdentityFamily::tan_product ||
            f == IdentityFamily::shifted_sin_product)
               ? 1
               : 2;
}

inline void append_identity_rows(std::vector<ReportRow>& rows,
                                 std::span<const IdentityFamily> families,
                                 long n_max, const ExtReal& theta,
                                 precision_t bits,
                                 const std::string& section) {
    const std::string theta_str = format_number(theta, bits);
    for (long n = 1; n <= n_max; ++n) {
        std::vector<IdentityFamily> here;
        for (IdentityFamily f : families)
            if (n >= identity_min_n(f)) here.push_back(f);
        if (here.empty()) continue;
        auto checks = check_identities_at(n, here, theta, bits);
        const ExtReal threshold = pow2(20 - bits, bits) * n;
        for (const auto& c : checks) {
            ReportRow row;
            if (!section.empty()) row.set("section", section);
            row.set("family", family_name(c.id_case.family));
            row.set("n", std::to_string(n));
            row.set("theta", c.id_case.theta ? theta_str : "");
            row.set("value", format_number(c.computed_product, bits));
            row.set("closed_form", format_number(c.closed_form, bits));
            row.set("residual", format_number(c.relative_residual, bits));
            row.set("threshold", format_number(threshold, bits));
            row.pass = c.relative_residual < threshold;
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ReportRow& a, const ReportRow& b) {
                         const std::string* fa = a.find("family");
                         const std::string* fb = b.find("family");
                         if (!fa || !fb) return false;
                         long ra = family_rank(*family_from_name(*fa));
                         long rb = family_rank(*family_from_name(*fb));
                         if (ra != rb) return ra < rb;
                         return std::stol(*a.find("n")) < std::stol(*b.find("n"));
                     });
}

inline void append_converge_rows(std::vector<ReportRow>& rows,
                                 const ConvergenceReport& report,
                                 precision_t bits,
                                 const std::string& section) {
    const char* name = target_name(report.target.id);
    for (const RiemannRecord& rec : report.records) {
        ReportRow row;
        if (!section.empty()) row.set("section", section);
        row.set("target", name);
        row.set("kind", "record");
        row.set("n", std::to_string(rec.n_param));
        row.set("value", format_number(rec.sum_value, bits));
        row.set("closed_form", format_number(report.target.closed_form, bits));
        row.set("predicted_residual",
                format_number(rec.predicted_residual, bits));
        row.set("observed_error", format_number(rec.observed_error, bits));
        ExtReal tol = pow2(24 - bits, bits) * rec.n_param *
                      record_max_term(report.target.id, rec.n_param, bits);
        row.pass = abs(rec.observed_error - rec.predicted_residual) < tol;
        rows.push_back(std::move(row));
    }
    ReportRow ex;
    if (!section.empty()) ex.set("section", section);
    ex.set("target", name);
    ex.set("kind", "extrapolation");
    ex.set("n", "");
    ex.set("value", format_number(report.extrapolated_limit, bits));
    ex.set("closed_form", format_number(report.target.closed_form, bits));
    ex.set("predicted_residual", "");
    ex.set("observed_error",
           format_number(report.extrapolated_limit - report.target.closed_form,
                         bits));
    ex.pass = report.extrapolation_error < ExtReal(1e-9, bits);
    rows.push_back(std::move(ex));
}

inline ReportRow oracle_row(const IntegralTarget& target,
                            const OracleComparison& cmp, const ExtReal& abs_tol,
                            precision_t bits, const std::string& section) {
    ReportRow row;
    if (!section.empty()) row.set("section", section);
    row.set("target", target_name(target.id));
    row.set("theta",
            target.theta ? format_number(*target.theta, bits) : "");
    row.set("value", format_number(cmp.quadrature.value, bits));
    row.set("closed_form", format_number(target.closed_form, bits));
    row.set("error_estimate",
            format_number(cmp.quadrature.error_estimate, bits));
    row.set("deviation", format_number(cmp.deviation, bits));
    row.set("node_count", std::to_string(cmp.quadrature.node_count));
    row.set("level", std::to_string(cmp.quadrature.level));
    row.pass = cmp.deviation < abs_tol * 10L;
    return row;
}

}  // namespace detail

/// Residual verification of the product identities, one row per
/// (family, N). families empty means all five; N runs from each family's
/// domain minimum up to n_max.
inline ReportEnvelope cmd_verify_identities(
    std::vector<IdentityFamily> families, long n_max,
    std::optional<ExtReal> theta, precision_t bits) {
    detail::Stopwatch watch;
    check_precision(bits);
    if (n_max < 2)
        throw invalid_parameter("verify-identities: n_max must be >= 2");
    if (families.empty())
        families.assign(std::begin(all_identity_families),
                        std::end(all_identity_families));
    const ExtReal th = detail::resolve_theta(theta, bits);

    ReportEnvelope env;
    env.command = "verify-identities";
    {
        std::string fams;
        for (std::size_t i = 0; i < families.size(); ++i) {
            if (i) fams += ',';
            fams += family_name(families[i]);
        }
        env.set_parameter("families", fams);
    }
    env.set_parameter("n_max", std::to_string(n_max));
    env.set_parameter("theta", format_number(th, bits));
    env.set_parameter("precision_bits", std::to_string(bits));
    detail::append_identity_rows(env.results, families, n_max, th, bits, "");
    env.finalize_status();
    env.timing_ms = watch.elapsed_ms();
    return env;
}

/// Riemann-sum records over n_list (default 100,1000,10000,100000; the
/// tangent family's default is shifted to odd M) plus the two-point
/// extrapolation row.
inline ReportEnvelope cmd_converge(IntegralTargetId target,
                                   std::vector<long> n_list,
                                   precision_t bits) {
    detail::Stopwatch watch;
    check_precision(bits);
    std::vector<long> ns = detail::resolve_n_list(target, n_list);
    auto reg = make_target(target, bits);
    auto report = converge(reg, ns, bits);

    ReportEnvelope env;
    env.command = "converge";
    env.set_parameter("target", target_name(target));
    env.set_parameter("n_list", detail::join_longs(ns));
    env.set_parameter("precision_bits", std::to_string(bits));
    detail::append_converge_rows(env.results, report, bits, "");
    env.finalize_status();
    env.timing_ms = watch.elapsed_ms();
    return env;
}

/// Independent quadrature of one registry target. theta is required
/// exactly for log-abs-sin-shifted.
inline ReportEnvelope cmd_oracle(IntegralTargetId target,
                                 std::optional<ExtReal> theta, double abs_tol,
                                 precision_t bits) {
    detail::Stopwatch watch;
    check_precision(bits);
    const bool wants_theta = target == IntegralTargetId::log_abs_sin_shifted;
    if (wants_theta != theta.has_value())
        throw invalid_parameter(
            "oracle: theta is required exactly for log-abs-sin-shifted");
    const ExtReal tol(abs_tol, bits);
    auto reg = make_target(target, bits, std::move(theta));
    auto cmp = oracle_check(reg, tol, bits);

    ReportEnvelope env;
    env.command = "oracle";
    env.set_parameter("target", target_name(target));
    if (reg.theta)
        env.set_parameter("theta", format_number(*reg.theta, bits));
    env.set_parameter("abs_tol", ExtReal(abs_tol, 64).to_string(17));
    env.set_parameter("precision_bits", std::to_string(bits));
    env.results.push_back(detail::oracle_row(reg, cmp, tol, bits, ""));
    env.finalize_status();
    env.timing_ms = watch.elapsed_ms();
    return env;
}

/// The full suite: identity residuals up to n_max (default 1000),
/// convergence of every product-based target on the default n_list, the
/// quadrature oracle on all six targets, and shortcut-vs-oracle
/// cross-checks, in one envelope.
inline ReportEnvelope cmd_report_all(long n_max, std::optional<ExtReal> theta,
                                     double abs_tol, precision_t bits) {
    detail::Stopwatch watch;
    check_precision(bits);
    if (n_max < 2) throw invalid_parameter("report-all: n_max must be >= 2");
    const ExtReal th = detail::resolve_theta(theta, bits);
    const ExtReal tol(abs_tol, bits);

    ReportEnvelope env;
    env.command = "report-all";
    env.set_parameter("n_max", std::to_string(n_max));
    env.set_parameter("theta", format_number(th, bits));
    env.set_parameter("abs_tol", ExtReal(abs_tol, 64).to_string(17));
    env.set_parameter("precision_bits", std::to_string(bits));

    std::vector<ReportRow> identity_rows;
    std::vector<IdentityFamily> families(std::begin(all_identity_families),
                                         std::end(all_identity_families));
    detail::append_identity_rows(identity_rows, families, n_max, th, bits,
                                 "identities");
    for (auto& r : identity_rows) env.results.push_back(std::move(r));

    std::vector<ExtReal> shortcut_limits;
    for (IntegralTargetId id : product_based_targets) {
        auto reg = make_target(id, bits);
        auto report = converge(reg, detail::resolve_n_list(id, {}), bits);
        shortcut_limits.push_back(report.extrapolated_limit);
        detail::append_converge_rows(env.results, report, bits, "converge");
    }

    std::vector<ExtReal> oracle_values;
    for (IntegralTargetId id : all_integral_targets) {
        auto reg = id == IntegralTargetId::log_abs_sin_shifted
                       ? make_target(id, bits, th)
                       : make_target(id, bits);
        auto cmp = oracle_check(reg, tol, bits);
        oracle_values.push_back(cmp.quadrature.value);
        env.results.push_back(detail::oracle_row(reg, cmp, tol, bits, "oracle"));
    }

    for (std::size_t i = 0; i < std::size(product_based_targets); ++i) {
        ReportRow row;
        row.set("section", "cross-check");
        row.set("target", target_name(product_based_targets[i]));
        row.set("value", format_number(oracle_values[i], bits));
        row.set("shortcut_limit", format_number(shortcut_limits[i], bits));
        ExtReal dev = abs(oracle_values[i] - shortcut_limits[i]);
        row.set("deviation", format_number(dev, bits));
        row.pass = dev < ExtReal(1e-8, bits);
        env.results.push_back(std::move(row));
    }

    env.finalize_status();
    env.timing_ms = watch.elapsed_ms();
    return env;
}

}  // namespace logtrig
