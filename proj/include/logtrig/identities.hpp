#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logtrig/ext_real.hpp"
#include "logtrig/summation.hpp"

namespace logtrig {

/// The verified product families:
///   tan_product          prod_{n=1..N}       tan(n pi/(2N+1))      = sqrt(2N+1)
///   sin_product          prod_{n=1..N-1}     sin(n pi/N)           = N/2^(N-1)
///   half_sin_sq_product  prod_{n=1..fl(N/2)} sin^2(n pi/N)         = N/2^(N-1)
///   cos_sq_product       prod_{n=1..fl(N/2)} cos^2(pi/2 - n pi/N)  = N/2^(N-1)
///   shifted_sin_product  prod_{n=0..N-1}     sin(n pi/N + theta)   = sin(N theta)/2^(N-1)
enum class IdentityFamily {
    tan_product,
    sin_product,
    half_sin_sq_product,
    cos_sq_product,
    shifted_sin_product,
};

inline constexpr IdentityFamily all_identity_families[] = {
    IdentityFamily::tan_product,          IdentityFamily::sin_product,
    IdentityFamily::half_sin_sq_product,  IdentityFamily::cos_sq_product,
    IdentityFamily::shifted_sin_product,
};

inline const char* family_name(IdentityFamily f) {
    switch (f) {
        case IdentityFamily::tan_product: return "tan";
        case IdentityFamily::sin_product: return "sin";
        case IdentityFamily::half_sin_sq_product: return "half-sin-sq";
        case IdentityFamily::cos_sq_product: return "cos-sq";
        case IdentityFamily::shifted_sin_product: return "shifted-sin";
    }
    return "?";
}

inline std::optional<IdentityFamily> family_from_name(const std::string& s) {
    for (IdentityFamily f : all_identity_families)
        if (s == family_name(f)) return f;
    return std::nullopt;
}

struct IdentityCase {
    IdentityFamily family;
    long n_param = 0;
    std::optional<ExtReal> theta;  // shifted_sin_product only
};

struct IdentityCheckResult {
    IdentityCase id_case;
    ExtReal computed_product;
    ExtReal closed_form;
    /// |computed - closed| / |closed|; absolute difference when the
    /// closed form is zero.
    ExtReal relative_residual;
};

namespace detail {

// Products longer than this are accumulated as exp(sum of logs); the
// closed form N/2^(N-1) leaves fixed-exponent formats around N ~ 1080,
// and log-space keeps the residual relative.
inline constexpr long direct_product_limit = 64;

/// sin(n pi/N) and, past the direct-product limit, its log, for
/// n = 1..floor(N/2). The reflection n <-> N-n reuses these entries
/// bit-for-bit (sin_pi_rational reduces both to the same fraction).
struct SinFactorTable {
    long n = 0;
    precision_t bits = 0;
    std::vector<ExtReal> value;      // value[k] = sin((k+1) pi / N)
    std::vector<ExtReal> log_value;  // filled only when N > direct limit
};

inline SinFactorTable make_sin_factor_table(long N, precision_t bits) {
    SinFactorTable t;
    t.n = N;
    t.bits = bits;
    const long half = N / 2;
    t.value.reserve(static_cast<std::size_t>(half));
    const bool with_logs = N > direct_product_limit;
    if (with_logs) t.log_value.reserve(static_cast<std::size_t>(half));
    for (long k = 1; k <= half; ++k) {
        t.value.push_back(sin_pi_rational(k, static_cast<unsigned long long>(N), bits));
        if (with_logs) t.log_value.push_back(log(t.value.back()));
    }
    return t;
}

inline const ExtReal& mirrored(const std::vector<ExtReal>& v, long n, long N) {
    const long k = n <= N / 2 ? n : N - n;
    return v[static_cast<std::size_t>(k - 1)];
}

inline ExtReal sin_product_from(const SinFactorTable& t) {
    const long N = t.n;
    if (N > direct_product_limit) {
        SumAccumulator acc(t.bits);
        for (long n = 1; n <= N - 1; ++n) acc.add(mirrored(t.log_value, n, N));
        return exp(acc.total());
    }
    ExtReal prod(1.0, t.bits);
    for (long n = 1; n <= N - 1; ++n) prod *= mirrored(t.value, n, N);
    return prod;
}

inline ExtReal half_sin_sq_product_from(const SinFactorTable& t) {
    const long N = t.n;
    if (N > direct_product_limit) {
        SumAccumulator acc(t.bits);
        for (long n = 1; n <= N / 2; ++n)
            acc.add(ldexp2(t.log_value[static_cast<std::size_t>(n - 1)], 1));
        return exp(acc.total());
    }
    ExtReal prod(1.0, t.bits);
    for (long n = 1; n <= N / 2; ++n) {
        const ExtReal& s = t.value[static_cast<std::size_t>(n - 1)];
        prod *= s * s;
    }
    return prod;
}

/// N / 2^(N-1), exact at any precision.
inline ExtReal product_closed_form(long N, precision_t bits) {
    return ldexp2(ExtReal::integer(N, bits), -(N - 1));
}

inline ExtReal residual_against(const ExtReal& computed,
                                const ExtReal& closed) {
    if (closed.is_zero()) return abs(computed - closed);
    return abs(computed - closed) / abs(closed);
}

}  // namespace detail

/// prod_{n=1..N} tan(n pi/(2N+1)); equals sqrt(2N+1).
inline ExtReal tan_product(long N, precision_t bits) {
    check_precision(bits);
    if (N < 1) throw invalid_parameter("tan_product: N must be >= 1");
    const unsigned long long den = 2 * static_cast<unsigned long long>(N) + 1;
    const ExtReal pi_w = const_pi(bits + 8);
    auto factor = [&](long n) {
        ExtReal t = pi_w * n / static_cast<long>(den);
        return tan(t);
    };
    if (N > detail::direct_product_limit) {
        SumAccumulator acc(bits);
        for (long n = 1; n <= N; ++n) acc.add(log(factor(n)).rounded_to(bits));
        return exp(acc.total());
    }
    ExtReal prod(1.0, bits);
    for (long n = 1; n <= N; ++n) prod *= factor(n).rounded_to(bits);
    return prod;
}

/// prod_{n=1..N-1} sin(n pi/N); equals N/2^(N-1). Requires N >= 2.
inline ExtReal sin_product(long N, precision_t bits) {
    check_precision(bits);
    if (N < 2) throw invalid_parameter("sin_product: N must be >= 2");
    return detail::sin_product_from(detail::make_sin_factor_table(N, bits));
}

/// prod_{n=1..floor(N/2)} sin^2(n pi/N); equals N/2^(N-1). Requires N >= 2.
inline ExtReal half_sin_sq_product(long N, precision_t bits) {
    check_precision(bits);
    if (N < 2)
        throw invalid_parameter("half_sin_sq_product: N must be >= 2");
    return detail::half_sin_sq_product_from(
        detail::make_sin_factor_table(N, bits));
}

/// prod_{n=1..floor(N/2)} cos^2(pi/2 - n pi/N); equals N/2^(N-1).
/// Requires N >= 2. The complement rule maps each factor onto the
/// corresponding sine factor's canonical fraction, so the two products
/// agree bit-for-bit.
inline ExtReal cos_sq_product(long N, precision_t bits) {
    check_precision(bits);
    if (N < 2) throw invalid_parameter("cos_sq_product: N must be >= 2");
    return detail::half_sin_sq_product_from(
        detail::make_sin_factor_table(N, bits));
}

/// prod_{n=0..N-1} sin(n pi/N + theta); equals sin(N theta)/2^(N-1).
/// Requires N >= 1. Throws near_singular_product if any factor comes
/// within 2^(-bits/2) of zero.
inline ExtReal shifted_sin_product(long N, const ExtReal& theta,
                                   precision_t bits) {
    check_precision(bits);
    if (N < 1) throw invalid_parameter("shifted_sin_product: N must be >= 1");
    if (!theta.is_finite())
        throw invalid_parameter("shifted_sin_product: theta must be finite");
    const precision_t work = std::max(bits, theta.precision_bits()) + 8;
    const ExtReal pi_w = const_pi(work);
    const ExtReal guard = pow2(-bits / 2, bits);

    int sign = 1;
    const bool log_space = N > detail::direct_product_limit;
    SumAccumulator acc(bits);
    ExtReal prod(1.0, bits);
    for (long n = 0; n < N; ++n) {
        ExtReal f = sin(pi_w * n / N + theta);
        if (abs(f) < guard)
            throw near_singular_product(
                static_cast<std::size_t>(n),
                "shifted_sin_product: factor " + std::to_string(n) +
                    " within 2^(-precision/2) of zero");
        if (f.sign() < 0) sign = -sign;
        if (log_space)
            acc.add(log(abs(f)).rounded_to(bits));
        else
            prod *= f.rounded_to(bits);
    }
    if (!log_space) return prod;  // the direct product carries the sign
    ExtReal result = exp(acc.total());
    return sign < 0 ? -result : result;
}

/// Evaluates one identity instance and its residual against the closed
/// form. Residual contract: below 2^(20 - bits) * N for every family.
inline IdentityCheckResult check_identity(const IdentityCase& c,
                                          precision_t bits) {
    check_precision(bits);
    ExtReal computed;
    ExtReal closed;
    const bool wants_theta =
        c.family == IdentityFamily::shifted_sin_product;
    if (wants_theta != c.theta.has_value())
        throw invalid_parameter(
            "check_identity: theta is required exactly for shifted-sin");
    switch (c.family) {
        case IdentityFamily::tan_product:
            computed = tan_product(c.n_param, bits);
            closed = sqrt(ExtReal::integer(2 * c.n_param + 1, bits));
            break;
        case IdentityFamily::sin_product:
            computed = sin_product(c.n_param, bits);
            closed = detail::product_closed_form(c.n_param, bits);
            break;
        case IdentityFamily::half_sin_sq_product:
            computed = half_sin_sq_product(c.n_param, bits);
            closed = detail::product_closed_form(c.n_param, bits);
            break;
        case IdentityFamily::cos_sq_product:
            computed = cos_sq_product(c.n_param, bits);
            closed = detail::product_closed_form(c.n_param, bits);
            break;
        case IdentityFamily::shifted_sin_product: {
            computed = shifted_sin_product(c.n_param, *c.theta, bits);
            const precision_t work =
                std::max(bits, c.theta->precision_bits()) + 8;
            ExtReal s = sin(c.theta->rounded_to(work) * c.n_param);
            closed = ldexp2(s, -(c.n_param - 1)).rounded_to(bits);
            break;
        }
    }
    return IdentityCheckResult{c, computed, closed,
                               detail::residual_against(computed, closed)};
}

/// Batch form of check_identity for one N across several families.
/// The sine-based families all sample sin(n pi/N) on the same grid, so
/// the factor table is built once and shared; each row is bit-identical
/// to the corresponding single-case call.
inline std::vector<IdentityCheckResult> check_identities_at(
    long N, std::span<const IdentityFamily> families,
    const std::optional<ExtReal>& theta, precision_t bits) {
    check_precision(bits);
    std::optional<detail::SinFactorTable> table;
    auto sine_table = [&]() -> const detail::SinFactorTable& {
        if (!table) table = detail::make_sin_factor_table(N, bits);
        return *table;
    };
    std::vector<IdentityCheckResult> rows;
    rows.reserve(families.size());
    for (IdentityFamily f : families) {
        switch (f) {
            case IdentityFamily::sin_product: {
                if (N < 2)
                    throw invalid_parameter("sin_product: N must be >= 2");
                ExtReal computed = detail::sin_product_from(sine_table());
                ExtReal closed = detail::product_closed_form(N, bits);
                rows.push_back({IdentityCase{f, N, std::nullopt}, computed,
                                closed,
                                detail::residual_against(computed, closed)});
                break;
            }
            case IdentityFamily::half_sin_sq_product:
            case IdentityFamily::cos_sq_product: {
                if (N < 2)
                    throw invalid_parameter(
                        "half/cos product: N must be >= 2");
                ExtReal computed =
                    detail::half_sin_sq_product_from(sine_table());
                ExtReal closed = detail::product_closed_form(N, bits);
                rows.push_back({IdentityCase{f, N, std::nullopt}, computed,
                                closed,
                                detail::residual_against(computed, closed)});
                break;
            }
            default: {
                IdentityCase c{f, N, std::nullopt};
                if (f == IdentityFamily::shifted_sin_product) c.theta = theta;
                rows.push_back(check_identity(c, bits));
                break;
            }
        }
    }
    return rows;
}

}  // namespace logtrig
