#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "logtrig/riemann.hpp"

using namespace logtrig;

namespace {
ExtReal ln_of(long n, precision_t p) { return log(ExtReal::integer(n, p)); }
}

TEST_CASE("log_sin_sum matches ln N - (N-1) ln 2") {
    // N=2: single term ln sin(pi/2) = 0.
    CHECK(log_sin_sum(2, 128).is_zero());

    // N=3 at 256 bits, both sides from constants.
    ExtReal lhs = log_sin_sum(3, 256);
    ExtReal rhs = ln_of(3, 256) - 2L * const_ln2(256);
    CHECK(abs(lhs - rhs) < pow2(-240, 64));
    CHECK(lhs.to_double() == rhs.to_double());
    CHECK(lhs.to_double() == Catch::Approx(-0.2876820724517809).epsilon(1e-15));

    // Larger N at working precision.
    for (long N : {100L, 4097L, 1000000L}) {
        ExtReal s = log_sin_sum(N, 128);
        ExtReal exact = ln_of(N, 128) - (N - 1) * const_ln2(128);
        CHECK(abs(s - exact) / abs(exact) < pow2(30 - 128, 64));
    }

    CHECK_THROWS_AS(log_sin_sum(1, 128), invalid_parameter);
}

TEST_CASE("gamma reflection sum and its exact value") {
    // N=3: 2 ln(2 pi) - ln 3, both sides at 256 bits.
    ExtReal lhs = gamma_reflection_sum(3, 256);
    ExtReal two_pi = ldexp2(const_pi(256), 1);
    ExtReal rhs = 2L * log(two_pi) - ln_of(3, 256);
    CHECK(abs(lhs - rhs) < pow2(-240, 64));

    CHECK_THROWS_AS(gamma_reflection_sum(2, 128), invalid_parameter);

    ExtReal big = gamma_reflection_sum(10000, 128);
    ExtReal big_exact =
        (10000L - 1L) * log(ldexp2(const_pi(128), 1)) - ln_of(10000, 128);
    CHECK(abs(big - big_exact) / big_exact < pow2(30 - 128, 64));
}

TEST_CASE("gamma reflection terms pair exactly") {
    const precision_t p = 128;
    const ExtReal pi = const_pi(p);
    const long N = 1000;
    for (long n : {1L, 17L, 499L}) {
        ExtReal a = log(pi / sin_pi_rational(n, N, p));
        ExtReal b = log(pi / sin_pi_rational(N - n, N, p));
        CHECK(a == b);
    }
}

TEST_CASE("lngamma route agrees with the sine route") {
    for (long N : {3L, 17L, 200L}) {
        const precision_t p = 128;
        ExtReal via_sin = gamma_reflection_sum(N, p);
        ExtReal via_lngamma = gamma_reflection_sum_via_lngamma(N, p);
        CHECK(abs(via_sin - via_lngamma) / via_sin < pow2(24 - p, 64));
    }
}

TEST_CASE("riemann_sum observed error equals the residual formula") {
    const precision_t p = 256;

    auto full = make_target(IntegralTargetId::log_sin_0_pi, p);
    RiemannRecord r = riemann_sum(full, 10000, p);
    // Independent evaluation of pi ln(10^4)/9999 at 320 bits.
    ExtReal formula = const_pi(320) * ln_of(10000, 320) / 9999L;
    CHECK(abs(r.observed_error.rounded_to(320) - formula) < pow2(-230, 64));
    CHECK(abs(r.observed_error - r.predicted_residual) < pow2(-230, 64));
    CHECK(r.observed_error.to_double() ==
          Catch::Approx(2.8938031e-3).epsilon(1e-6));

    // Tangent family, M=5: the error is pi ln 5 / 10.
    auto tan_target = make_target(IntegralTargetId::log_tan_0_halfpi, p);
    RiemannRecord rt = riemann_sum(tan_target, 5, p);
    ExtReal tan_formula = const_pi(320) * ln_of(5, 320) / 10L;
    CHECK(abs(rt.observed_error.rounded_to(320) - tan_formula) < pow2(-240, 64));
    CHECK(rt.observed_error.to_double() == Catch::Approx(0.50561).epsilon(1e-4));
    // Direct check of the scaled sum itself for M=5.
    ExtReal direct = (log(tan(const_pi(320) / 5L)) +
                      log(tan(const_pi(320) * 2L / 5L))) *
                     const_pi(320) / 5L;
    CHECK(abs(rt.sum_value.rounded_to(320) - direct) < pow2(-240, 64));

    // Gamma family, N=1000: error is -ln(1000)/1998.
    auto gamma_target = make_target(IntegralTargetId::log_gamma_0_1, p);
    RiemannRecord rg = riemann_sum(gamma_target, 1000, p);
    ExtReal gamma_formula = -ln_of(1000, 320) / 1998L;
    CHECK(abs(rg.observed_error.rounded_to(320) - gamma_formula) < pow2(-240, 64));
    CHECK(rg.observed_error.to_double() ==
          Catch::Approx(-3.4573346e-3).epsilon(1e-6));
}

TEST_CASE("riemann_sum parameter validation") {
    const precision_t p = 128;
    auto tan_target = make_target(IntegralTargetId::log_tan_0_halfpi, p);
    CHECK_THROWS_AS(riemann_sum(tan_target, 4, p), invalid_parameter);
    CHECK_THROWS_AS(riemann_sum(tan_target, 1000, p), invalid_parameter);
    auto full = make_target(IntegralTargetId::log_sin_0_pi, p);
    CHECK_THROWS_AS(riemann_sum(full, 2, p), invalid_parameter);
    auto shifted = make_target(IntegralTargetId::log_abs_sin_shifted, p,
                               ExtReal(1.0, p));
    CHECK_THROWS_AS(riemann_sum(shifted, 100, p), invalid_parameter);
}

TEST_CASE("converge recovers the closed forms") {
    const precision_t p = 128;
    const std::vector<long> sine_list{100, 1000, 10000, 100000};

    auto full = make_target(IntegralTargetId::log_sin_0_pi, p);
    auto report = converge(full, sine_list, p);
    CHECK(report.extrapolation_error < ExtReal(1e-9, p));
    CHECK(report.extrapolated_limit.to_double() ==
          Catch::Approx(-2.177586090303602).epsilon(1e-12));

    const std::vector<long> decade_list{100, 1000, 10000, 100000, 1000000};
    auto wide = converge(full, decade_list, p);
    CHECK(wide.extrapolation_error < ExtReal(1e-9, p));

    const std::vector<long> tan_list{101, 1001, 10001};
    auto tan_target = make_target(IntegralTargetId::log_tan_0_halfpi, p);
    auto tan_report = converge(tan_target, tan_list, p);
    CHECK(abs(tan_report.extrapolated_limit) < ExtReal(1e-8, p));

    // Single record: the predicted residual is simply subtracted.
    auto cos_target = make_target(IntegralTargetId::log_cos_0_halfpi, p);
    const std::vector<long> single{1000};
    auto cos_report = converge(cos_target, single, p);
    REQUIRE(cos_report.records.size() == 1);
    ExtReal expect = ldexp2(const_pi(192), -1) * ln_of(1000, 192) / 999L;
    ExtReal got = cos_report.records[0].observed_error;
    CHECK(abs(got.rounded_to(192) - expect) / expect < pow2(30 - p, 64));
    CHECK(cos_report.extrapolation_error < ExtReal(1e-9, p));

    CHECK_THROWS_AS(converge(full, std::vector<long>{}, p), invalid_parameter);
    CHECK_THROWS_AS(converge(full, std::vector<long>{100, 100}, p),
                    invalid_parameter);
}

TEST_CASE("half-range sums stitch into the full-range sum for even N") {
    const precision_t p = 128;
    for (long N : {100L, 1000L, 4096L}) {
        auto sin_half =
            riemann_sum(make_target(IntegralTargetId::log_sin_0_halfpi, p), N, p);
        auto cos_half =
            riemann_sum(make_target(IntegralTargetId::log_cos_0_halfpi, p), N, p);
        auto full =
            riemann_sum(make_target(IntegralTargetId::log_sin_0_pi, p), N, p);
        ExtReal gap =
            abs(sin_half.sum_value + cos_half.sum_value - full.sum_value);
        // Term-level ulp noise only: every factor is shared bitwise.
        CHECK(gap < pow2(-p + 24, 64) * N);
    }
}

TEST_CASE("registry closed forms are consistent") {
    const precision_t p = 128;
    auto sin_half = make_target(IntegralTargetId::log_sin_0_halfpi, p);
    auto cos_half = make_target(IntegralTargetId::log_cos_0_halfpi, p);
    auto tan_t = make_target(IntegralTargetId::log_tan_0_halfpi, p);
    CHECK((sin_half.closed_form - cos_half.closed_form).is_zero());
    CHECK(tan_t.closed_form.is_zero());
    CHECK(make_target(IntegralTargetId::log_sin_0_pi, p)
              .closed_form.to_double() == -2.177586090303602);
    CHECK(sin_half.closed_form.to_double() == -1.088793045151801);
    CHECK(make_target(IntegralTargetId::log_gamma_0_1, p)
              .closed_form.to_double() ==
          Catch::Approx(0.9189385332046727).epsilon(1e-15));
    CHECK_THROWS_AS(make_target(IntegralTargetId::log_abs_sin_shifted, p),
                    invalid_parameter);
    CHECK_THROWS_AS(
        make_target(IntegralTargetId::log_sin_0_pi, p, ExtReal(1.0, p)),
        invalid_parameter);
}

TEST_CASE("predicted residual decreases and the error vanishes") {
    const precision_t p = 128;
    auto full = make_target(IntegralTargetId::log_sin_0_pi, p);
    const std::vector<long> ns{4, 5, 10, 100, 1000, 10000};
    auto report = converge(full, ns, p);
    for (std::size_t i = 1; i < report.records.size(); ++i)
        CHECK(report.records[i].predicted_residual <
              report.records[i - 1].predicted_residual);

    // Every family's observed error at N = 10^6 is below 1e-4.
    for (IntegralTargetId id : product_based_targets) {
        auto target = make_target(id, p);
        const long n = id == IntegralTargetId::log_tan_0_halfpi ? 1000001
                                                                : 1000000;
        auto rec = riemann_sum(target, n, p);
        CHECK(abs(rec.observed_error) < ExtReal(1e-4, p));
    }
}
