#include <catch2/catch_amalgamated.hpp>

#include "logtrig/commands.hpp"
#include "logtrig/report.hpp"

using namespace logtrig;

TEST_CASE("digit counts follow the precision") {
    CHECK(report_digits(53) == 17);
    CHECK(report_digits(128) == 39);
    CHECK(report_digits(256) == 78);
}

TEST_CASE("status reflects row contracts") {
    ReportEnvelope env;
    env.command = "demo";
    ReportRow good;
    good.set("k", "v");
    env.results.push_back(good);
    env.finalize_status();
    CHECK(env.status == ReportStatus::ok);

    ReportRow bad;
    bad.set("k", "v");
    bad.pass = false;
    env.results.push_back(bad);
    env.finalize_status();
    CHECK(env.status == ReportStatus::tolerance_exceeded);
}

TEST_CASE("csv escaping") {
    ReportEnvelope env;
    env.command = "demo";
    ReportRow row;
    row.set("a", "plain");
    row.set("b", "with,comma");
    row.set("c", "with\"quote");
    env.results.push_back(row);
    std::string csv = to_csv(env);
    CHECK(csv == "a,b,c,pass\nplain,\"with,comma\",\"with\"\"quote\",true\n");
}

TEST_CASE("json round trip is field-exact") {
    auto env = cmd_converge(IntegralTargetId::log_sin_0_pi, {100, 1000}, 128);
    std::string text = to_json_text(env);
    ReportEnvelope back = from_json_text(text);
    CHECK(equivalent(env, back));
    // Re-serialization reproduces the exact bytes.
    CHECK(to_json_text(back) == text);
}

TEST_CASE("json round trip across commands and precisions") {
    std::size_t fields_checked = 0;
    for (precision_t p : {53L, 128L, 256L}) {
        auto env = cmd_verify_identities({}, 40, std::nullopt, p);
        ReportEnvelope back = from_json_text(to_json_text(env));
        REQUIRE(back.results.size() == env.results.size());
        for (std::size_t i = 0; i < env.results.size(); ++i) {
            CHECK(back.results[i] == env.results[i]);
            fields_checked += env.results[i].fields.size();
        }
    }
    CHECK(fields_checked > 1000);  // property scale
}

TEST_CASE("reports are deterministic") {
    auto a = cmd_verify_identities({}, 30, std::nullopt, 128);
    auto b = cmd_verify_identities({}, 30, std::nullopt, 128);
    CHECK(equivalent(a, b));

    auto oa = cmd_oracle(IntegralTargetId::log_tan_0_halfpi, std::nullopt,
                         1e-10, 128);
    auto ob = cmd_oracle(IntegralTargetId::log_tan_0_halfpi, std::nullopt,
                         1e-10, 128);
    CHECK(equivalent(oa, ob));
}

TEST_CASE("verify-identities rows and ordering") {
    auto env = cmd_verify_identities({}, 10, std::nullopt, 128);
    // tan: N=1..10, sin/half/cos: 2..10, shifted: 1..10 -> 47 rows.
    CHECK(env.results.size() == 47);
    CHECK(env.status == ReportStatus::ok);
    // Sorted by family then N.
    CHECK(*env.results.front().find("family") == std::string("tan"));
    CHECK(*env.results.front().find("n") == std::string("1"));
    CHECK(*env.results.back().find("family") == std::string("shifted-sin"));
    CHECK(*env.results.back().find("n") == std::string("10"));
    // theta only on shifted rows.
    for (const auto& row : env.results) {
        const bool is_shifted = *row.find("family") == "shifted-sin";
        CHECK(row.find("theta")->empty() == !is_shifted);
    }
    CHECK_THROWS_AS(cmd_verify_identities({}, 1, std::nullopt, 128),
                    invalid_parameter);
}

TEST_CASE("converge envelope carries records plus extrapolation") {
    auto env = cmd_converge(IntegralTargetId::log_gamma_0_1, {}, 128);
    REQUIRE(env.results.size() == 5);  // default list + extrapolation
    CHECK(*env.results[0].find("kind") == std::string("record"));
    CHECK(*env.results[4].find("kind") == std::string("extrapolation"));
    CHECK(env.status == ReportStatus::ok);

    // Tangent target resolves the default list to odd M.
    auto tan_env = cmd_converge(IntegralTargetId::log_tan_0_halfpi, {}, 128);
    CHECK(*tan_env.results[0].find("n") == std::string("101"));
    CHECK(tan_env.status == ReportStatus::ok);

    // Explicit even M is rejected.
    CHECK_THROWS_AS(
        cmd_converge(IntegralTargetId::log_tan_0_halfpi, {4}, 128),
        invalid_parameter);
}

TEST_CASE("oracle envelope validates theta") {
    CHECK_THROWS_AS(cmd_oracle(IntegralTargetId::log_abs_sin_shifted,
                               std::nullopt, 1e-10, 128),
                    invalid_parameter);
    CHECK_THROWS_AS(cmd_oracle(IntegralTargetId::log_sin_0_pi,
                               ExtReal(0.3, 128), 1e-10, 128),
                    invalid_parameter);
    auto env = cmd_oracle(IntegralTargetId::log_abs_sin_shifted,
                          ExtReal(0.3, 128), 1e-8, 128);
    CHECK(env.status == ReportStatus::ok);
    CHECK(env.results.size() == 1);
}

TEST_CASE("report-all sections hold together") {
    auto env = cmd_report_all(20, std::nullopt, 1e-10, 128);
    std::size_t identities = 0, records = 0, oracle_rows = 0, cross = 0;
    for (const auto& row : env.results) {
        const std::string& section = *row.find("section");
        if (section == "identities") ++identities;
        else if (section == "converge") ++records;
        else if (section == "oracle") ++oracle_rows;
        else if (section == "cross-check") ++cross;
        CHECK(row.pass);
    }
    CHECK(identities == 3 * 19 + 2 * 20);
    CHECK(records == 5 * 5);
    CHECK(oracle_rows == 6);
    CHECK(cross == 5);
    CHECK(env.status == ReportStatus::ok);
}
