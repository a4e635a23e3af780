#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "logtrig/report.hpp"

namespace {

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(LOGTRIG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, std::move(out)};
}

}  // namespace

TEST_CASE("cli: ok runs exit 0 and emit parseable json") {
    auto r = run_cli("oracle --target log-sin-0-pi --format json");
    CHECK(r.exit_code == 0);
    auto env = logtrig::from_json_text(r.out);
    CHECK(env.command == "oracle");
    CHECK(env.status == logtrig::ReportStatus::ok);
    REQUIRE(env.results.size() == 1);
    CHECK(env.results[0].pass);
    // Exit 0 iff status ok.
    CHECK((r.exit_code == 0) == (env.status == logtrig::ReportStatus::ok));
}

TEST_CASE("cli: json output reparses and reserializes byte-identically") {
    auto r = run_cli(
        "converge --target log-gamma-0-1 --n-list 100,1000 --format json");
    REQUIRE(r.exit_code == 0);
    auto env = logtrig::from_json_text(r.out);
    CHECK(logtrig::to_json_text(env) == r.out);
}

TEST_CASE("cli: identical invocations differ only in timing") {
    const std::string args =
        "verify-identities --families sin,cos-sq --n-max 40 --format json";
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(equivalent(logtrig::from_json_text(a.out),
                     logtrig::from_json_text(b.out)));
}

TEST_CASE("cli: default verify-identities covers every family") {
    auto r = run_cli("verify-identities --format json");
    REQUIRE(r.exit_code == 0);
    auto env = logtrig::from_json_text(r.out);
    // n_max defaults to 100: tan and shifted from N=1, the rest from N=2.
    CHECK(env.results.size() == 100 + 99 + 99 + 99 + 100);
    CHECK(env.status == logtrig::ReportStatus::ok);
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run_cli("converge --target nope").exit_code == 2);
    CHECK(run_cli("converge --target log-tan-0-halfpi --n-list 4").exit_code == 2);
    CHECK(run_cli("oracle --target log-abs-sin-shifted").exit_code == 2);
    CHECK(run_cli("verify-identities --n-max 1").exit_code == 2);
    CHECK(run_cli("verify-identities --families sin,bogus").exit_code == 2);
    CHECK(run_cli("oracle --target log-sin-0-pi --format yaml").exit_code == 2);
    CHECK(run_cli("converge --target log-sin-0-pi --precision-bits 40")
              .exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("cli: numeric errors exit 3") {
    // theta = 0 puts the n = 0 factor of the shifted product exactly on a
    // zero of sine, tripping the near-singular guard.
    auto r = run_cli(
        "verify-identities --families shifted-sin --theta 0 --n-max 5");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli: csv has a header and LF endings") {
    auto r = run_cli(
        "verify-identities --families sin --n-max 4 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("family,n,theta,value,closed_form,residual,threshold,"
                      "pass\n", 0) == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    // Header + N=2,3,4.
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

TEST_CASE("cli: shifted oracle with theta") {
    auto r = run_cli(
        "oracle --target log-abs-sin-shifted --theta 1.0 --format json");
    REQUIRE(r.exit_code == 0);
    auto env = logtrig::from_json_text(r.out);
    REQUIRE(env.results.size() == 1);
    // -ln 2 to the digits shown.
    const std::string& v = *env.results[0].find("value");
    CHECK(v.substr(0, 19) == "-0.6931471805599453");
}
