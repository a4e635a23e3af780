// Command-line front end: verification reports, convergence tables and
// quadrature cross-checks in table, JSON or CSV form.
//
// Exit codes: 0 ok, 1 tolerance exceeded, 2 usage error, 3 numeric error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "logtrig/commands.hpp"

namespace {

using namespace logtrig;

std::vector<IdentityFamily> parse_families(const std::string& arg) {
    std::vector<IdentityFamily> out;
    if (arg.empty() || arg == "all") return out;  // empty = all
    std::size_t pos = 0;
    while (pos <= arg.size()) {
        std::size_t comma = arg.find(',', pos);
        if (comma == std::string::npos) comma = arg.size();
        std::string name = arg.substr(pos, comma - pos);
        auto fam = family_from_name(name);
        if (!fam) throw invalid_parameter("unknown family: '" + name + "'");
        out.push_back(*fam);
        pos = comma + 1;
        if (comma == arg.size()) break;
    }
    return out;
}

std::vector<long> parse_n_list(const std::string& arg) {
    std::vector<long> out;
    if (arg.empty()) return out;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
        std::size_t comma = arg.find(',', pos);
        if (comma == std::string::npos) comma = arg.size();
        std::string item = arg.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw invalid_parameter("bad n-list entry: '" + item + "'");
        }
        pos = comma + 1;
        if (comma == arg.size()) break;
    }
    return out;
}

IntegralTargetId parse_target(const std::string& arg) {
    auto id = target_from_name(arg);
    if (!id) throw invalid_parameter("unknown target: '" + arg + "'");
    return *id;
}

std::optional<ExtReal> parse_theta(const std::string& arg, precision_t bits) {
    if (arg.empty()) return std::nullopt;
    return ExtReal::from_string(arg, bits);
}

int finish(const ReportEnvelope& env, const std::string& format) {
    std::cout << render(env, format);
    return env.status == ReportStatus::ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-trigonometric integrals from products and Riemann sums"};
    app.require_subcommand(1);

    long precision_bits = 128;
    std::string format = "table";
    std::string families_arg = "all";
    std::string n_list_arg;
    std::string target_arg;
    std::string theta_arg;
    long n_max = -1;
    double abs_tol = logtrig::default_abs_tol;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--precision-bits", precision_bits,
                        "significand width in bits (>= 53)")
            ->capture_default_str();
        cmd->add_option("--format", format, "table, json or csv")
            ->check(CLI::IsMember({"table", "json", "csv"}))
            ->capture_default_str();
    };

    CLI::App* verify = app.add_subcommand(
        "verify-identities", "residuals of the trig product identities");
    verify->add_option("--families", families_arg,
                       "comma list of tan,sin,half-sin-sq,cos-sq,shifted-sin "
                       "or 'all'")
        ->capture_default_str();
    verify->add_option("--n-max", n_max, "largest N (default 100)");
    verify->add_option("--theta", theta_arg,
                       "shift for the shifted-sin family (default 0.7)");
    add_common(verify);

    CLI::App* conv = app.add_subcommand(
        "converge", "Riemann-sum records and extrapolated limit");
    conv->add_option("--target", target_arg, "integral target id")
        ->required();
    conv->add_option("--n-list", n_list_arg,
                     "comma list of N (default 100,1000,10000,100000)");
    add_common(conv);

    CLI::App* orac = app.add_subcommand(
        "oracle", "tanh-sinh quadrature vs the closed form");
    orac->add_option("--target", target_arg, "integral target id")
        ->required();
    orac->add_option("--theta", theta_arg,
                     "shift (required for log-abs-sin-shifted)");
    orac->add_option("--abs-tol", abs_tol, "absolute tolerance")
        ->capture_default_str();
    add_common(orac);

    CLI::App* all = app.add_subcommand(
        "report-all", "identities, convergence, oracle and cross-checks");
    all->add_option("--n-max", n_max, "largest identity N (default 1000)");
    all->add_option("--theta", theta_arg,
                    "shift for shifted-sin rows (default 0.7)");
    all->add_option("--abs-tol", abs_tol, "oracle absolute tolerance")
        ->capture_default_str();
    add_common(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        using namespace logtrig;
        if (verify->parsed()) {
            auto env = cmd_verify_identities(
                parse_families(families_arg),
                n_max < 0 ? default_n_max_verify : n_max,
                parse_theta(theta_arg, precision_bits), precision_bits);
            return finish(env, format);
        }
        if (conv->parsed()) {
            auto env = cmd_converge(parse_target(target_arg),
                                    parse_n_list(n_list_arg), precision_bits);
            return finish(env, format);
        }
        if (orac->parsed()) {
            if (abs_tol <= 0) throw invalid_parameter("abs-tol must be > 0");
            auto env = cmd_oracle(parse_target(target_arg),
                                  parse_theta(theta_arg, precision_bits),
                                  abs_tol, precision_bits);
            return finish(env, format);
        }
        if (all->parsed()) {
            if (abs_tol <= 0) throw invalid_parameter("abs-tol must be > 0");
            auto env = cmd_report_all(n_max < 0 ? default_n_max_report : n_max,
                                      parse_theta(theta_arg, precision_bits),
                                      abs_tol, precision_bits);
            return finish(env, format);
        }
        std::cerr << "logtrig: no subcommand\n";
        return 2;
    } catch (const logtrig::invalid_precision& e) {
        std::cerr << "logtrig: " << e.what() << '\n';
        return 2;
    } catch (const logtrig::invalid_parameter& e) {
        std::cerr << "logtrig: " << e.what() << '\n';
        return 2;
    } catch (const logtrig::invalid_split& e) {
        std::cerr << "logtrig: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "logtrig: numeric error: " << e.what() << '\n';
        return 3;
    }
}
