// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: `run` executes one scenario and prints its
// report; `check` runs the seeded invariant suite on random channels.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qbayes/checks.hpp"
#include "qbayes/report.hpp"
#include "qbayes/scenarios.hpp"

namespace {

int run_scenario(const std::string& name, double r, double alpha, double beta,
                 const std::string& format, double tolerance, const std::string& prior,
                 const std::string& prior_file, const std::string& out_path) {
    qbayes::ScenarioOptions options;
    options.tolerance = tolerance;
    options.prior_label = prior;
    if (prior == "file") {
        if (prior_file.empty()) {
            std::cerr << "error: --prior file requires --prior-file\n";
            return 1;
        }
        // Validated against the density-operator invariants; the scenario
        // evolutions are unitary, so the prior only enters the record.
        const qbayes::DensityOperator rho = qbayes::load_prior_file(prior_file);
        options.prior_label = "file:" + prior_file + " (dim " + std::to_string(rho.dim()) + ")";
    }

    qbayes::ScenarioReport report;
    if (name == "example1") {
        report = qbayes::run_example1(r, options);
    } else if (name == "example2") {
        report = qbayes::run_example2(options);
    } else if (name == "fr") {
        report = qbayes::run_frauchiger_renner(options);
    } else if (name == "hardy") {
        report = qbayes::run_hardy(alpha, beta, options);
    } else {
        std::cerr << "error: unknown scenario '" << name
                  << "' (expected example1|example2|fr|hardy)\n";
        return 1;
    }

    const auto fmt =
        format == "text" ? qbayes::ReportFormat::Text : qbayes::ReportFormat::Json;
    const std::string payload = qbayes::emit_report(report, fmt);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return 1;
        }
        out << payload;
    }
    return 0;
}

int run_checks(const std::vector<std::size_t>& dims, int trials, std::uint64_t seed) {
    qbayes::CheckOptions options;
    if (!dims.empty()) options.dims = dims;
    options.trials = trials;
    options.seed = seed;

    const qbayes::CheckSummary summary = qbayes::run_property_checks(options);
    std::cout << "ran " << summary.assertions << " assertions over " << trials
              << " trials per dimension\n";
    if (summary.ok()) {
        std::cout << "all invariants hold\n";
        return 0;
    }
    for (const auto& f : summary.failures) {
        std::cout << "VIOLATION " << f.check << ": " << f.detail << "\n";
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum vs classical Bayes causal-inference toolkit"};
    app.require_subcommand(1);

    std::string scenario;
    double r = 0.5;
    double alpha = 0.8;
    double beta = 0.6;
    std::string format = "json";
    double tolerance = qbayes::tol::kDefault;
    std::string prior = "uniform";
    std::string prior_file;
    std::string out_path;

    auto* run = app.add_subcommand("run", "run one scenario and print its report");
    run->add_option("scenario", scenario, "example1|example2|fr|hardy")->required();
    run->add_option("--r", r, "superposition weight for example1 (0 < r < 1)");
    run->add_option("--alpha", alpha, "first amplitude for hardy");
    run->add_option("--beta", beta, "second amplitude for hardy");
    run->add_option("--format", format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    run->add_option("--tolerance", tolerance, "comparison tolerance");
    run->add_option("--prior", prior, "reference prior: uniform|steady|file")
        ->check(CLI::IsMember({"uniform", "steady", "file"}));
    run->add_option("--prior-file", prior_file, "explicit prior (JSON density matrix)");
    run->add_option("--out", out_path, "write the report here instead of stdout");

    std::vector<std::size_t> dims;
    int trials = 100;
    std::uint64_t seed = 7;
    auto* check = app.add_subcommand("check", "run the seeded invariant suite");
    check->add_option("--dims", dims, "dimensions to test (default 2 3 4)")->delimiter(',');
    check->add_option("--trials", trials, "trials per dimension");
    check->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            return run_scenario(scenario, r, alpha, beta, format, tolerance, prior, prior_file,
                                out_path);
        }
        return run_checks(dims, trials, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
