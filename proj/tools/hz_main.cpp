// Command-line front end: runs one scenario from a JSON config and writes
// the report files. Exit codes: 0 pass, 1 mathematical check failed,
// 2 configuration error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hz/radial/levels.hpp"
#include "hz/report/scenarios.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hz::report::IOFailure("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& scenario, const std::string& config_path,
        const std::string& format, bool oracle, int threads) {
    using namespace hz::report;

    RunConfig cfg;
    try {
        cfg = parse_config(read_file(config_path));
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ValidationError& e) {
        std::cerr << "error: invalid config:\n";
        for (const auto& field : e.fields()) std::cerr << "  - " << field << "\n";
        return kExitConfig;
    } catch (const hz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    if (scenario_name(cfg.scenario) != scenario) {
        std::cerr << "error: config declares scenario '" << scenario_name(cfg.scenario)
                  << "' but the '" << scenario << "' subcommand was invoked\n";
        return kExitConfig;
    }
    if (oracle) cfg.oracle = true;
    if (threads > 0) cfg.threads = static_cast<unsigned>(threads);

    // Environment override for the output directory.
    if (const char* dir = std::getenv("HZ_OUTPUT_DIR"); dir && *dir)
        cfg.output.directory = dir;
    if (cfg.output.basename.empty()) cfg.output.basename = scenario_name(cfg.scenario);

    ReportDocument doc;
    try {
        doc = run_scenario(cfg);
    } catch (const hz::StepFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const IOFailure& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hz::radial::InvalidProfile& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hz::radial::ResonantSlope& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hz::radial::WindowInfeasible& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hz::radial::HypothesisViolation& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hz::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    try {
        std::vector<std::string> paths;
        if (format == "csv" || format == "both") {
            auto p = write_report(doc, ReportFormat::Csv, cfg.output.directory,
                                  cfg.output.basename);
            paths.insert(paths.end(), p.begin(), p.end());
        }
        if (format == "json" || format == "both") {
            auto p = write_report(doc, ReportFormat::Json, cfg.output.directory,
                                  cfg.output.basename);
            paths.insert(paths.end(), p.begin(), p.end());
        }
        for (const auto& p : paths) std::cout << "wrote " << p << "\n";
    } catch (const hz::report::IOFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }

    for (const auto& note : doc.notes) std::cout << note << "\n";
    std::cout << (doc.pass ? "PASS" : "FAIL") << " (" << doc.rows.size()
              << " records)\n";
    return doc.pass ? kExitPass : kExitMathFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for magnetic flows, curvature area bounds, "
                 "radial Hamiltonian spectra and GF(2) spectral sequences"};
    app.set_version_flag("--version", hz::report::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "both";
    bool oracle = false;
    int threads = 0;

    const std::vector<std::string> names = {"curve-bound", "magnetic", "levels",
                                            "spectral"};
    std::vector<CLI::App*> subs;
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
        sub->add_option("--config", config_path, "path to the JSON config")
            ->required();
        sub->add_option("--format", format, "report format: csv, json or both")
            ->check(CLI::IsMember({"csv", "json", "both"}));
        sub->add_flag("--oracle", oracle, "enable brute-force cross-checks");
        sub->add_option("--threads", threads, "worker threads (overrides config)");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < names.size(); ++i) {
        if (subs[i]->parsed())
            return run(names[i], config_path, format, oracle, threads);
    }
    return hz::report::kExitConfig;
}
