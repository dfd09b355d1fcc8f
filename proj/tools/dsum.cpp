// dsum: experiment runner for Dedekind sums, least denominators,
// Kloosterman-fraction sums and discrepancy statistics.
//
// Exit codes: 0 success, 2 invalid input, 3 oracle/invariant violation.

#include "dsum/config.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    dsum::ExperimentConfig cfg;
    CLI::App app{"dsum: Dedekind sums, least denominators, Kloosterman sums and discrepancy"};
    app.set_version_flag("--version", std::string("dsum ") + DSUM_VERSION);
    app.set_config("--config", "", "TOML-style config file; command-line flags override it");
    auto bound = dsum::bind_config(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        dsum::resolve_command(bound, cfg);
        if (cfg.output.empty()) {
            dsum::run_command(cfg, std::cout);
        } else {
            std::ofstream out(cfg.output, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot open output file " + cfg.output);
            dsum::run_command(cfg, out);
        }
    } catch (const dsum::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
