// crl: library driver.  verify | scan | resonate | lemma5 | bounds; see
// README for the file formats and exit codes.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crl/cli.hpp"

namespace {

void add_common_options(CLI::App* sub, crl::RunConfig& cfg) {
    sub->add_option("--q", cfg.q, "single prime modulus");
    sub->add_option("--q-min", cfg.q_min, "lower end of a prime range");
    sub->add_option("--q-max", cfg.q_max, "upper end of a prime range");
    sub->add_option("--index", cfg.index, "subgroup index K (a divisor of q-1)");
    sub->add_option("--max-index", cfg.max_index, "cap when enumerating all divisors");
    sub->add_option("--coset", cfg.coset, "coset representative c; omit for all");
    sub->add_option("--N", cfg.n_support, "resonator support bound override");
    sub->add_option("--X", cfg.x_balance, "AFE balance parameter override");
    sub->add_option("--delta", cfg.delta, "congruence window exponent override");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--scan-data", cfg.scan_data, "scan file joined for measured columns");
    sub->add_option("--seed", cfg.seed, "seed for randomized property suites");
    sub->add_option("--workers", cfg.workers, "worker threads for sweeps");
    sub->add_option("--budget", cfg.budget, "largest modulus a scan may attempt");
}

} // namespace

int main(int argc, char** argv) {
    crl::RunConfig cfg;

    // --config seeds the defaults; explicit flags then override it
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string_view(argv[i]) == "--config") {
            std::ifstream f(argv[i + 1]);
            if (!f) {
                std::cerr << "cannot read config file " << argv[i + 1] << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            try {
                crl::apply_config_json(cfg, buf.str());
            } catch (const std::exception& e) {
                std::cerr << "bad config file: " << e.what() << "\n";
                return 2;
            }
        }
    }

    CLI::App app{"coset-resonance-lab: central values of Dirichlet L-functions over "
                 "cosets of the character group mod a prime"};
    app.require_subcommand(0, 1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    for (const char* name : {"verify", "scan", "resonate", "lemma5", "bounds"}) {
        auto* sub = app.add_subcommand(name, "");
        add_common_options(sub, cfg);
        sub->callback([&cfg, name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return crl::run_command(cfg, std::cout, std::cerr);
    } catch (const crl::budget_error& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
