// Batch front end: one subcommand per verification campaign.  Reports are
// canonical JSON (or CSV/text); identical config + seed yields byte-identical
// output.  Exit codes: 0 all checks passed, 1 property failure, 2 usage
// error, 3 budget exceeded.

#include "strata/campaigns.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace strata;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg, std::string& config_path, std::string& qspec,
                std::string& legspec) {
    sub->add_option("--config", config_path, "key=value config file (flags override)");
    sub->add_option("--a", cfg.a, "signature a");
    sub->add_option("--b", cfg.b, "signature b");
    sub->add_option("--p", cfg.p, "field characteristic");
    sub->add_option("--f", cfg.f, "field extension degree");
    sub->add_option("--case", cfg.form_case, "odd-char | char2-case1 | char2-case2 | auto");
    sub->add_option("--n", cfg.n, "signature parameter (1,n)");
    sub->add_option("--N", cfg.N, "truncation order for families");
    sub->add_option("--q", qspec, "comma-separated prime-power sample list");
    sub->add_option("--seed", cfg.seed, "PRNG seed (echoed in the report)");
    sub->add_option("--budget", cfg.budget, "enumeration/search budget");
    sub->add_option("--sweep", cfg.sweep, "random-family sample size");
    sub->add_option("--target", cfg.target, "accepted-datum target");
    sub->add_option("--range", cfg.range, "weight entry range [-range, range]");
    sub->add_option("--legs", legspec, "semicolon-separated a,b pairs, e.g. 1,2;2,2");
    sub->add_option("--output", cfg.output, "output path (default stdout)");
    sub->add_option("--revalidate", cfg.revalidate,
                    "closure: re-verify the witnesses of an emitted JSON report");
    sub->add_option("--format", cfg.format, "json | csv | text");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification campaigns for stratified isotropic-flag spaces over small "
                 "finite fields"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, qspec, legspec;

    // Config files seed the defaults; explicit flags override them, so the
    // file has to be applied before parsing.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(cfg, argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
        }
    }

    const char* names[] = {"count", "closure", "tangent", "char2", "weights",
                           "hasse", "cmindex", "chart"};
    const char* descs[] = {
        "stratum counts and count-degree interpolation",
        "closure witness search and semicontinuity sweep",
        "tangent-dimension table and order-2 extension witnesses",
        "form classification, parity emptiness, identity-form smooth locus",
        "weight criterion / dominance-orbit sweep",
        "Verschiebung-datum search and refined-stratification poset",
        "index-set and closure-order export for multi-leg signatures",
        "solution counts of the symmetric-pair chart equations"};
    for (int i = 0; i < 8; ++i)
        add_common(app.add_subcommand(names[i], descs[i]), cfg, config_path, qspec, legspec);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!qspec.empty()) {
            cfg.q_list.clear();
            std::stringstream ss(qspec);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.q_list.push_back(std::stoi(tok));
        }
        if (!legspec.empty()) {
            cfg.legs.clear();
            std::stringstream ss(legspec);
            std::string tok;
            while (std::getline(ss, tok, ';')) {
                size_t comma = tok.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("legs entries are a,b pairs");
                cfg.legs.push_back({std::stoi(tok.substr(0, comma)),
                                    std::stoi(tok.substr(comma + 1))});
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: invalid argument list (" << e.what() << ")\n";
        return kExitUsage;
    }
    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

    RunResult res = run_campaign(cfg);
    if (!cfg.output.empty()) {
        std::ofstream out(cfg.output);
        if (!out) {
            std::cerr << "error: cannot write " << cfg.output << "\n";
            return kExitUsage;
        }
        out << res.rendered;
        std::cerr << "report written to " << cfg.output << "\n";
    } else {
        std::cout << res.rendered;
    }
    return res.exit_code;
}
