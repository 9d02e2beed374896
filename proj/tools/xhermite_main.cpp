#include "xhermite/errors.hpp"
#include "xhermite/scenario.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace {

std::vector<int> parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            if (!cur.empty()) parts.push_back(std::stoi(cur));
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) parts.push_back(std::stoi(cur));
    return parts;
}

void print_claims(const nlohmann::ordered_json& summary) {
    if (!summary.contains("claims")) return;
    for (auto it = summary["claims"].begin(); it != summary["claims"].end(); ++it) {
        const std::string verdict = it.value().value("verdict", "?");
        std::printf("[%s] %s\n", verdict.c_str(), it.key().c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exceptional-Hermite zero laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "execute scenarios from a JSON config");
    run_cmd->add_option("--config", config_path, "JSON config file")->required();

    std::string partition = "1,1";
    std::vector<int> n_values;
    unsigned precision = 192;
    std::uint64_t seed = 7;
    std::string out_dir = "out";

    const char* names[] = {"construct", "zeros",      "hessian",    "gersgorin",
                           "dnu",       "optimality", "sweep",      "semicircle"};
    const char* descs[] = {
        "exact polynomial construction and identity check",
        "zero computation, classification, and distance reports",
        "energy gradient and Hessian assembly",
        "block localization sets, dominance, and eigenvalue containment",
        "rectangular-partition curvature checks and saddle verdict",
        "weight admissibility, maximality, and on-axis equation residuals",
        "cross-n growth fits, orthogonality, and trend reports",
        "scaled on-axis zeros against the semicircle law"};
    std::vector<CLI::App*> subs;
    for (int i = 0; i < 8; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--partition", partition, "comma-separated parts, e.g. 1,1");
        sub->add_option("--n", n_values, "on-axis zero count (repeatable)");
        sub->add_option("--precision", precision, "working precision in bits");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_option("--out", out_dir, "output directory");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        xh::ScenarioConfig cfg;
        if (run_cmd->parsed()) {
            cfg = xh::config_from_file(config_path);
        } else {
            std::string scenario;
            for (int i = 0; i < 8; ++i)
                if (subs[i]->parsed()) scenario = names[i];
            nlohmann::json j;
            j["partition"] = parse_partition(partition);
            if (n_values.empty())
                j["n_values"] = scenario == "sweep" ? std::vector<int>{20, 30, 40, 50, 60}
                                                    : std::vector<int>{40};
            else
                j["n_values"] = n_values;
            j["precision_bits"] = precision;
            j["scenarios"] = std::vector<std::string>{scenario};
            j["seed"] = seed;
            j["output_dir"] = out_dir;
            cfg = xh::config_from_json(j);
        }
        xh::RunOutcome res = xh::run(cfg);
        print_claims(res.summary);
        std::printf("cases failed: %d, claims failed: %d\n", res.failed_cases,
                    res.failed_claims);
        return (res.failed_cases == 0 && res.failed_claims == 0) ? 0 : 1;
    } catch (const xh::XhError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
}
