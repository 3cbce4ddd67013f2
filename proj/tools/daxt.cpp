#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/pipeline.hpp"
#include "daxt/util.hpp"

namespace {

using daxt::RunConfig;

struct StageCommand {
    CLI::App* app = nullptr;
    std::string config_path;
    void (*run)(const RunConfig&) = nullptr;
};

// Flat `key = value` config file; keys match the long flag names without the
// leading dashes. Values apply only where the flag was not passed explicitly.
void apply_config_file(const std::string& path, CLI::App* sub, RunConfig& cfg) {
    const std::string text = daxt::read_file(path);
    std::map<std::string, std::string> kv;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = daxt::trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw daxt::ContractError("config file line " + std::to_string(line_no) +
                                      ": expected key=value");
        kv[daxt::trim(line.substr(0, eq))] = daxt::trim(line.substr(eq + 1));
    }

    auto flag_given = [&](const std::string& flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    auto take = [&](const char* key, auto setter) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        if (!flag_given("--" + std::string(key))) setter(it->second);
        kv.erase(it);
    };
    auto as_long = [](const std::string& v) { return std::stol(v); };
    auto as_u64 = [](const std::string& v) { return std::stoull(v); };
    auto as_real = [](const std::string& v) { return std::stod(v); };

    take("input", [&](const std::string& v) { cfg.input = v; });
    take("synth-games", [&](const std::string& v) { cfg.synth_games = static_cast<int>(as_long(v)); });
    take("seed", [&](const std::string& v) { cfg.seed = as_u64(v); });
    take("a", [&](const std::string& v) { cfg.a = static_cast<int>(as_long(v)); });
    take("xt-tol", [&](const std::string& v) { cfg.xt_tol = as_real(v); });
    take("xt-max-iter", [&](const std::string& v) { cfg.xt_max_iter = static_cast<int>(as_long(v)); });
    take("epochs", [&](const std::string& v) { cfg.epochs = static_cast<int>(as_long(v)); });
    take("batch", [&](const std::string& v) { cfg.batch = static_cast<int>(as_long(v)); });
    take("split", [&](const std::string& v) { cfg.split = as_real(v); });
    take("min-interceptions", [&](const std::string& v) { cfg.min_interceptions = as_long(v); });
    take("min-tackles", [&](const std::string& v) { cfg.min_tackles = as_long(v); });
    take("min-appearances", [&](const std::string& v) { cfg.min_appearances = as_long(v); });
    take("positions", [&](const std::string& v) { cfg.positions = v; });
    take("market-values", [&](const std::string& v) { cfg.market_values = v; });
    take("matches", [&](const std::string& v) { cfg.matches = v; });
    take("weights", [&](const std::string& v) { cfg.weights = v; });
    take("out", [&](const std::string& v) { cfg.out = v; });
    if (!kv.empty())
        throw daxt::ContractError("config file: unknown key '" + kv.begin()->first + "'");
}

void add_common_options(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
    sub->add_option("--input", cfg.input, "SPADL events CSV to ingest");
    sub->add_option("--synth-games", cfg.synth_games, "number of synthetic games");
    sub->add_option("--seed", cfg.seed, "seed for synthesis, init, and splits");
    sub->add_option("--a", cfg.a, "actions per sequence window");
    sub->add_option("--xt-tol", cfg.xt_tol, "value-iteration stopping tolerance");
    sub->add_option("--xt-max-iter", cfg.xt_max_iter, "value-iteration iteration cap");
    sub->add_option("--epochs", cfg.epochs, "training epochs");
    sub->add_option("--batch", cfg.batch, "mini-batch size");
    sub->add_option("--split", cfg.split, "validation fraction");
    sub->add_option("--min-interceptions", cfg.min_interceptions,
                    "interception count needed for the averages view");
    sub->add_option("--min-tackles", cfg.min_tackles, "tackle count needed for the averages view");
    sub->add_option("--min-appearances", cfg.min_appearances,
                    "appearances needed to enter a scoring pool");
    sub->add_option("--positions", cfg.positions, "player positions CSV");
    sub->add_option("--market-values", cfg.market_values, "player market values CSV");
    sub->add_option("--matches", cfg.matches, "per-player appearances/goals-conceded CSV");
    sub->add_option("--weights", cfg.weights, "`default` or wi,wt,wc,wp");
    sub->add_option("--out", cfg.out, "run directory for stage artifacts");
    sub->add_option("--config", config_path, "flat key=value config file (flags win)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Defensive-action expected-threat pipeline"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<StageCommand> commands;
    commands.reserve(16);  // options bind references into elements; never reallocate
    auto register_stage = [&](const char* name, const char* description,
                              void (*run)(const RunConfig&)) {
        StageCommand sc;
        sc.app = app.add_subcommand(name, description);
        sc.run = run;
        commands.push_back(sc);
        add_common_options(commands.back().app, cfg, commands.back().config_path);
    };

    register_stage("ingest", "parse an events CSV into the canonical form", daxt::stage_ingest);
    register_stage("synth", "generate a synthetic corpus with league metadata", daxt::stage_synth);
    register_stage("xt", "fit the grid model and solve the threat surface", daxt::stage_xt);
    register_stage("datasets", "extract training and defensive-action tables", daxt::stage_datasets);
    register_stage("train", "train the sequence-to-threat regressor", daxt::stage_train);
    register_stage("value", "predict prevented threat for each defensive action", daxt::stage_value);
    register_stage("score", "normalize features, apply the score formula, rank", daxt::stage_score);
    register_stage("validate", "run the statistical battery on held-out rows", daxt::stage_validate);
    register_stage("render", "emit pitch and regression SVG figures", daxt::stage_render);
    register_stage("sweep-a", "compare window lengths a=1..3", daxt::stage_sweep_a);
    register_stage("run-all", "run every stage in pipeline order", daxt::run_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        for (StageCommand& sc : commands) {
            if (!sc.app->parsed()) continue;
            if (!sc.config_path.empty()) apply_config_file(sc.config_path, sc.app, cfg);
            sc.run(cfg);
        }
        return 0;
    } catch (const daxt::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const daxt::ContractError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
