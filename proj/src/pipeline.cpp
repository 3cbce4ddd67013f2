#include "daxt/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/grid.hpp"
#include "daxt/network.hpp"
#include "daxt/render.hpp"
#include "daxt/scaler.hpp"
#include "daxt/scoring.hpp"
#include "daxt/sequences.hpp"
#include "daxt/spadl.hpp"
#include "daxt/stats.hpp"
#include "daxt/synthetic.hpp"
#include "daxt/util.hpp"
#include "daxt/valuation.hpp"

namespace daxt {

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

std::string basename_of(const std::string& path) {
    const size_t pos = path.find_last_of('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

namespace {

void ensure_out(const RunConfig& cfg) {
    if (!cfg.out.empty() && cfg.out != ".") std::filesystem::create_directories(cfg.out);
}

// Stage record: command, effective config (paths reduced to basenames so two
// runs into different directories produce identical bytes), then input and
// output content hashes in write order.
class Manifest {
public:
    Manifest(const RunConfig& cfg, const std::string& command) : cfg_(cfg) {
        auto path_or_dash = [](const std::string& p) { return p.empty() ? std::string("-") : basename_of(p); };
        add("command", command);
        add("config.input", path_or_dash(cfg.input));
        add("config.synth_games", std::to_string(cfg.synth_games));
        add("config.seed", std::to_string(cfg.seed));
        add("config.a", std::to_string(cfg.a));
        add("config.xt_tol", fmt_g17(cfg.xt_tol));
        add("config.xt_max_iter", std::to_string(cfg.xt_max_iter));
        add("config.epochs", std::to_string(cfg.epochs));
        add("config.batch", std::to_string(cfg.batch));
        add("config.split", fmt_g17(cfg.split));
        add("config.min_interceptions", std::to_string(cfg.min_interceptions));
        add("config.min_tackles", std::to_string(cfg.min_tackles));
        add("config.min_appearances", std::to_string(cfg.min_appearances));
        add("config.positions", path_or_dash(cfg.positions));
        add("config.market_values", path_or_dash(cfg.market_values));
        add("config.matches", path_or_dash(cfg.matches));
        add("config.weights", cfg.weights);
        add("config.out", ".");
    }

    void input(const std::string& name, const std::string& content) {
        add("input." + name, to_hex(fnv1a64(content)));
    }

    // Writes the artifact and records its hash.
    void emit(const std::string& name, const std::string& content) {
        write_file(join_path(cfg_.out, name), content);
        add("output." + name, to_hex(fnv1a64(content)));
    }

    void write(const std::string& stage_name) {
        std::string text;
        for (const auto& [k, v] : entries_) text += k + "=" + v + "\n";
        write_file(join_path(cfg_.out, stage_name + ".manifest"), text);
    }

private:
    void add(const std::string& k, const std::string& v) { entries_.emplace_back(k, v); }

    const RunConfig& cfg_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

bool file_exists(const std::string& path) {
    std::error_code ec;
    return std::filesystem::exists(path, ec);
}

std::string require_artifact(const RunConfig& cfg, const std::string& name,
                             const std::string& producer) {
    const std::string path = join_path(cfg.out, name);
    if (!file_exists(path))
        throw IoError(name + " not found in '" + cfg.out + "'; produce it with the `" + producer +
                      "` command");
    return read_file(path);
}

ScoreWeights parse_weights(const std::string& spec) {
    ScoreWeights w;
    if (spec.empty() || spec == "default") return w;
    double vals[4];
    int idx = 0;
    size_t pos = 0;
    while (idx < 4) {
        const size_t comma = spec.find(',', pos);
        const std::string tok = comma == std::string::npos ? spec.substr(pos) : spec.substr(pos, comma - pos);
        char* end = nullptr;
        vals[idx] = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ContractError("weights must be `default` or four comma-separated numbers");
        ++idx;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (idx != 4) throw ContractError("weights must be `default` or four comma-separated numbers");
    w.custom = true;
    w.wi = vals[0];
    w.wt = vals[1];
    w.wc = vals[2];
    w.wp = vals[3];
    return w;
}

std::string metrics_csv(const std::vector<std::pair<std::string, double>>& metrics) {
    std::string out = "name,value\n";
    for (const auto& [name, value] : metrics) out += name + "," + fmt_g17(value) + "\n";
    return out;
}

} // namespace

std::vector<GameStream> load_pipeline_events(const RunConfig& cfg) {
    return parse_spadl_text(require_artifact(cfg, "events.csv", "synth or ingest"));
}

void stage_synth(const RunConfig& cfg) {
    if (cfg.synth_games < 1) throw ContractError("synth: --synth-games must be at least 1");
    ensure_out(cfg);
    Manifest m(cfg, "synth");
    const auto games = generate_synthetic_corpus(cfg.synth_games, cfg.seed);
    const auto league = synthetic_league(cfg.seed);
    m.emit("events.csv", spadl_to_csv(games));
    m.emit("positions.csv", league_positions_csv(league));
    m.emit("market_values.csv", league_market_values_csv(league));
    m.write("synth");
}

void stage_ingest(const RunConfig& cfg) {
    if (cfg.input.empty()) throw ContractError("ingest: --input is required");
    ensure_out(cfg);
    Manifest m(cfg, "ingest");
    const std::string raw = read_file(cfg.input);
    m.input(basename_of(cfg.input), raw);
    ParseDiagnostics diag;
    const auto games = parse_spadl_text(raw, &diag);
    std::fprintf(stderr, "%s\n", diag.summary().c_str());
    m.emit("events.csv", spadl_to_csv(games));
    m.write("ingest");
}

void stage_xt(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "xt");
    const std::string events_text = require_artifact(cfg, "events.csv", "synth or ingest");
    m.input("events.csv", events_text);
    const auto games = parse_spadl_text(events_text);
    const GridModel grid = fit_grid(games);
    const XTSurface surface = solve_xt(grid, cfg.xt_tol, cfg.xt_max_iter);
    if (!surface.converged)
        std::fprintf(stderr, "xt: no convergence after %d iterations (residual %s)\n",
                     surface.iterations_used, fmt_g17(surface.final_residual).c_str());
    m.emit("xt_surface.csv", surface_to_csv(surface));
    std::string meta;
    meta += "iterations=" + std::to_string(surface.iterations_used) + "\n";
    meta += "residual=" + fmt_g17(surface.final_residual) + "\n";
    meta += "tol=" + fmt_g17(cfg.xt_tol) + "\n";
    meta += "converged=" + std::string(surface.converged ? "1" : "0") + "\n";
    meta += "corpus=" + to_hex(fnv1a64(events_text)) + "\n";
    m.emit("xt_surface.meta", meta);
    m.write("xt");
}

void stage_datasets(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "datasets");
    const std::string events_text = require_artifact(cfg, "events.csv", "synth or ingest");
    const std::string surface_text = require_artifact(cfg, "xt_surface.csv", "xt");
    m.input("events.csv", events_text);
    m.input("xt_surface.csv", surface_text);
    const auto games = parse_spadl_text(events_text);
    const XTSurface surface = surface_from_csv_text(surface_text);
    const FeatureTable training = build_training_set(games, surface, cfg.a);
    auto [interceptions, tackles] = build_da_sets(games, surface, cfg.a);
    m.emit("training.csv", table_to_csv(training));
    m.emit("interceptions.csv", table_to_csv(interceptions));
    m.emit("tackles.csv", table_to_csv(tackles));
    m.write("datasets");
}

void stage_train(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "train");
    const std::string training_text = require_artifact(cfg, "training.csv", "datasets");
    m.input("training.csv", training_text);
    FeatureTable table = table_from_csv_text(training_text);
    if (table.a != cfg.a)
        throw ContractError("train: training table was built with a=" + std::to_string(table.a) +
                            "; rerun datasets or pass --a " + std::to_string(table.a));
    const Scaler scaler = fit_scaler(table);
    transform_table(scaler, table);
    const Network net = init_network(cfg.a, cfg.seed);
    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.batch = cfg.batch;
    tc.split = cfg.split;
    tc.seed = cfg.seed;
    TrainedModel model = train(net, table, scaler, tc);
    const std::string events_path = join_path(cfg.out, "events.csv");
    if (file_exists(events_path)) model.corpus_fingerprint = to_hex(fnv1a64(read_file(events_path)));
    m.emit("model.txt", model_to_text(model));
    m.write("train");
}

void stage_value(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "value");
    const std::string model_text = require_artifact(cfg, "model.txt", "train");
    const std::string int_text = require_artifact(cfg, "interceptions.csv", "datasets");
    const std::string tkl_text = require_artifact(cfg, "tackles.csv", "datasets");
    const std::string events_text = require_artifact(cfg, "events.csv", "synth or ingest");
    m.input("model.txt", model_text);
    m.input("interceptions.csv", int_text);
    m.input("tackles.csv", tkl_text);
    m.input("events.csv", events_text);
    const TrainedModel model = model_from_text(model_text);
    const auto games = parse_spadl_text(events_text);
    FeatureTable interceptions = table_from_csv_text(int_text);
    FeatureTable tackles = table_from_csv_text(tkl_text);
    rejoin_da_locations(interceptions, games);
    rejoin_da_locations(tackles, games);
    std::vector<ValuedAction> valued = value_defensive_actions(model, interceptions);
    const std::vector<ValuedAction> valued_tackles = value_defensive_actions(model, tackles);
    valued.insert(valued.end(), valued_tackles.begin(), valued_tackles.end());
    m.emit("valued.csv", valued_to_csv(valued));
    const AggregateResult agg = aggregate_players(valued, cfg.min_interceptions, cfg.min_tackles);
    m.emit("player_stats.csv", player_stats_to_csv(agg.all));
    m.emit("player_stats_qualified.csv", player_stats_to_csv(agg.qualified));
    m.write("value");
}

void stage_score(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "score");
    const std::string events_text = require_artifact(cfg, "events.csv", "synth or ingest");
    const std::string surface_text = require_artifact(cfg, "xt_surface.csv", "xt");
    const std::string valued_text = require_artifact(cfg, "valued.csv", "value");
    m.input("events.csv", events_text);
    m.input("xt_surface.csv", surface_text);
    m.input("valued.csv", valued_text);

    std::string positions_path = cfg.positions;
    if (positions_path.empty() && file_exists(join_path(cfg.out, "positions.csv")))
        positions_path = join_path(cfg.out, "positions.csv");
    if (positions_path.empty())
        throw IoError("positions.csv not found; pass --positions or run `synth`");
    const std::string positions_text = read_file(positions_path);
    m.input(basename_of(positions_path), positions_text);

    const auto games = parse_spadl_text(events_text);
    const XTSurface surface = surface_from_csv_text(surface_text);
    const auto valued = valued_from_csv_text(valued_text);
    const auto cxt_pxt = compute_cxt_pxt(games, surface);
    const auto positions = positions_from_csv_text(positions_text);
    const AggregateResult agg = aggregate_players(valued, cfg.min_interceptions, cfg.min_tackles);
    const ScoreWeights weights = parse_weights(cfg.weights);

    std::vector<DefenderScore> ranking;
    for (Position group : {Position::center_back, Position::full_back,
                           Position::defensive_midfielder}) {
        auto scores = score_position_group(agg.all, cxt_pxt, positions, group,
                                           cfg.min_appearances, weights);
        rank(scores);
        ranking.insert(ranking.end(), scores.begin(), scores.end());
    }

    const std::map<std::string, MatchInfo>* matches_ptr = nullptr;
    std::map<std::string, MatchInfo> matches;
    if (!cfg.matches.empty()) {
        const std::string matches_text = read_file(cfg.matches);
        m.input(basename_of(cfg.matches), matches_text);
        matches = matches_from_csv_text(matches_text);
        matches_ptr = &matches;
    }
    m.emit("ranking.csv", ranking_to_csv(ranking, matches_ptr));

    std::string market_path = cfg.market_values;
    if (market_path.empty() && file_exists(join_path(cfg.out, "market_values.csv")))
        market_path = join_path(cfg.out, "market_values.csv");
    if (!market_path.empty()) {
        const std::string market_text = read_file(market_path);
        m.input(basename_of(market_path), market_text);
        const auto market = market_values_from_csv_text(market_text);
        const TestResult r = correlate_market_value(ranking, market);
        m.emit("market_correlation.csv", "name,statistic,p_value,n\n" + r.csv_line() + "\n");
    }
    m.write("score");
}

void stage_validate(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "validate");
    const std::string model_text = require_artifact(cfg, "model.txt", "train");
    const std::string training_text = require_artifact(cfg, "training.csv", "datasets");
    m.input("model.txt", model_text);
    m.input("training.csv", training_text);
    const TrainedModel model = model_from_text(model_text);
    const FeatureTable table = table_from_csv_text(training_text);
    if (table.a != model.a)
        throw ContractError("validate: table a=" + std::to_string(table.a) + " but model a=" +
                            std::to_string(model.a));

    const auto [train_idx, val_idx] = split_indices(table.rows.size(), model.split, model.seed);
    if (val_idx.size() < 3)
        throw ContractError("validate: validation split has fewer than 3 rows");
    std::vector<double> predictions, actuals, residuals;
    predictions.reserve(val_idx.size());
    for (size_t i : val_idx) {
        const FeatureRow& r = table.rows[i];
        if (!r.has_target) throw ContractError("validate: training table row lacks a target");
        const double pred = predict_raw(model, r.features);
        predictions.push_back(pred);
        actuals.push_back(r.target);
        residuals.push_back(pred - r.target);
    }

    std::string validation = "name,statistic,p_value,n\n";
    validation += levene_median(predictions, actuals).csv_line() + "\n";
    validation += ks_two_sample(predictions, actuals).csv_line() + "\n";
    validation += pearson(predictions, actuals).csv_line() + "\n";
    m.emit("validation.csv", validation);

    std::string qq = "theoretical,observed\n";
    for (const auto& [theo, obs] : qq_data(residuals))
        qq += fmt_g17(theo) + "," + fmt_g17(obs) + "\n";
    m.emit("qq.csv", qq);

    const std::vector<double> zeros(actuals.size(), 0.0);
    m.emit("metrics.csv",
           metrics_csv({{"model_mae", mae(predictions, actuals)},
                        {"zero_baseline_mae", mae(zeros, actuals)},
                        {"residual_fraction_within_0.05", fraction_within(residuals, -0.05, 0.05)}}));
    m.write("validate");
}

void stage_render(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "render");
    const std::string valued_text = require_artifact(cfg, "valued.csv", "value");
    m.input("valued.csv", valued_text);
    const auto valued = valued_from_csv_text(valued_text);

    std::vector<double> population;
    std::vector<ValuedAction> interceptions, tackles;
    for (const ValuedAction& v : valued) {
        population.push_back(v.daxt);
        (v.kind == ActionType::interception ? interceptions : tackles).push_back(v);
    }
    auto bins_for = [&](const std::vector<ValuedAction>& subset) {
        std::vector<double> values;
        values.reserve(subset.size());
        for (const ValuedAction& v : subset) values.push_back(v.daxt);
        return population.empty() ? std::vector<Bin>(subset.size(), Bin::red)
                                  : assign_bins(population, values);
    };
    m.emit("pitch_interceptions.svg", pitch_scatter_svg(interceptions, bins_for(interceptions)));
    m.emit("pitch_tackles.svg", pitch_scatter_svg(tackles, bins_for(tackles)));

    std::string market_path = cfg.market_values;
    if (market_path.empty() && file_exists(join_path(cfg.out, "market_values.csv")))
        market_path = join_path(cfg.out, "market_values.csv");
    const std::string ranking_path = join_path(cfg.out, "ranking.csv");
    if (!market_path.empty() && file_exists(ranking_path)) {
        const std::string market_text = read_file(market_path);
        const std::string ranking_text = read_file(ranking_path);
        m.input(basename_of(market_path), market_text);
        m.input("ranking.csv", ranking_text);
        const auto market = market_values_from_csv_text(market_text);
        const auto rows = csv::parse_rows(ranking_text);
        std::vector<double> sc, mv;
        for (size_t i = 1; i < rows.size(); ++i) {
            auto it = market.find(rows[i][0]);
            if (it == market.end()) continue;
            sc.push_back(std::strtod(rows[i][2].c_str(), nullptr));
            mv.push_back(it->second);
        }
        if (sc.size() >= 2)
            m.emit("scatter_market.svg",
                   scatter_regression_svg(sc, mv, "Defender score", "Market value (millions)"));
    }
    m.write("render");
}

void stage_sweep_a(const RunConfig& cfg) {
    ensure_out(cfg);
    Manifest m(cfg, "sweep-a");
    const std::string events_text = require_artifact(cfg, "events.csv", "synth or ingest");
    const std::string surface_text = require_artifact(cfg, "xt_surface.csv", "xt");
    m.input("events.csv", events_text);
    m.input("xt_surface.csv", surface_text);
    const auto games = parse_spadl_text(events_text);
    const XTSurface surface = surface_from_csv_text(surface_text);

    std::vector<long> training_rows, int_rows, tkl_rows;
    std::vector<double> train_mae, val_mae;
    for (int a = 1; a <= 3; ++a) {
        FeatureTable training = build_training_set(games, surface, a);
        const auto das = build_da_sets(games, surface, a);
        training_rows.push_back(static_cast<long>(training.rows.size()));
        int_rows.push_back(static_cast<long>(das.first.rows.size()));
        tkl_rows.push_back(static_cast<long>(das.second.rows.size()));
        const Scaler scaler = fit_scaler(training);
        transform_table(scaler, training);
        TrainConfig tc;
        tc.epochs = cfg.epochs;
        tc.batch = cfg.batch;
        tc.split = cfg.split;
        tc.seed = cfg.seed;
        const TrainedModel model = train(init_network(a, cfg.seed), training, scaler, tc);
        train_mae.push_back(model.history.back().train_mae);
        val_mae.push_back(model.history.back().val_mae);
    }

    std::string csv = "metric,a=1,a=2,a=3\n";
    auto long_row = [&](const char* name, const std::vector<long>& v) {
        csv += name;
        for (long x : v) csv += "," + std::to_string(x);
        csv += "\n";
    };
    auto real_row = [&](const char* name, const std::vector<double>& v) {
        csv += name;
        for (double x : v) csv += "," + fmt_g17(x);
        csv += "\n";
    };
    real_row("train_mae", train_mae);
    real_row("val_mae", val_mae);
    long_row("training_rows", training_rows);
    long_row("interception_rows", int_rows);
    long_row("tackle_rows", tkl_rows);
    m.emit("sweep_a.csv", csv);
    m.write("sweep-a");
}

void run_all(const RunConfig& cfg) {
    if (cfg.input.empty()) stage_synth(cfg);
    else stage_ingest(cfg);
    stage_xt(cfg);
    stage_datasets(cfg);
    stage_train(cfg);
    stage_value(cfg);
    stage_score(cfg);
    stage_validate(cfg);
    stage_render(cfg);
}

} // namespace daxt
