#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daxt/action.hpp"

namespace daxt {

// Effective settings for a pipeline run. Every field has a CLI flag; a flat
// key=value config file can preload them, with explicit flags winning.
struct RunConfig {
    std::string input;          // SPADL CSV path; empty means synthesize
    int synth_games = 50;
    std::uint64_t seed = 7;
    int a = 2;
    double xt_tol = 1e-6;
    int xt_max_iter = 100;
    int epochs = 50;
    int batch = 32;
    double split = 0.2;
    long min_interceptions = 100;
    long min_tackles = 50;
    long min_appearances = 1;
    std::string positions;       // player_id,position CSV
    std::string market_values;   // player_id,player_name,market_value_millions CSV
    std::string matches;         // player_id,appearances,goals_conceded CSV
    std::string weights = "default";  // or "wi,wt,wc,wp"
    std::string out = ".";
};

// Stage entry points. Each writes its artifacts plus a manifest into
// cfg.out and reads prior-stage artifacts from the same directory. A missing
// prerequisite raises an I/O error naming the file and the producing command.
void stage_synth(const RunConfig& cfg);
void stage_ingest(const RunConfig& cfg);
void stage_xt(const RunConfig& cfg);
void stage_datasets(const RunConfig& cfg);
void stage_train(const RunConfig& cfg);
void stage_value(const RunConfig& cfg);
void stage_score(const RunConfig& cfg);
void stage_validate(const RunConfig& cfg);
void stage_render(const RunConfig& cfg);
void stage_sweep_a(const RunConfig& cfg);
void run_all(const RunConfig& cfg);

// Reads {out}/events.csv back into game streams.
std::vector<GameStream> load_pipeline_events(const RunConfig& cfg);

std::string join_path(const std::string& dir, const std::string& name);
std::string basename_of(const std::string& path);

} // namespace daxt
