#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daxt/action.hpp"

namespace daxt {

// Knobs for the possession simulator. Defaults are tuned so type frequencies
// look like real event feeds: passes dominate, shots stay under 5%.
struct SynthConfig {
    int n_teams = 20;
    int players_per_team = 11;
    double half_length_seconds = 2700.0;
    double tackle_rate = 0.045;     // chance a possession step is ended by a tackle
    double intercept_rate = 0.5;    // chance a failed pass is credited as an interception
    double clearance_rate = 0.5;    // chance a deep-own-half step is a clearance
    double clearance_retain = 0.55; // chance a successful clearance keeps possession
};

struct SynthPlayer {
    std::string player_id;
    std::string team_id;
    std::string position;   // center_back | full_back | defensive_midfielder | other
    double activity = 1.0;  // defensive involvement weight, drives DA attribution
    double market_value_millions = 0.0;
};

// League roster derived from the seed alone; identical across corpus sizes.
std::vector<SynthPlayer> synthetic_league(uint64_t seed, const SynthConfig& cfg = {});

// Possession-alternating simulator. Identical (n_games, seed) gives
// byte-identical output; single-threaded on purpose.
std::vector<GameStream> generate_synthetic_corpus(int n_games, uint64_t seed,
                                                  const SynthConfig& cfg = {});

// Sidecar files for the scoring stage of synthetic runs.
std::string league_positions_csv(const std::vector<SynthPlayer>& league);
std::string league_market_values_csv(const std::vector<SynthPlayer>& league);

} // namespace daxt
