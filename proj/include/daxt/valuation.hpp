#pragma once

#include <string>
#include <vector>

#include "daxt/network.hpp"
#include "daxt/sequences.hpp"

namespace daxt {

// One defensive action with its predicted prevented-threat value.
struct ValuedAction {
    std::string game_id;
    int event_idx = 0;
    std::string player_id;
    ActionType kind = ActionType::interception;
    double x = 0.0, y = 0.0;  // where the DA happened
    double daxt = 0.0;        // may be negative: a stopped backward move
};

struct PlayerDefStats {
    std::string player_id;
    double interception_sum = 0.0;
    long interception_count = 0;
    double interception_avg = 0.0;
    double tackle_sum = 0.0;
    long tackle_count = 0;
    double tackle_avg = 0.0;
};

struct AggregateResult {
    std::vector<PlayerDefStats> all;        // every player, ordered by player_id
    std::vector<PlayerDefStats> qualified;  // the averages view after thresholds
};

// Tables reloaded from CSV lose the in-memory DA location; this joins it back
// from the event streams via (game_id, event_idx).
void rejoin_da_locations(FeatureTable& table, const std::vector<GameStream>& games);

// Scales each row with the model's scaler, runs the network, and
// inverse-transforms the output. Order-preserving; one result per row.
std::vector<ValuedAction> value_defensive_actions(const TrainedModel& model,
                                                  const FeatureTable& da_table);

namespace serial {
std::vector<ValuedAction> value_defensive_actions(const TrainedModel& model,
                                                  const FeatureTable& da_table);
}

// Sums, counts, and averages per player. The qualified view keeps players
// meeting both minimum counts; thresholding never changes the sums.
AggregateResult aggregate_players(const std::vector<ValuedAction>& valued,
                                  long min_interceptions = 100, long min_tackles = 50);

std::string valued_to_csv(const std::vector<ValuedAction>& valued);
std::vector<ValuedAction> valued_from_csv_text(const std::string& text);
std::string player_stats_to_csv(const std::vector<PlayerDefStats>& stats);

} // namespace daxt
