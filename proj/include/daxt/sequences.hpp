#pragma once

#include <string>
#include <vector>

#include "daxt/action.hpp"
#include "daxt/grid.hpp"

namespace daxt {

// One extracted window. Features are (xT_1, x_1, y_1, ..., xT_a, x_a, y_a)
// where xT_i is the threat delta of action i and (x_i, y_i) its start point.
// Training rows carry the next action's threat delta as target; rows built
// ahead of a defensive action carry the defender and the DA location instead.
struct FeatureRow {
    std::vector<double> features;
    double target = 0.0;
    bool has_target = false;
    std::string game_id;
    int event_idx = 0;        // terminal event: target action, or the DA itself
    std::string player_id;    // terminal actor (training) / defender (DA rows)

    // DA rows only, not exported in the table CSV; the valuation stage joins
    // location back from the event stream via (game_id, event_idx).
    ActionType da_kind = ActionType::other;
    double da_x = 0.0;
    double da_y = 0.0;
};

struct FeatureTable {
    int a = 0;
    std::vector<FeatureRow> rows;

    size_t n_features() const { return static_cast<size_t>(3) * a; }
};

// Training windows: a+1 adjacent actions, all successful moving types, same
// team, same period. Features come from the first a, the target from the last.
FeatureTable build_training_set(const std::vector<GameStream>& games, const XTSurface& surface, int a);

// Defensive-action windows: a adjacent successful same-team moving actions
// followed by a successful interception/tackle by the other team, either
// immediately or after exactly one failed action by the attacking team.
// Returns (interceptions, tackles).
std::pair<FeatureTable, FeatureTable> build_da_sets(const std::vector<GameStream>& games,
                                                    const XTSurface& surface, int a);

namespace serial {
FeatureTable build_training_set(const std::vector<GameStream>& games, const XTSurface& surface, int a);
std::pair<FeatureTable, FeatureTable> build_da_sets(const std::vector<GameStream>& games,
                                                    const XTSurface& surface, int a);
}

// CSV round-trip. Header is f1..f3a,target,game_id,event_idx,player_id; DA
// rows leave the target field empty.
std::string table_to_csv(const FeatureTable& t);
FeatureTable table_from_csv_text(const std::string& text);

} // namespace daxt
