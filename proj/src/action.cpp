#include "daxt/action.hpp"

#include <algorithm>

namespace daxt {

namespace {
const char* kTypeNames[] = {"pass",      "dribble",      "cross",  "shot",
                            "clearance", "interception", "tackle", "other"};
}

const char* action_type_name(ActionType t) { return kTypeNames[static_cast<int>(t)]; }

ActionType action_type_from_name(const std::string& name) {
    for (int i = 0; i < 8; ++i)
        if (name == kTypeNames[i]) return static_cast<ActionType>(i);
    return ActionType::other;
}

bool is_known_type_name(const std::string& name) {
    for (int i = 0; i < 8; ++i)
        if (name == kTypeNames[i]) return true;
    return false;
}

bool Action::operator==(const Action& o) const {
    return game_id == o.game_id && period == o.period && time_seconds == o.time_seconds &&
           team_id == o.team_id && player_id == o.player_id && start_x == o.start_x &&
           start_y == o.start_y && end_x == o.end_x && end_y == o.end_y && type == o.type &&
           result == o.result;
}

void clamp_to_pitch(double& x, double& y, bool* clamped) {
    auto clamp1 = [&](double& v, double hi) {
        if (v < 0.0) { v = 0.0; if (clamped) *clamped = true; }
        if (v > hi)  { v = hi;  if (clamped) *clamped = true; }
    };
    clamp1(x, kPitchLength);
    clamp1(y, kPitchWidth);
}

void sort_stream(GameStream& game) {
    std::stable_sort(game.actions.begin(), game.actions.end(), [](const Action& a, const Action& b) {
        if (a.period != b.period) return a.period < b.period;
        return a.time_seconds < b.time_seconds;
    });
}

void collect_teams(GameStream& game) {
    game.team_ids.clear();
    for (const Action& a : game.actions) {
        if (std::find(game.team_ids.begin(), game.team_ids.end(), a.team_id) == game.team_ids.end())
            game.team_ids.push_back(a.team_id);
    }
}

StreamDiagnostics validate_stream(const GameStream& game) {
    StreamDiagnostics d;
    const auto& as = game.actions;
    if (as.empty()) d.zero_length = 1;
    // Pairwise inversion count, so a single swapped pair reports exactly 1.
    for (size_t i = 0; i < as.size(); ++i) {
        for (size_t j = i + 1; j < as.size(); ++j) {
            if (as[j].period < as[i].period ||
                (as[j].period == as[i].period && as[j].time_seconds < as[i].time_seconds))
                ++d.out_of_order;
        }
    }
    for (const Action& a : as) {
        if (!a.type_name.empty() && !is_known_type_name(a.type_name)) ++d.unknown_type;
        if (a.clamped) ++d.clamped;
    }
    return d;
}

} // namespace daxt
