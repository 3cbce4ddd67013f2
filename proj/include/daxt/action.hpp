#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace daxt {

constexpr double kPitchLength = 105.0; // meters, attack direction is +x
constexpr double kPitchWidth = 68.0;

enum class ActionType { pass, dribble, cross, shot, clearance, interception, tackle, other };
enum class Result { fail = 0, success = 1 };

const char* action_type_name(ActionType t);
// Names outside the enumeration map to `other`.
ActionType action_type_from_name(const std::string& name);
bool is_known_type_name(const std::string& name);

// Moving actions carry an xT value; interceptions and tackles do not.
inline bool is_moving(ActionType t) {
    return t == ActionType::pass || t == ActionType::dribble || t == ActionType::cross ||
           t == ActionType::clearance;
}

inline bool is_defensive(ActionType t) {
    return t == ActionType::interception || t == ActionType::tackle;
}

// One SPADL-style event row. Coordinates are orientation-normalized: the
// acting team always attacks toward x = 105.
struct Action {
    std::string game_id;
    int period = 1;
    double time_seconds = 0.0;
    std::string team_id;
    std::string player_id;
    double start_x = 0.0, start_y = 0.0;
    double end_x = 0.0, end_y = 0.0;
    ActionType type = ActionType::other;
    Result result = Result::fail;

    std::string type_name;   // raw type string as ingested (unknown names keep their spelling)
    std::string player_name;
    bool clamped = false;    // any coordinate clamped to pitch bounds at ingestion

    bool operator==(const Action& o) const;
};

struct GameStream {
    std::string game_id;
    std::vector<Action> actions;
    std::vector<std::string> team_ids; // distinct, in order of first appearance
};

struct StreamDiagnostics {
    size_t out_of_order = 0;  // (period, time) inversions, counted pairwise
    size_t unknown_type = 0;  // raw type names outside the enumeration
    size_t clamped = 0;       // actions with clamped coordinates
    size_t zero_length = 0;   // 1 if the game has no actions

    size_t total() const { return out_of_order + unknown_type + clamped + zero_length; }
};

// Pure report; does not modify the stream.
StreamDiagnostics validate_stream(const GameStream& game);

// Stable sort by (period, time_seconds); ties keep input order.
void sort_stream(GameStream& game);

// Clamp a coordinate pair into the pitch; sets *clamped when it moved.
void clamp_to_pitch(double& x, double& y, bool* clamped);

// Rebuilds team_ids from the action list (first-appearance order).
void collect_teams(GameStream& game);

} // namespace daxt
