#pragma once

#include <map>
#include <string>
#include <vector>

#include "daxt/grid.hpp"
#include "daxt/stats.hpp"
#include "daxt/valuation.hpp"

namespace daxt {

enum class Position { center_back, full_back, defensive_midfielder, other };

const char* position_name(Position p);
Position position_from_name(const std::string& name);  // unknown names map to other

// Cumulative clearance/pass threat per player, plus how many distinct games
// the player appeared in (any action counts as an appearance).
struct CxtPxt {
    double cxt = 0.0;
    double pxt = 0.0;
    long appearances = 0;
};

std::map<std::string, CxtPxt> compute_cxt_pxt(const std::vector<GameStream>& games,
                                              const XTSurface& surface);

// 100 * (v - min) / (max - min) over the pool; all-equal pools map to 0.
std::vector<double> normalize_pool(const std::vector<double>& raw);

// Final score weighting. The default keeps the exact composite arithmetic:
// Sc = ((I_V + T_V + CxT) / 3 + PxT) / 4. Custom weights replace it with a
// plain weighted sum.
struct ScoreWeights {
    bool custom = false;
    double wi = 1.0 / 12.0;
    double wt = 1.0 / 12.0;
    double wc = 1.0 / 12.0;
    double wp = 1.0 / 4.0;
};

double defender_score(double iv, double tv, double cxt, double pxt);
double defender_score(double iv, double tv, double cxt, double pxt, const ScoreWeights& w);

struct DefenderScore {
    std::string player_id;
    Position position = Position::other;
    double iv = 0.0, tv = 0.0, cxt = 0.0, pxt = 0.0;  // normalized 0-100
    double sc = 0.0;
    long appearances = 0;
};

// Builds one position group's pool from raw cumulative features, normalizes
// each feature over the pool, and applies the score formula. Players must
// meet the appearance minimum to enter the pool at all.
std::vector<DefenderScore> score_position_group(const std::vector<PlayerDefStats>& def_stats,
                                                const std::map<std::string, CxtPxt>& cxt_pxt,
                                                const std::map<std::string, Position>& positions,
                                                Position group, long min_appearances,
                                                const ScoreWeights& weights);

// Descending score; ties break on player_id so output order is total.
void rank(std::vector<DefenderScore>& scores);

TestResult correlate_market_value(const std::vector<DefenderScore>& scores,
                                  const std::map<std::string, double>& market_values);

// player_id,position
std::map<std::string, Position> positions_from_csv_text(const std::string& text);
// player_id,player_name,market_value_millions
std::map<std::string, double> market_values_from_csv_text(const std::string& text);

// Optional per-player match info joined into the ranking output.
struct MatchInfo {
    long appearances = 0;
    double goals_conceded = 0.0;
};
std::map<std::string, MatchInfo> matches_from_csv_text(const std::string& text);

std::string ranking_to_csv(const std::vector<DefenderScore>& scores,
                           const std::map<std::string, MatchInfo>* matches = nullptr);

} // namespace daxt
