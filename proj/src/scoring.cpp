#include "daxt/scoring.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/util.hpp"

namespace daxt {

const char* position_name(Position p) {
    switch (p) {
        case Position::center_back: return "center_back";
        case Position::full_back: return "full_back";
        case Position::defensive_midfielder: return "defensive_midfielder";
        default: return "other";
    }
}

Position position_from_name(const std::string& name) {
    if (name == "center_back") return Position::center_back;
    if (name == "full_back") return Position::full_back;
    if (name == "defensive_midfielder") return Position::defensive_midfielder;
    return Position::other;
}

std::map<std::string, CxtPxt> compute_cxt_pxt(const std::vector<GameStream>& games,
                                              const XTSurface& surface) {
    std::map<std::string, CxtPxt> out;
    std::map<std::string, std::set<std::string>> games_seen;
    for (const GameStream& g : games) {
        for (const Action& a : g.actions) {
            games_seen[a.player_id].insert(g.game_id);
            if (a.result != Result::success) continue;
            if (a.type == ActionType::clearance)
                out[a.player_id].cxt += action_xt(surface, a);
            else if (a.type == ActionType::pass)
                out[a.player_id].pxt += action_xt(surface, a);
        }
    }
    for (auto& [id, seen] : games_seen)
        out[id].appearances = static_cast<long>(seen.size());
    return out;
}

std::vector<double> normalize_pool(const std::vector<double>& raw) {
    if (raw.empty()) throw ContractError("normalize_pool: empty pool");
    double lo = raw[0], hi = raw[0];
    for (double v : raw) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<double> out(raw.size(), 0.0);
    if (hi == lo) return out;
    for (size_t i = 0; i < raw.size(); ++i) out[i] = 100.0 * (raw[i] - lo) / (hi - lo);
    return out;
}

double defender_score(double iv, double tv, double cxt, double pxt) {
    return ((iv + tv + cxt) / 3.0 + pxt) / 4.0;
}

double defender_score(double iv, double tv, double cxt, double pxt, const ScoreWeights& w) {
    if (!w.custom) return defender_score(iv, tv, cxt, pxt);
    return w.wi * iv + w.wt * tv + w.wc * cxt + w.wp * pxt;
}

std::vector<DefenderScore> score_position_group(const std::vector<PlayerDefStats>& def_stats,
                                                const std::map<std::string, CxtPxt>& cxt_pxt,
                                                const std::map<std::string, Position>& positions,
                                                Position group, long min_appearances,
                                                const ScoreWeights& weights) {
    std::vector<DefenderScore> pool;
    std::vector<double> raw_iv, raw_tv, raw_cxt, raw_pxt;
    for (const PlayerDefStats& s : def_stats) {
        auto pos_it = positions.find(s.player_id);
        const Position pos = pos_it == positions.end() ? Position::other : pos_it->second;
        if (pos != group) continue;
        auto cp_it = cxt_pxt.find(s.player_id);
        const CxtPxt cp = cp_it == cxt_pxt.end() ? CxtPxt{} : cp_it->second;
        if (cp.appearances < min_appearances) continue;
        DefenderScore d;
        d.player_id = s.player_id;
        d.position = pos;
        d.appearances = cp.appearances;
        pool.push_back(d);
        raw_iv.push_back(s.interception_sum);
        raw_tv.push_back(s.tackle_sum);
        raw_cxt.push_back(cp.cxt);
        raw_pxt.push_back(cp.pxt);
    }
    if (pool.empty()) return pool;
    const auto niv = normalize_pool(raw_iv);
    const auto ntv = normalize_pool(raw_tv);
    const auto ncxt = normalize_pool(raw_cxt);
    const auto npxt = normalize_pool(raw_pxt);
    for (size_t i = 0; i < pool.size(); ++i) {
        pool[i].iv = niv[i];
        pool[i].tv = ntv[i];
        pool[i].cxt = ncxt[i];
        pool[i].pxt = npxt[i];
        pool[i].sc = defender_score(niv[i], ntv[i], ncxt[i], npxt[i], weights);
    }
    return pool;
}

void rank(std::vector<DefenderScore>& scores) {
    std::sort(scores.begin(), scores.end(), [](const DefenderScore& a, const DefenderScore& b) {
        if (a.sc != b.sc) return a.sc > b.sc;
        return a.player_id < b.player_id;
    });
}

TestResult correlate_market_value(const std::vector<DefenderScore>& scores,
                                  const std::map<std::string, double>& market_values) {
    std::vector<double> sc, mv;
    for (const DefenderScore& d : scores) {
        auto it = market_values.find(d.player_id);
        if (it == market_values.end()) continue;
        sc.push_back(d.sc);
        mv.push_back(it->second);
    }
    if (sc.size() < 3)
        throw ContractError("correlate_market_value: needs at least 3 players with market values, have " +
                            std::to_string(sc.size()));
    TestResult r = pearson(sc, mv);
    r.name = "market_value_pearson";
    return r;
}

std::map<std::string, Position> positions_from_csv_text(const std::string& text) {
    auto rows = csv::parse_rows(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"player_id", "position"})
        throw IoError("positions csv: bad header");
    std::map<std::string, Position> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2) throw IoError("positions csv: row " + std::to_string(i) + " malformed");
        out[rows[i][0]] = position_from_name(rows[i][1]);
    }
    return out;
}

std::map<std::string, double> market_values_from_csv_text(const std::string& text) {
    auto rows = csv::parse_rows(text);
    if (rows.empty() ||
        rows[0] != std::vector<std::string>{"player_id", "player_name", "market_value_millions"})
        throw IoError("market values csv: bad header");
    std::map<std::string, double> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3)
            throw IoError("market values csv: row " + std::to_string(i) + " malformed");
        out[rows[i][0]] = std::strtod(rows[i][2].c_str(), nullptr);
    }
    return out;
}

std::map<std::string, MatchInfo> matches_from_csv_text(const std::string& text) {
    auto rows = csv::parse_rows(text);
    if (rows.empty() ||
        rows[0] != std::vector<std::string>{"player_id", "appearances", "goals_conceded"})
        throw IoError("matches csv: bad header");
    std::map<std::string, MatchInfo> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3) throw IoError("matches csv: row " + std::to_string(i) + " malformed");
        MatchInfo m;
        m.appearances = std::atol(rows[i][1].c_str());
        m.goals_conceded = std::strtod(rows[i][2].c_str(), nullptr);
        out[rows[i][0]] = m;
    }
    return out;
}

std::string ranking_to_csv(const std::vector<DefenderScore>& scores,
                           const std::map<std::string, MatchInfo>* matches) {
    std::string out = "player_id,position,score,iv,tv,cxt,pxt,goals_conceded,appearances,gc_per_appearance\n";
    for (const DefenderScore& d : scores) {
        out += csv::escape(d.player_id);
        out += ',';
        out += position_name(d.position);
        out += ',';
        out += fmt_g17(d.sc);
        out += ',';
        out += fmt_g17(d.iv);
        out += ',';
        out += fmt_g17(d.tv);
        out += ',';
        out += fmt_g17(d.cxt);
        out += ',';
        out += fmt_g17(d.pxt);
        out += ',';
        const MatchInfo* mi = nullptr;
        if (matches) {
            auto it = matches->find(d.player_id);
            if (it != matches->end()) mi = &it->second;
        }
        if (mi) {
            out += fmt_g17(mi->goals_conceded);
            out += ',';
            out += std::to_string(mi->appearances);
            out += ',';
            out += mi->appearances > 0 ? fmt_g17(mi->goals_conceded / static_cast<double>(mi->appearances))
                                       : std::string();
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

} // namespace daxt
