#include "daxt/valuation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/util.hpp"

namespace daxt {

void rejoin_da_locations(FeatureTable& table, const std::vector<GameStream>& games) {
    std::map<std::string, const GameStream*> by_id;
    for (const GameStream& g : games) by_id[g.game_id] = &g;
    for (FeatureRow& r : table.rows) {
        auto it = by_id.find(r.game_id);
        if (it == by_id.end())
            throw ContractError("rejoin_da_locations: unknown game " + r.game_id);
        const auto& ev = it->second->actions;
        if (r.event_idx < 0 || static_cast<size_t>(r.event_idx) >= ev.size())
            throw ContractError("rejoin_da_locations: event index out of range in game " + r.game_id);
        const Action& a = ev[static_cast<size_t>(r.event_idx)];
        if (!is_defensive(a.type))
            throw ContractError("rejoin_da_locations: event " + std::to_string(r.event_idx) +
                                " in game " + r.game_id + " is not a defensive action");
        r.da_kind = a.type;
        r.da_x = a.start_x;
        r.da_y = a.start_y;
    }
}

namespace {

ValuedAction value_row(const TrainedModel& model, const FeatureRow& r) {
    if (r.features.size() != model.scaler.n_features())
        throw ContractError("value_defensive_actions: row has " + std::to_string(r.features.size()) +
                            " features, model expects " + std::to_string(model.scaler.n_features()));
    ValuedAction v;
    v.game_id = r.game_id;
    v.event_idx = r.event_idx;
    v.player_id = r.player_id;
    v.kind = r.da_kind;
    v.x = r.da_x;
    v.y = r.da_y;
    v.daxt = predict_raw(model, r.features);
    return v;
}

} // namespace

namespace serial {
std::vector<ValuedAction> value_defensive_actions(const TrainedModel& model,
                                                  const FeatureTable& da_table) {
    std::vector<ValuedAction> out;
    out.reserve(da_table.rows.size());
    for (const FeatureRow& r : da_table.rows) out.push_back(value_row(model, r));
    return out;
}
} // namespace serial

std::vector<ValuedAction> value_defensive_actions(const TrainedModel& model,
                                                  const FeatureTable& da_table) {
    // validate up front: a throw must not escape the parallel region
    for (const FeatureRow& r : da_table.rows)
        if (r.features.size() != model.scaler.n_features())
            throw ContractError("value_defensive_actions: row has " +
                                std::to_string(r.features.size()) + " features, model expects " +
                                std::to_string(model.scaler.n_features()));
    std::vector<ValuedAction> out(da_table.rows.size());
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < static_cast<long>(da_table.rows.size()); ++i)
        out[static_cast<size_t>(i)] = value_row(model, da_table.rows[static_cast<size_t>(i)]);
    return out;
}

AggregateResult aggregate_players(const std::vector<ValuedAction>& valued,
                                  long min_interceptions, long min_tackles) {
    std::map<std::string, PlayerDefStats> by_player;
    for (const ValuedAction& v : valued) {
        PlayerDefStats& s = by_player[v.player_id];
        s.player_id = v.player_id;
        if (v.kind == ActionType::interception) {
            s.interception_sum += v.daxt;
            s.interception_count += 1;
        } else if (v.kind == ActionType::tackle) {
            s.tackle_sum += v.daxt;
            s.tackle_count += 1;
        } else {
            throw ContractError("aggregate_players: valued action of non-defensive kind");
        }
    }
    AggregateResult res;
    for (auto& [id, s] : by_player) {
        if (s.interception_count > 0)
            s.interception_avg = s.interception_sum / static_cast<double>(s.interception_count);
        if (s.tackle_count > 0) s.tackle_avg = s.tackle_sum / static_cast<double>(s.tackle_count);
        res.all.push_back(s);
        if (s.interception_count >= min_interceptions && s.tackle_count >= min_tackles)
            res.qualified.push_back(s);
    }
    return res;
}

std::string valued_to_csv(const std::vector<ValuedAction>& valued) {
    std::string out = "game_id,event_idx,player_id,kind,x,y,daxt\n";
    for (const ValuedAction& v : valued) {
        out += csv::escape(v.game_id);
        out += ',';
        out += std::to_string(v.event_idx);
        out += ',';
        out += csv::escape(v.player_id);
        out += ',';
        out += action_type_name(v.kind);
        out += ',';
        out += fmt_g17(v.x);
        out += ',';
        out += fmt_g17(v.y);
        out += ',';
        out += fmt_g17(v.daxt);
        out += '\n';
    }
    return out;
}

std::vector<ValuedAction> valued_from_csv_text(const std::string& text) {
    auto rows = csv::parse_rows(text);
    const std::vector<std::string> header = {"game_id", "event_idx", "player_id",
                                             "kind",    "x",         "y",
                                             "daxt"};
    if (rows.empty() || rows[0] != header) throw IoError("valued actions csv: bad header");
    std::vector<ValuedAction> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != header.size())
            throw IoError("valued actions csv: row " + std::to_string(i) + " malformed");
        ValuedAction v;
        v.game_id = rows[i][0];
        v.event_idx = std::atoi(rows[i][1].c_str());
        v.player_id = rows[i][2];
        v.kind = action_type_from_name(rows[i][3]);
        if (!is_defensive(v.kind))
            throw IoError("valued actions csv: row " + std::to_string(i) + " has non-defensive kind");
        v.x = std::strtod(rows[i][4].c_str(), nullptr);
        v.y = std::strtod(rows[i][5].c_str(), nullptr);
        v.daxt = std::strtod(rows[i][6].c_str(), nullptr);
        out.push_back(std::move(v));
    }
    return out;
}

std::string player_stats_to_csv(const std::vector<PlayerDefStats>& stats) {
    std::string out =
        "player_id,interception_sum,interception_count,interception_avg,"
        "tackle_sum,tackle_count,tackle_avg\n";
    for (const PlayerDefStats& s : stats) {
        out += csv::escape(s.player_id);
        out += ',';
        out += fmt_g17(s.interception_sum);
        out += ',';
        out += std::to_string(s.interception_count);
        out += ',';
        out += fmt_g17(s.interception_avg);
        out += ',';
        out += fmt_g17(s.tackle_sum);
        out += ',';
        out += std::to_string(s.tackle_count);
        out += ',';
        out += fmt_g17(s.tackle_avg);
        out += '\n';
    }
    return out;
}

} // namespace daxt
