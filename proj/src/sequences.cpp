#include "daxt/sequences.hpp"

#include <cstdlib>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/util.hpp"

namespace daxt {

namespace {

bool window_ok(const std::vector<Action>& ev, size_t start, int a) {
    const Action& first = ev[start];
    for (size_t i = start; i < start + static_cast<size_t>(a); ++i) {
        const Action& e = ev[i];
        if (!is_moving(e.type) || e.result != Result::success) return false;
        if (e.team_id != first.team_id || e.period != first.period) return false;
    }
    return true;
}

void fill_features(FeatureRow& row, const std::vector<Action>& ev, size_t start, int a,
                   const XTSurface& surface) {
    row.features.reserve(static_cast<size_t>(3) * a);
    for (size_t i = start; i < start + static_cast<size_t>(a); ++i) {
        const Action& e = ev[i];
        row.features.push_back(action_xt(surface, e));
        row.features.push_back(e.start_x);
        row.features.push_back(e.start_y);
    }
}

void scan_training(const GameStream& g, const XTSurface& surface, int a,
                   std::vector<FeatureRow>& out) {
    const auto& ev = g.actions;
    if (ev.size() < static_cast<size_t>(a) + 1) return;
    for (size_t i = 0; i + a < ev.size(); ++i) {
        if (!window_ok(ev, i, a)) continue;
        const Action& tgt = ev[i + a];
        if (!is_moving(tgt.type) || tgt.result != Result::success) continue;
        if (tgt.team_id != ev[i].team_id || tgt.period != ev[i].period) continue;
        FeatureRow row;
        fill_features(row, ev, i, a, surface);
        row.target = action_xt(surface, tgt);
        row.has_target = true;
        row.game_id = g.game_id;
        row.event_idx = static_cast<int>(i + a);
        row.player_id = tgt.player_id;
        out.push_back(std::move(row));
    }
}

bool is_da(const Action& e) {
    return is_defensive(e.type) && e.result == Result::success;
}

void scan_da(const GameStream& g, const XTSurface& surface, int a,
             std::vector<FeatureRow>& interceptions, std::vector<FeatureRow>& tackles) {
    const auto& ev = g.actions;
    for (size_t i = 0; i + a < ev.size(); ++i) {
        if (!window_ok(ev, i, a)) continue;
        const std::string& team = ev[i].team_id;
        const int period = ev[i].period;

        const Action* da = nullptr;
        size_t da_idx = 0;
        const Action& next = ev[i + a];
        if (next.period != period) continue;
        if (is_da(next) && next.team_id != team) {
            da = &next;
            da_idx = i + a;
        } else if (next.team_id == team && next.result == Result::fail &&
                   !is_defensive(next.type) && i + a + 1 < ev.size()) {
            const Action& after = ev[i + a + 1];
            if (after.period == period && is_da(after) && after.team_id != team) {
                da = &after;
                da_idx = i + a + 1;
            }
        }
        if (!da) continue;

        FeatureRow row;
        fill_features(row, ev, i, a, surface);
        row.has_target = false;
        row.game_id = g.game_id;
        row.event_idx = static_cast<int>(da_idx);
        row.player_id = da->player_id;
        row.da_kind = da->type;
        row.da_x = da->start_x;
        row.da_y = da->start_y;
        if (da->type == ActionType::interception)
            interceptions.push_back(std::move(row));
        else
            tackles.push_back(std::move(row));
    }
}

void check_a(int a) {
    if (a < 1) throw ContractError("sequence window length a must be at least 1");
}

} // namespace

namespace serial {

FeatureTable build_training_set(const std::vector<GameStream>& games, const XTSurface& surface, int a) {
    check_a(a);
    FeatureTable t;
    t.a = a;
    for (const GameStream& g : games) scan_training(g, surface, a, t.rows);
    return t;
}

std::pair<FeatureTable, FeatureTable> build_da_sets(const std::vector<GameStream>& games,
                                                    const XTSurface& surface, int a) {
    check_a(a);
    FeatureTable ints, tks;
    ints.a = a;
    tks.a = a;
    for (const GameStream& g : games) scan_da(g, surface, a, ints.rows, tks.rows);
    return {std::move(ints), std::move(tks)};
}

} // namespace serial

FeatureTable build_training_set(const std::vector<GameStream>& games, const XTSurface& surface, int a) {
    check_a(a);
    std::vector<std::vector<FeatureRow>> slots(games.size());
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < static_cast<long>(games.size()); ++i)
        scan_training(games[static_cast<size_t>(i)], surface, a, slots[static_cast<size_t>(i)]);
    FeatureTable t;
    t.a = a;
    for (auto& s : slots)
        for (auto& r : s) t.rows.push_back(std::move(r));
    return t;
}

std::pair<FeatureTable, FeatureTable> build_da_sets(const std::vector<GameStream>& games,
                                                    const XTSurface& surface, int a) {
    check_a(a);
    std::vector<std::vector<FeatureRow>> int_slots(games.size()), tk_slots(games.size());
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < static_cast<long>(games.size()); ++i)
        scan_da(games[static_cast<size_t>(i)], surface, a,
                int_slots[static_cast<size_t>(i)], tk_slots[static_cast<size_t>(i)]);
    FeatureTable ints, tks;
    ints.a = a;
    tks.a = a;
    for (auto& s : int_slots)
        for (auto& r : s) ints.rows.push_back(std::move(r));
    for (auto& s : tk_slots)
        for (auto& r : s) tks.rows.push_back(std::move(r));
    return {std::move(ints), std::move(tks)};
}

std::string table_to_csv(const FeatureTable& t) {
    std::string out;
    for (size_t c = 1; c <= t.n_features(); ++c) {
        out += 'f';
        out += std::to_string(c);
        out += ',';
    }
    out += "target,game_id,event_idx,player_id\n";
    for (const FeatureRow& r : t.rows) {
        if (r.features.size() != t.n_features())
            throw ContractError("table_to_csv: row feature count does not match table a");
        for (double v : r.features) {
            out += fmt_g17(v);
            out += ',';
        }
        if (r.has_target) out += fmt_g17(r.target);
        out += ',';
        out += csv::escape(r.game_id);
        out += ',';
        out += std::to_string(r.event_idx);
        out += ',';
        out += csv::escape(r.player_id);
        out += '\n';
    }
    return out;
}

FeatureTable table_from_csv_text(const std::string& text) {
    auto rows = csv::parse_rows(text);
    if (rows.empty()) throw IoError("feature table csv: empty");
    const auto& header = rows[0];
    if (header.size() < 5 || header[0] != "f1" || header[header.size() - 4] != "target" ||
        header[header.size() - 3] != "game_id" || header[header.size() - 2] != "event_idx" ||
        header[header.size() - 1] != "player_id")
        throw IoError("feature table csv: bad header");
    const size_t nf = header.size() - 4;
    if (nf % 3 != 0) throw IoError("feature table csv: feature count not a multiple of 3");
    FeatureTable t;
    t.a = static_cast<int>(nf / 3);
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& cells = rows[i];
        if (cells.size() != header.size())
            throw IoError("feature table csv: row " + std::to_string(i) + " has wrong field count");
        FeatureRow r;
        r.features.reserve(nf);
        for (size_t c = 0; c < nf; ++c) r.features.push_back(std::strtod(cells[c].c_str(), nullptr));
        if (!cells[nf].empty()) {
            r.target = std::strtod(cells[nf].c_str(), nullptr);
            r.has_target = true;
        }
        r.game_id = cells[nf + 1];
        r.event_idx = std::atoi(cells[nf + 2].c_str());
        r.player_id = cells[nf + 3];
        t.rows.push_back(std::move(r));
    }
    return t;
}

} // namespace daxt
