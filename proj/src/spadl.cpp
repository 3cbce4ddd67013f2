#include "daxt/spadl.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/util.hpp"

namespace daxt {

const char* kSpadlHeader =
    "game_id,period,time_seconds,team_id,player_id,start_x,start_y,end_x,end_y,result_id,"
    "type_name,player_name";

std::string ParseDiagnostics::summary() const {
    std::ostringstream os;
    os << "parsed " << rows_parsed << " rows"
       << ", rejected " << rows_rejected
       << ", clamped " << clamped
       << ", unknown types " << unknown_types;
    return os.str();
}

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    out = std::strtod(c, &end);
    return end != c && *end == '\0';
}

bool parse_int(const std::string& s, long& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    out = std::strtol(c, &end, 10);
    return end != c && *end == '\0';
}

} // namespace

std::vector<GameStream> parse_spadl_text(const std::string& text, ParseDiagnostics* diag) {
    ParseDiagnostics local;
    ParseDiagnostics& d = diag ? *diag : local;
    d = ParseDiagnostics{};

    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ContractError("SPADL CSV: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = csv::split_line(line);
    const char* required[] = {"game_id", "period",  "time_seconds", "team_id",
                              "player_id", "start_x", "start_y",    "end_x",
                              "end_y",     "result_id", "type_name"};
    std::map<std::string, int> col;
    for (size_t i = 0; i < header.size(); ++i) col[trim(header[i])] = static_cast<int>(i);
    for (const char* name : required)
        if (!col.count(name)) throw ContractError(std::string("SPADL CSV: missing required column: ") + name);
    const bool has_player_name = col.count("player_name") > 0;

    std::vector<GameStream> games;
    std::map<std::string, size_t> game_index;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = csv::split_line(line);
        if (cells.size() < header.size()) {
            ++d.rows_rejected;
            continue;
        }
        auto cell = [&](const char* name) -> const std::string& { return cells[col[name]]; };

        Action a;
        long period = 0, result_id = 0;
        bool ok = parse_int(cell("period"), period) &&
                  parse_double(cell("time_seconds"), a.time_seconds) &&
                  parse_double(cell("start_x"), a.start_x) &&
                  parse_double(cell("start_y"), a.start_y) &&
                  parse_double(cell("end_x"), a.end_x) &&
                  parse_double(cell("end_y"), a.end_y) &&
                  parse_int(cell("result_id"), result_id);
        if (!ok) {
            ++d.rows_rejected;
            continue;
        }
        a.game_id = cell("game_id");
        a.period = static_cast<int>(period);
        a.team_id = cell("team_id");
        a.player_id = cell("player_id");
        a.result = (result_id == 1) ? Result::success : Result::fail;
        a.type_name = trim(cell("type_name"));
        a.type = action_type_from_name(a.type_name);
        if (!is_known_type_name(a.type_name)) ++d.unknown_types;
        if (has_player_name) a.player_name = cell("player_name");

        clamp_to_pitch(a.start_x, a.start_y, &a.clamped);
        clamp_to_pitch(a.end_x, a.end_y, &a.clamped);
        if (a.clamped) ++d.clamped;

        auto it = game_index.find(a.game_id);
        if (it == game_index.end()) {
            game_index.emplace(a.game_id, games.size());
            games.push_back(GameStream{a.game_id, {}, {}});
            it = game_index.find(a.game_id);
        }
        games[it->second].actions.push_back(std::move(a));
        ++d.rows_parsed;
    }

    for (GameStream& g : games) {
        sort_stream(g);
        collect_teams(g);
    }
    return games;
}

std::vector<GameStream> parse_spadl_csv(const std::string& path, ParseDiagnostics* diag) {
    return parse_spadl_text(read_file(path), diag);
}

std::string spadl_to_csv(const std::vector<GameStream>& games) {
    std::string out = kSpadlHeader;
    out += '\n';
    for (const GameStream& g : games) {
        for (const Action& a : g.actions) {
            std::vector<std::string> cells = {
                a.game_id,
                std::to_string(a.period),
                fmt_g17(a.time_seconds),
                a.team_id,
                a.player_id,
                fmt_g17(a.start_x),
                fmt_g17(a.start_y),
                fmt_g17(a.end_x),
                fmt_g17(a.end_y),
                a.result == Result::success ? "1" : "0",
                action_type_name(a.type),
                a.player_name,
            };
            out += csv::join(cells);
            out += '\n';
        }
    }
    return out;
}

void write_spadl_csv(const std::vector<GameStream>& games, const std::string& path) {
    write_file(path, spadl_to_csv(games));
}

std::string corpus_fingerprint(const std::vector<GameStream>& games) {
    return to_hex(fnv1a64(spadl_to_csv(games)));
}

} // namespace daxt
