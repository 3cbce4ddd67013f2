#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "daxt/action.hpp"
#include "daxt/errors.hpp"
#include "daxt/spadl.hpp"
#include "daxt/synthetic.hpp"

using namespace daxt;

namespace {

std::string spadl(const std::string& body) { return std::string(kSpadlHeader) + "\n" + body; }

Action simple_action(int period, double t, const std::string& team, ActionType type) {
    Action a;
    a.game_id = "G1";
    a.period = period;
    a.time_seconds = t;
    a.team_id = team;
    a.player_id = team + "P1";
    a.type = type;
    a.type_name = action_type_name(type);
    a.result = Result::success;
    a.start_x = 30.0;
    a.start_y = 30.0;
    a.end_x = 40.0;
    a.end_y = 30.0;
    return a;
}

} // namespace

TEST_CASE("action type names round-trip and unknown names fall back to other") {
    for (ActionType t : {ActionType::pass, ActionType::dribble, ActionType::cross, ActionType::shot,
                         ActionType::clearance, ActionType::interception, ActionType::tackle,
                         ActionType::other}) {
        CHECK(action_type_from_name(action_type_name(t)) == t);
        CHECK(is_known_type_name(action_type_name(t)));
    }
    CHECK(action_type_from_name("foul") == ActionType::other);
    CHECK(action_type_from_name("") == ActionType::other);
    CHECK(!is_known_type_name("foul"));
}

TEST_CASE("moving and defensive type predicates partition the valued kinds") {
    CHECK(is_moving(ActionType::pass));
    CHECK(is_moving(ActionType::dribble));
    CHECK(is_moving(ActionType::cross));
    CHECK(is_moving(ActionType::clearance));
    CHECK(!is_moving(ActionType::shot));
    CHECK(!is_moving(ActionType::interception));
    CHECK(!is_moving(ActionType::tackle));
    CHECK(is_defensive(ActionType::interception));
    CHECK(is_defensive(ActionType::tackle));
    CHECK(!is_defensive(ActionType::pass));
}

TEST_CASE("clamping pulls coordinates to the pitch and reports it") {
    double x = 107.3, y = 30.0;
    bool clamped = false;
    clamp_to_pitch(x, y, &clamped);
    CHECK(x == 105.0);
    CHECK(y == 30.0);
    CHECK(clamped);

    x = 50.0;
    y = -2.0;
    clamped = false;
    clamp_to_pitch(x, y, &clamped);
    CHECK(y == 0.0);
    CHECK(clamped);

    x = 50.0;
    y = 30.0;
    clamped = false;
    clamp_to_pitch(x, y, &clamped);
    CHECK(x == 50.0);
    CHECK(y == 30.0);
    CHECK(!clamped);
}

TEST_CASE("a complete event row parses into the expected action") {
    ParseDiagnostics d;
    auto games = parse_spadl_text(
        spadl("14562,1,58,9923,3319,52.0588,34.4304,53.55,36.2,1,pass,Bobby Reid\n"), &d);
    REQUIRE(games.size() == 1);
    REQUIRE(games[0].actions.size() == 1);
    const Action& a = games[0].actions[0];
    CHECK(a.game_id == "14562");
    CHECK(a.period == 1);
    CHECK(a.time_seconds == 58.0);
    CHECK(a.team_id == "9923");
    CHECK(a.player_id == "3319");
    CHECK(a.type == ActionType::pass);
    CHECK(a.result == Result::success);
    CHECK(a.start_x == 52.0588);
    CHECK(a.start_y == 34.4304);
    CHECK(a.player_name == "Bobby Reid");
    CHECK(d.rows_parsed == 1);
    CHECK(d.clean());
}

TEST_CASE("an empty file with a valid header yields no games and no diagnostics") {
    ParseDiagnostics d;
    auto games = parse_spadl_text(spadl(""), &d);
    CHECK(games.empty());
    CHECK(d.rows_parsed == 0);
    CHECK(d.clean());
}

TEST_CASE("out-of-range coordinates are clamped and counted") {
    ParseDiagnostics d;
    auto games = parse_spadl_text(spadl("g,1,10,t,p,107.3,34,50,34,1,pass,\n"), &d);
    REQUIRE(games.size() == 1);
    CHECK(games[0].actions[0].start_x == 105.0);
    CHECK(games[0].actions[0].clamped);
    CHECK(d.clamped == 1);
}

TEST_CASE("a missing required column is fatal and names the column") {
    const std::string no_result =
        "game_id,period,time_seconds,team_id,player_id,start_x,start_y,end_x,end_y,type_name\n";
    CHECK_THROWS_WITH_AS(parse_spadl_text(no_result),
                         "SPADL CSV: missing required column: result_id", ContractError);
    CHECK_THROWS_AS(parse_spadl_text(""), ContractError);
}

TEST_CASE("rows with unparseable numeric cells are dropped and counted") {
    ParseDiagnostics d;
    auto games = parse_spadl_text(spadl("g,1,abc,t,p,10,10,20,20,1,pass,\n"
                                        "g,1,20,t,p,10,10,20,20,1,pass,\n"),
                                  &d);
    REQUIRE(games.size() == 1);
    CHECK(games[0].actions.size() == 1);
    CHECK(d.rows_parsed == 1);
    CHECK(d.rows_rejected == 1);
}

TEST_CASE("unknown type names keep their spelling and count as diagnostics") {
    ParseDiagnostics d;
    auto games = parse_spadl_text(spadl("g,1,10,t,p,10,10,20,20,1,foul,\n"), &d);
    CHECK(games[0].actions[0].type == ActionType::other);
    CHECK(games[0].actions[0].type_name == "foul");
    CHECK(d.unknown_types == 1);
}

TEST_CASE("rows group by game id in first-appearance order and sort by period and time") {
    auto games = parse_spadl_text(spadl("g2,1,10,t,p,10,10,20,20,1,pass,\n"
                                        "g1,2,5,t,p,10,10,20,20,1,pass,\n"
                                        "g1,1,30,t,p,10,10,20,20,1,pass,\n"
                                        "g1,1,20,t,p,10,10,20,20,1,pass,\n"));
    REQUIRE(games.size() == 2);
    CHECK(games[0].game_id == "g2");
    CHECK(games[1].game_id == "g1");
    REQUIRE(games[1].actions.size() == 3);
    CHECK(games[1].actions[0].time_seconds == 20.0);
    CHECK(games[1].actions[1].time_seconds == 30.0);
    CHECK(games[1].actions[2].period == 2);
}

TEST_CASE("sorting is stable on equal timestamps") {
    GameStream g;
    Action a = simple_action(1, 10.0, "A", ActionType::pass);
    Action b = simple_action(1, 10.0, "B", ActionType::shot);
    g.actions = {a, b};
    sort_stream(g);
    CHECK(g.actions[0].team_id == "A");
    CHECK(g.actions[1].team_id == "B");
}

TEST_CASE("team metadata lists distinct teams in first-appearance order") {
    GameStream g;
    g.actions = {simple_action(1, 1, "B", ActionType::pass), simple_action(1, 2, "A", ActionType::pass),
                 simple_action(1, 3, "B", ActionType::pass)};
    collect_teams(g);
    CHECK(g.team_ids == std::vector<std::string>{"B", "A"});
}

TEST_CASE("stream validation reports zero on a well-formed game") {
    GameStream g;
    for (int i = 0; i < 10; ++i) g.actions.push_back(simple_action(1, i, "A", ActionType::pass));
    const StreamDiagnostics d = validate_stream(g);
    CHECK(d.total() == 0);
}

TEST_CASE("stream validation counts unknown types, inversions, and empty games") {
    GameStream g;
    g.actions = {simple_action(1, 10, "A", ActionType::pass)};
    g.actions[0].type_name = "foul";
    CHECK(validate_stream(g).unknown_type == 1);

    GameStream swapped;
    swapped.actions = {simple_action(1, 20, "A", ActionType::pass),
                       simple_action(1, 10, "A", ActionType::pass)};
    CHECK(validate_stream(swapped).out_of_order == 1);
    sort_stream(swapped);
    CHECK(validate_stream(swapped).out_of_order == 0);

    GameStream empty;
    CHECK(validate_stream(empty).zero_length == 1);
}

TEST_CASE("serialization round-trips the canonical form") {
    auto games = generate_synthetic_corpus(3, 11);
    const std::string once = spadl_to_csv(games);
    auto reparsed = parse_spadl_text(once);
    REQUIRE(reparsed.size() == games.size());
    for (size_t g = 0; g < games.size(); ++g) {
        REQUIRE(reparsed[g].actions.size() == games[g].actions.size());
        for (size_t i = 0; i < games[g].actions.size(); ++i)
            CHECK(reparsed[g].actions[i] == games[g].actions[i]);
    }
    CHECK(spadl_to_csv(reparsed) == once);
}

TEST_CASE("the generator is deterministic per seed") {
    auto a = generate_synthetic_corpus(1, 42);
    auto b = generate_synthetic_corpus(1, 42);
    REQUIRE(a.size() == 1);
    REQUIRE(a[0].actions.size() == b[0].actions.size());
    for (size_t i = 0; i < a[0].actions.size(); ++i) CHECK(a[0].actions[i] == b[0].actions[i]);

    auto c = generate_synthetic_corpus(1, 43);
    CHECK(spadl_to_csv(a) != spadl_to_csv(c));
    CHECK(corpus_fingerprint(a) == corpus_fingerprint(b));
    CHECK(corpus_fingerprint(a) != corpus_fingerprint(c));
}

TEST_CASE("generated games satisfy the action invariants") {
    auto games = generate_synthetic_corpus(20, 7);
    REQUIRE(games.size() == 20);
    for (const GameStream& g : games) {
        CHECK(!g.actions.empty());
        CHECK(validate_stream(g).total() == 0);
        for (size_t i = 0; i < g.actions.size(); ++i) {
            const Action& a = g.actions[i];
            CHECK(a.start_x >= 0.0);
            CHECK(a.start_x <= kPitchLength);
            CHECK(a.start_y >= 0.0);
            CHECK(a.start_y <= kPitchWidth);
            CHECK(a.end_x >= 0.0);
            CHECK(a.end_x <= kPitchLength);
            CHECK(a.end_y >= 0.0);
            CHECK(a.end_y <= kPitchWidth);
            CHECK((a.period == 1 || a.period == 2));
            CHECK(a.time_seconds >= 0.0);
            const bool team_known =
                std::find(g.team_ids.begin(), g.team_ids.end(), a.team_id) != g.team_ids.end();
            CHECK(team_known);
            if (i > 0) {
                const Action& prev = g.actions[i - 1];
                const bool ordered = prev.period < a.period ||
                                     (prev.period == a.period && prev.time_seconds <= a.time_seconds);
                CHECK(ordered);
            }
        }
    }
}

TEST_CASE("generated corpora keep passes dominant and shots rare") {
    auto games = generate_synthetic_corpus(100, 1);
    std::map<ActionType, long> counts;
    long total = 0;
    for (const GameStream& g : games)
        for (const Action& a : g.actions) {
            ++counts[a.type];
            ++total;
        }
    REQUIRE(total > 0);
    for (const auto& [type, n] : counts)
        if (type != ActionType::pass) CHECK(counts[ActionType::pass] > n);
    CHECK(static_cast<double>(counts[ActionType::shot]) / static_cast<double>(total) < 0.05);
    CHECK(counts[ActionType::interception] > 0);
    CHECK(counts[ActionType::tackle] > 0);
    CHECK(counts[ActionType::clearance] > 0);
}

TEST_CASE("the generator rejects an empty schedule") {
    CHECK_THROWS_AS(generate_synthetic_corpus(0, 1), ContractError);
}

TEST_CASE("the league roster is stable across corpus sizes and carries metadata") {
    auto league = synthetic_league(7);
    REQUIRE(league.size() == 220);
    auto again = synthetic_league(7);
    REQUIRE(again.size() == league.size());
    for (size_t i = 0; i < league.size(); ++i) {
        CHECK(league[i].player_id == again[i].player_id);
        CHECK(league[i].activity == again[i].activity);
        CHECK(league[i].market_value_millions == again[i].market_value_millions);
    }
    std::set<std::string> positions;
    for (const SynthPlayer& p : league) {
        positions.insert(p.position);
        CHECK(p.market_value_millions >= 0.5);
        CHECK(p.activity >= 0.5);
        CHECK(p.activity <= 1.5);
    }
    CHECK(positions ==
          std::set<std::string>{"center_back", "full_back", "defensive_midfielder", "other"});

    const std::string pos_csv = league_positions_csv(league);
    CHECK(pos_csv.rfind("player_id,position\n", 0) == 0);
    const std::string mv_csv = league_market_values_csv(league);
    CHECK(mv_csv.rfind("player_id,player_name,market_value_millions\n", 0) == 0);
}
