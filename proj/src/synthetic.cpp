#include "daxt/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/rng.hpp"
#include "daxt/util.hpp"

namespace daxt {

namespace {

std::string team_name(int t) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "T%02d", t + 1);
    return buf;
}

std::string player_name(int t, int p) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "T%02dP%02d", t + 1, p + 1);
    return buf;
}

std::string game_name(int g) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "G%04d", g + 1);
    return buf;
}

const char* position_of_index(int p) {
    if (p == 1 || p == 2) return "center_back";
    if (p == 3 || p == 4) return "full_back";
    if (p == 5 || p == 6) return "defensive_midfielder";
    return "other"; // goalkeeper and forwards
}

// Involvement weight of squad slot p when the team defends.
double defensive_slot_weight(int p) {
    if (p == 1 || p == 2) return 1.0;
    if (p == 3 || p == 4) return 0.85;
    if (p == 5 || p == 6) return 0.75;
    if (p >= 7) return 0.25;
    return 0.0; // goalkeeper never credited
}

struct Sim {
    const SynthConfig& cfg;
    Rng rng;
    std::vector<SynthPlayer> league;

    Sim(uint64_t seed, const SynthConfig& c) : cfg(c), rng(seed ^ 0x9e3779b97f4a7c15ull) {
        league = synthetic_league(seed, c);
    }

    const SynthPlayer& pick_defender(int team) {
        // Weighted draw over the defending squad.
        double total = 0.0;
        int base = team * cfg.players_per_team;
        for (int p = 1; p < cfg.players_per_team; ++p)
            total += defensive_slot_weight(p) * league[base + p].activity;
        double r = rng.next_double() * total;
        for (int p = 1; p < cfg.players_per_team; ++p) {
            r -= defensive_slot_weight(p) * league[base + p].activity;
            if (r <= 0.0) return league[base + p];
        }
        return league[base + cfg.players_per_team - 1];
    }

    const SynthPlayer& pick_attacker(int team, double x) {
        // Back third favors defenders, front third favors forwards.
        int base = team * cfg.players_per_team;
        int lo, hi;
        if (x < 35.0)      { lo = 1; hi = 6; }
        else if (x < 70.0) { lo = 3; hi = 9; }
        else               { lo = 5; hi = 10; }
        int p = lo + static_cast<int>(rng.next_index(static_cast<uint64_t>(hi - lo + 1)));
        return league[base + p];
    }

    // Shot volume and quality ramp with territory alone; lateral position
    // changes where play goes next, not how dangerous it is. That keeps the
    // fitted threat surface monotone along the length of the pitch.
    double shoot_probability(double x, double /*y*/) const {
        if (x < 52.0) return 0.0;
        double depth = (x - 52.0) / 53.0; // 0 at midfield, 1 at the goal line
        return std::min(0.5, 0.015 + 0.42 * depth * depth * depth);
    }

    double goal_probability(double x, double /*y*/) const {
        return std::clamp(0.75 * std::exp(-(kPitchLength - x) / 11.0) + 0.01, 0.0, 0.9);
    }

    Action make_action(const std::string& game_id, int period, double t, const SynthPlayer& pl,
                       ActionType type, Result res, double sx, double sy, double ex, double ey) {
        Action a;
        a.game_id = game_id;
        a.period = period;
        a.time_seconds = t;
        a.team_id = pl.team_id;
        a.player_id = pl.player_id;
        a.player_name = pl.player_id;
        a.type = type;
        a.type_name = action_type_name(type);
        a.result = res;
        a.start_x = sx; a.start_y = sy;
        a.end_x = ex; a.end_y = ey;
        clamp_to_pitch(a.start_x, a.start_y, nullptr);
        clamp_to_pitch(a.end_x, a.end_y, nullptr);
        a.clamped = false;
        return a;
    }

    GameStream play_game(int game_idx) {
        GameStream game;
        game.game_id = game_name(game_idx);

        int home = static_cast<int>(rng.next_index(static_cast<uint64_t>(cfg.n_teams)));
        int away = static_cast<int>(rng.next_index(static_cast<uint64_t>(cfg.n_teams - 1)));
        if (away >= home) ++away;

        for (int period = 1; period <= 2; ++period) {
            double t = 0.0;
            int attacking = (period == 1) ? home : away;
            double x = 52.5, y = 34.0;
            bool possession_has_action = false;

            // Each possession plays at its own tempo: most are patient
            // buildup, some are direct counterattacks. The tempo persists
            // across the whole possession, so consecutive moves share it.
            double drive = 0.3;
            auto draw_drive = [&] {
                drive = rng.chance(0.45) ? rng.uniform(0.7, 1.0) : rng.uniform(0.12, 0.4);
            };
            draw_drive();

            auto flip = [&](double bx, double by) {
                attacking = (attacking == home) ? away : home;
                x = kPitchLength - bx;
                y = kPitchWidth - by;
                clamp_to_pitch(x, y, nullptr);
                possession_has_action = false;
                draw_drive();
            };

            while (t < cfg.half_length_seconds) {
                int defending = (attacking == home) ? away : home;

                // Tackle on the carrier: ends the possession with no failed
                // event in between (pattern: ..., successful move, tackle).
                if (possession_has_action && rng.chance(cfg.tackle_rate)) {
                    t += rng.uniform(1.0, 3.0);
                    double dx = kPitchLength - x, dy = kPitchWidth - y;
                    game.actions.push_back(make_action(game.game_id, period, t,
                                                       pick_defender(defending),
                                                       ActionType::tackle, Result::success,
                                                       dx, dy, dx, dy));
                    flip(x, y);
                    continue;
                }

                // Deep in the own half the ball often just gets hoofed clear.
                if (x < 14.0 && rng.chance(cfg.clearance_rate)) {
                    double ex = x + rng.uniform(25.0, 55.0);
                    double ey = y + rng.uniform(-22.0, 22.0);
                    t += rng.uniform(2.0, 6.0);
                    Result res = rng.chance(0.8) ? Result::success : Result::fail;
                    game.actions.push_back(make_action(game.game_id, period, t,
                                                       pick_attacker(attacking, x),
                                                       ActionType::clearance, res, x, y, ex, ey));
                    if (res == Result::success) {
                        if (rng.chance(cfg.clearance_retain)) {
                            x = std::min(ex, kPitchLength); y = std::clamp(ey, 0.0, kPitchWidth);
                            possession_has_action = true;
                        } else {
                            flip(std::min(ex, kPitchLength), std::clamp(ey, 0.0, kPitchWidth));
                        }
                    } else {
                        flip(std::min(ex, kPitchLength), std::clamp(ey, 0.0, kPitchWidth));
                    }
                    continue;
                }

                if (rng.chance(shoot_probability(x, y))) {
                    t += rng.uniform(2.0, 5.0);
                    bool goal = rng.chance(goal_probability(x, y));
                    game.actions.push_back(make_action(game.game_id, period, t,
                                                       pick_attacker(attacking, x), ActionType::shot,
                                                       goal ? Result::success : Result::fail,
                                                       x, y, kPitchLength, 34.0 + rng.uniform(-3.5, 3.5)));
                    t += rng.uniform(12.0, 35.0);
                    if (goal) {
                        flip(52.5, 34.0); // kickoff for the conceding side
                        x = 52.5; y = 34.0;
                    } else {
                        flip(kPitchLength - 11.0, 34.0 + rng.uniform(-8.0, 8.0)); // goal kick
                    }
                    continue;
                }

                // A moving action: pass, dribble or cross. Forward progress
                // scales with the possession tempo.
                ActionType type;
                double ex, ey, p_success;
                if (rng.chance(0.24)) {
                    type = ActionType::dribble;
                    ex = x + drive * rng.uniform(4.0, 12.0);
                    ey = y + rng.uniform(-3.0, 3.0);
                    p_success = 0.76;
                } else if (x > 85.0 && std::fabs(y - 34.0) > 17.0 && rng.chance(0.4)) {
                    type = ActionType::cross;
                    ex = std::max(x + 2.0, rng.uniform(92.0, 104.0));
                    ey = 34.0 + rng.uniform(-7.0, 7.0);
                    p_success = 0.42;
                } else {
                    type = ActionType::pass;
                    ex = x + drive * rng.uniform(8.0, 24.0) + rng.uniform(-3.0, 3.0);
                    ey = y + rng.uniform(-6.0, 6.0);
                    double len = std::sqrt((ex - x) * (ex - x) + (ey - y) * (ey - y));
                    p_success = 0.95 - 0.005 * len - 0.0022 * std::max(0.0, ex - 60.0);
                }
                clamp_to_pitch(ex, ey, nullptr);
                t += rng.uniform(2.0, 7.0);
                Result res = rng.chance(p_success) ? Result::success : Result::fail;
                game.actions.push_back(make_action(game.game_id, period, t,
                                                   pick_attacker(attacking, x), type, res,
                                                   x, y, ex, ey));
                if (res == Result::success) {
                    x = ex; y = ey;
                    possession_has_action = true;
                    continue;
                }

                // Failed move: either a defender reads it (interception, the
                // failed event then the DA) or the ball simply runs out.
                if (rng.chance(cfg.intercept_rate)) {
                    t += rng.uniform(0.5, 1.5);
                    double ix = kPitchLength - ex, iy = kPitchWidth - ey;
                    game.actions.push_back(make_action(game.game_id, period, t,
                                                       pick_defender(defending),
                                                       ActionType::interception, Result::success,
                                                       ix, iy, ix, iy));
                    flip(ex, ey);
                } else {
                    t += rng.uniform(4.0, 12.0);
                    flip(ex, ey);
                }
            }
        }
        collect_teams(game);
        return game;
    }
};

} // namespace

std::vector<SynthPlayer> synthetic_league(uint64_t seed, const SynthConfig& cfg) {
    Rng rng(seed ^ 0xdeadbeefcafef00dull);
    std::vector<SynthPlayer> league;
    league.reserve(static_cast<size_t>(cfg.n_teams) * cfg.players_per_team);
    for (int t = 0; t < cfg.n_teams; ++t) {
        for (int p = 0; p < cfg.players_per_team; ++p) {
            SynthPlayer pl;
            pl.player_id = player_name(t, p);
            pl.team_id = team_name(t);
            pl.position = position_of_index(p);
            pl.activity = rng.uniform(0.5, 1.5);
            double noise = rng.uniform(-8.0, 8.0);
            pl.market_value_millions =
                std::max(0.5, std::round((2.0 + 40.0 * (pl.activity - 0.5) + noise) * 10.0) / 10.0);
            league.push_back(std::move(pl));
        }
    }
    return league;
}

std::vector<GameStream> generate_synthetic_corpus(int n_games, uint64_t seed,
                                                  const SynthConfig& cfg) {
    if (n_games < 1) throw ContractError("generate_synthetic_corpus: n_games must be >= 1");
    Sim sim(seed, cfg);
    std::vector<GameStream> games;
    games.reserve(static_cast<size_t>(n_games));
    for (int g = 0; g < n_games; ++g) games.push_back(sim.play_game(g));
    return games;
}

std::string league_positions_csv(const std::vector<SynthPlayer>& league) {
    std::string out = "player_id,position\n";
    for (const SynthPlayer& p : league)
        out += csv::join({p.player_id, p.position}) + "\n";
    return out;
}

std::string league_market_values_csv(const std::vector<SynthPlayer>& league) {
    std::string out = "player_id,player_name,market_value_millions\n";
    for (const SynthPlayer& p : league)
        out += csv::join({p.player_id, p.player_id, fmt_g17(p.market_value_millions)}) + "\n";
    return out;
}

} // namespace daxt
