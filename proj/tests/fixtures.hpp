#pragma once

#include <string>
#include <vector>

#include "daxt/render.hpp"
#include "daxt/valuation.hpp"

// Fixed scatter inputs shared by the render tests and the acceptance run so
// both compare against the same golden SVG.
namespace daxt_test {

inline std::vector<daxt::ValuedAction> scatter_fixture_actions() {
    std::vector<daxt::ValuedAction> v;
    for (int i = 0; i < 20; ++i) {
        daxt::ValuedAction a;
        a.game_id = "G1";
        a.event_idx = i;
        a.player_id = "P" + std::to_string(i % 7);
        a.kind = i % 2 ? daxt::ActionType::tackle : daxt::ActionType::interception;
        a.x = 2.5 + 5.0 * i;
        a.y = 4.0 + 3.0 * i;
        a.daxt = 5.0 * (i + 1);
        v.push_back(a);
    }
    return v;
}

inline std::vector<double> scatter_fixture_population() {
    std::vector<double> p;
    for (int i = 1; i <= 100; ++i) p.push_back(static_cast<double>(i));
    return p;
}

inline std::string scatter_fixture_svg() {
    const auto actions = scatter_fixture_actions();
    std::vector<double> values;
    for (const auto& a : actions) values.push_back(a.daxt);
    const auto bins = daxt::assign_bins(scatter_fixture_population(), values);
    return daxt::pitch_scatter_svg(actions, bins);
}

} // namespace daxt_test
