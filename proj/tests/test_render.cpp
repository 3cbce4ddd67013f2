#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "daxt/errors.hpp"
#include "daxt/render.hpp"
#include "daxt/rng.hpp"
#include "daxt/stats.hpp"
#include "daxt/util.hpp"
#include "fixtures.hpp"

using namespace daxt;

namespace {

size_t count_substr(const std::string& haystack, const std::string& needle) {
    size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace

TEST_CASE("percentile bins split one-to-one-hundred exactly ten twenty twenty fifty") {
    const std::vector<double> pop = daxt_test::scatter_fixture_population();
    const std::vector<Bin> bins = assign_bins(pop, pop);
    size_t counts[4] = {0, 0, 0, 0};
    for (Bin b : bins) ++counts[static_cast<int>(b)];
    CHECK(counts[0] == 10);
    CHECK(counts[1] == 20);
    CHECK(counts[2] == 20);
    CHECK(counts[3] == 50);

    CHECK(assign_bins(pop, {91.0})[0] == Bin::blue);
    CHECK(assign_bins(pop, {90.999})[0] == Bin::green);
    CHECK(assign_bins(pop, {71.0})[0] == Bin::green);
    CHECK(assign_bins(pop, {51.0})[0] == Bin::yellow);
    CHECK(assign_bins(pop, {50.999})[0] == Bin::red);
    CHECK(assign_bins(pop, {-1000.0})[0] == Bin::red);
    CHECK(assign_bins(pop, {1e9})[0] == Bin::blue);
}

TEST_CASE("degenerate populations still bin sensibly") {
    CHECK(assign_bins({7, 7, 7}, {7.0})[0] == Bin::blue);  // ties resolve upward
    CHECK(assign_bins({42}, {42.0})[0] == Bin::blue);
    CHECK(assign_bins({42}, {41.0})[0] == Bin::red);
    CHECK(assign_bins({1, 2}, {}).empty());
    CHECK_THROWS_AS(assign_bins({}, {1.0}), ContractError);
}

TEST_CASE("bin colors name the four paint buckets") {
    CHECK(std::string(bin_color(Bin::blue)) == "blue");
    CHECK(std::string(bin_color(Bin::green)) == "green");
    CHECK(std::string(bin_color(Bin::yellow)) == "yellow");
    CHECK(std::string(bin_color(Bin::red)) == "red");
}

TEST_CASE("an empty pitch still renders the full outline") {
    const std::string svg = pitch_scatter_svg({}, {});
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1050\" height=\"680\"", 0) ==
          0);
    CHECK(svg.find("viewBox=\"0 0 1050 680\"") != std::string::npos);
    CHECK(svg.find("fill=\"white\"") != std::string::npos);
    CHECK(count_substr(svg, "<circle") == 1);  // only the center circle
    CHECK(count_substr(svg, "<rect") == 4);    // background, outline, two boxes
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
}

TEST_CASE("markers land at ten canvas units per meter with a flipped y") {
    ValuedAction a;
    a.x = 52.5;
    a.y = 34.0;
    const std::string svg = pitch_scatter_svg({a}, {Bin::green});
    CHECK(svg.find("<circle cx=\"525.0000\" cy=\"340.0000\" r=\"6\" fill=\"green\"") !=
          std::string::npos);

    a.x = 0.0;
    a.y = 0.0;
    const std::string corner = pitch_scatter_svg({a}, {Bin::red});
    CHECK(corner.find("<circle cx=\"0.0000\" cy=\"680.0000\" r=\"6\" fill=\"red\"") !=
          std::string::npos);
}

TEST_CASE("every action needs exactly one bin label") {
    ValuedAction a;
    CHECK_THROWS_AS(pitch_scatter_svg({a}, {}), ContractError);
    CHECK_THROWS_AS(pitch_scatter_svg({}, {Bin::red}), ContractError);
}

TEST_CASE("the pitch scatter is byte deterministic and matches its golden copy") {
    const std::string once = daxt_test::scatter_fixture_svg();
    const std::string twice = daxt_test::scatter_fixture_svg();
    CHECK(once == twice);
    CHECK(count_substr(once, "<circle") == 21);

    const std::string golden = read_file(std::string(GOLDEN_DIR) + "/pitch_scatter_20.svg");
    CHECK(once == golden);
}

TEST_CASE("the least-squares line recovers slope and intercept") {
    const auto [b0, b1] = ols_line({0.0, 2.0}, {1.0, 5.0});
    CHECK(b0 == 1.0);
    CHECK(b1 == 2.0);

    std::vector<double> x, y;
    for (int i = 0; i < 5; ++i) {
        x.push_back(i);
        y.push_back(3.0 * i - 2.0);
    }
    const auto [c0, c1] = ols_line(x, y);
    CHECK(c0 == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(c1 == doctest::Approx(3.0).epsilon(1e-12));
    for (size_t i = 0; i < x.size(); ++i)
        CHECK(std::fabs(c0 + c1 * x[i] - y[i]) <= 1e-12);
}

TEST_CASE("the least-squares fit matches moment formulas on random data") {
    Rng rng(808);
    std::vector<double> x(25), y(25);
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(-5.0, 5.0);
        y[i] = 1.5 * x[i] + rng.uniform(-2.0, 2.0);
    }
    const auto [b0, b1] = ols_line(x, y);

    // uncentered moments, a different computation path
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = sy / n - slope * sx / n;
    CHECK(std::fabs(b1 - slope) <= 1e-9);
    CHECK(std::fabs(b0 - intercept) <= 1e-9);
}

TEST_CASE("the least-squares line rejects bad input") {
    CHECK_THROWS_AS(ols_line({1.0}, {1.0, 2.0}), ContractError);
    CHECK_THROWS_AS(ols_line({1.0}, {1.0}), ContractError);
    CHECK_THROWS_AS(ols_line({4.0, 4.0, 4.0}, {1.0, 2.0, 3.0}), ContractError);
}

TEST_CASE("the regression scatter annotates the correlation") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {2.2, 1.9, 4.4, 3.1, 5.0};
    const std::string svg = scatter_regression_svg(x, y, "score", "market value");
    CHECK(svg.find(">score</text>") != std::string::npos);
    CHECK(svg.find(">market value</text>") != std::string::npos);
    CHECK(count_substr(svg, "<circle") == 5);
    CHECK(svg.find("stroke=\"red\"") != std::string::npos);

    const std::string expected = "r = " + fmt_fixed4(pearson(x, y).statistic);
    CHECK(svg.find(expected) != std::string::npos);

    CHECK(svg == scatter_regression_svg(x, y, "score", "market value"));

    std::vector<double> line_y;
    for (double v : x) line_y.push_back(2.0 * v + 1.0);
    CHECK(scatter_regression_svg(x, line_y, "a", "b").find("r = 1.0000") != std::string::npos);
}

TEST_CASE("the regression scatter degrades without a usable correlation") {
    CHECK_THROWS_AS(scatter_regression_svg({3, 3, 3}, {1, 2, 3}, "a", "b"), ContractError);

    const std::string flat = scatter_regression_svg({1, 2, 3}, {4, 4, 4}, "a", "b");
    CHECK(flat.find("r = ") == std::string::npos);

    const std::string pair = scatter_regression_svg({1, 2}, {3, 5}, "a", "b");
    CHECK(pair.find("r = ") == std::string::npos);
}
