#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "daxt/grid.hpp"
#include "daxt/network.hpp"
#include "daxt/scaler.hpp"
#include "daxt/sequences.hpp"
#include "daxt/synthetic.hpp"
#include "daxt/valuation.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   identical: %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, identical ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    int n_games = 200;
    int reps = 3;
    if (argc > 1) n_games = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both paths run serially\n");
#endif
    std::printf("corpus: %d synthetic games, best of %d runs\n\n", n_games, reps);
    const auto games = daxt::generate_synthetic_corpus(n_games, 7);

    daxt::GridModel grid_s, grid_p;
    const double fit_serial = time_best_of(reps, [&] { grid_s = daxt::serial::fit_grid(games); });
    const double fit_parallel = time_best_of(reps, [&] { grid_p = daxt::fit_grid(games); });
    report("fit_grid", fit_serial, fit_parallel,
           grid_s.shoot == grid_p.shoot && grid_s.score == grid_p.score &&
               grid_s.move == grid_p.move && grid_s.transition == grid_p.transition);

    const daxt::XTSurface surface = daxt::solve_xt(grid_p);

    daxt::FeatureTable train_s, train_p;
    const double tr_serial =
        time_best_of(reps, [&] { train_s = daxt::serial::build_training_set(games, surface, 2); });
    const double tr_parallel =
        time_best_of(reps, [&] { train_p = daxt::build_training_set(games, surface, 2); });
    bool rows_equal = train_s.rows.size() == train_p.rows.size();
    for (size_t i = 0; rows_equal && i < train_s.rows.size(); ++i)
        rows_equal = train_s.rows[i].features == train_p.rows[i].features &&
                     train_s.rows[i].target == train_p.rows[i].target &&
                     train_s.rows[i].game_id == train_p.rows[i].game_id &&
                     train_s.rows[i].event_idx == train_p.rows[i].event_idx;
    report("build_training_set", tr_serial, tr_parallel, rows_equal);

    std::pair<daxt::FeatureTable, daxt::FeatureTable> da_s, da_p;
    const double da_serial =
        time_best_of(reps, [&] { da_s = daxt::serial::build_da_sets(games, surface, 2); });
    const double da_parallel = time_best_of(reps, [&] { da_p = daxt::build_da_sets(games, surface, 2); });
    report("build_da_sets", da_serial, da_parallel,
           da_s.first.rows.size() == da_p.first.rows.size() &&
               da_s.second.rows.size() == da_p.second.rows.size());

    // A deliberately short training run; prediction speed does not depend on fit quality.
    daxt::FeatureTable table = train_p;
    const daxt::Scaler scaler = daxt::fit_scaler(table);
    daxt::transform_table(scaler, table);
    daxt::TrainConfig tc;
    tc.epochs = 2;
    tc.seed = 7;
    const daxt::TrainedModel model = daxt::train(daxt::init_network(2, 7), table, scaler, tc);

    daxt::FeatureTable da_all = da_p.first;
    for (auto& r : da_p.second.rows) da_all.rows.push_back(r);
    std::vector<daxt::ValuedAction> val_s, val_p;
    const double v_serial =
        time_best_of(reps, [&] { val_s = daxt::serial::value_defensive_actions(model, da_all); });
    const double v_parallel =
        time_best_of(reps, [&] { val_p = daxt::value_defensive_actions(model, da_all); });
    bool vals_equal = val_s.size() == val_p.size();
    for (size_t i = 0; vals_equal && i < val_s.size(); ++i)
        vals_equal = val_s[i].daxt == val_p[i].daxt && val_s[i].player_id == val_p[i].player_id;
    report("value_defensive", v_serial, v_parallel, vals_equal);

    return 0;
}
