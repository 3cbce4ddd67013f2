#pragma once

#include <string>
#include <vector>

#include "daxt/action.hpp"

namespace daxt {

constexpr int kGridCols = 16;
constexpr int kGridRows = 12;

// Per-zone shoot/score/move probabilities and the move transition matrix,
// estimated from event counts. Zones are indexed row-major: idx = row*n_cols+col.
struct GridModel {
    int n_cols = kGridCols;
    int n_rows = kGridRows;
    std::vector<double> shoot;       // s: shots / (shots + moves)
    std::vector<double> score;       // g: goals / shots (0 where no shots)
    std::vector<double> move;        // m = 1 - s where observed, else 0
    std::vector<double> transition;  // T, n_zones x n_zones, row-normalized over successful moves

    // count diagnostics
    std::vector<long> shot_count;
    std::vector<long> goal_count;
    std::vector<long> move_count;       // all moving actions, any result
    std::vector<long> move_success_count;

    int n_zones() const { return n_cols * n_rows; }
    double t(int from, int to) const { return transition[static_cast<size_t>(from) * n_zones() + to]; }

    void resize(int cols, int rows);
};

// The fixed point of the threat recursion, with solve metadata.
struct XTSurface {
    int n_cols = kGridCols;
    int n_rows = kGridRows;
    std::vector<double> xt;       // per-zone value in [0,1]
    int iterations_used = 0;
    double final_residual = 0.0;  // max per-zone change in the last iteration
    bool converged = false;

    double at(int col, int row) const { return xt[static_cast<size_t>(row) * n_cols + col]; }
};

// Pitch coordinates to (col 0..15, row 0..11). Out-of-bounds input is a
// contract violation.
std::pair<int, int> zone_of(double x, double y);
int zone_index(double x, double y); // row * 16 + col

// Counts shots, goals, moves and successful move transitions per zone over the
// corpus. Requires at least one shot and one successful move. OpenMP over
// games; the merge is integer so results are identical to the serial path.
GridModel fit_grid(const std::vector<GameStream>& games);

namespace serial {
GridModel fit_grid(const std::vector<GameStream>& games);
}

// Synchronous value iteration from an all-zero surface. Stops when the max
// per-zone change drops below tol or at max_iter (then converged=false).
XTSurface solve_xt(const GridModel& model, double tol = 1e-6, int max_iter = 100);

// Residual of the threat recursion at the given surface (max over zones).
double xt_residual(const GridModel& model, const XTSurface& surface);

// Value of a successful moving action: destination zone minus origin zone.
// Negative for moves away from goal. Non-moving or failed actions are a
// contract violation; check is_valuable first when scanning streams.
bool is_valuable(const Action& a);
double action_xt(const XTSurface& surface, const Action& a);

// Surface persistence: `col,row,xt` CSV plus a small metadata sidecar.
std::string surface_to_csv(const XTSurface& s);
XTSurface surface_from_csv_text(const std::string& text);
void write_surface(const XTSurface& s, const std::string& csv_path, const std::string& meta_path,
                   double tol, const std::string& corpus_fingerprint);
XTSurface read_surface(const std::string& csv_path);

} // namespace daxt
