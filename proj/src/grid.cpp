#include "daxt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/util.hpp"

namespace daxt {

void GridModel::resize(int cols, int rows) {
    n_cols = cols;
    n_rows = rows;
    const size_t z = static_cast<size_t>(cols) * rows;
    shoot.assign(z, 0.0);
    score.assign(z, 0.0);
    move.assign(z, 0.0);
    transition.assign(z * z, 0.0);
    shot_count.assign(z, 0);
    goal_count.assign(z, 0);
    move_count.assign(z, 0);
    move_success_count.assign(z, 0);
}

std::pair<int, int> zone_of(double x, double y) {
    if (!(x >= 0.0 && x <= kPitchLength && y >= 0.0 && y <= kPitchWidth))
        throw ContractError("zone_of: coordinates outside pitch: (" + fmt_g17(x) + ", " + fmt_g17(y) + ")");
    int col = static_cast<int>(std::floor(x / kPitchLength * kGridCols));
    int row = static_cast<int>(std::floor(y / kPitchWidth * kGridRows));
    if (col > kGridCols - 1) col = kGridCols - 1;
    if (row > kGridRows - 1) row = kGridRows - 1;
    return {col, row};
}

int zone_index(double x, double y) {
    auto [col, row] = zone_of(x, y);
    return row * kGridCols + col;
}

namespace {

struct Counts {
    std::vector<long> shot, goal, mv, mv_ok;
    std::vector<long> trans;

    explicit Counts(int z)
        : shot(z, 0), goal(z, 0), mv(z, 0), mv_ok(z, 0), trans(static_cast<size_t>(z) * z, 0) {}

    void add(const Counts& o) {
        for (size_t i = 0; i < shot.size(); ++i) {
            shot[i] += o.shot[i];
            goal[i] += o.goal[i];
            mv[i] += o.mv[i];
            mv_ok[i] += o.mv_ok[i];
        }
        for (size_t i = 0; i < trans.size(); ++i) trans[i] += o.trans[i];
    }
};

void count_game(const GameStream& g, Counts& c) {
    const int z = kGridCols * kGridRows;
    for (const Action& a : g.actions) {
        if (a.type == ActionType::shot) {
            int from = zone_index(a.start_x, a.start_y);
            c.shot[from]++;
            if (a.result == Result::success) c.goal[from]++;
        } else if (is_moving(a.type)) {
            int from = zone_index(a.start_x, a.start_y);
            c.mv[from]++;
            if (a.result == Result::success) {
                int to = zone_index(a.end_x, a.end_y);
                c.mv_ok[from]++;
                c.trans[static_cast<size_t>(from) * z + to]++;
            }
        }
    }
}

GridModel model_from_counts(const Counts& c) {
    GridModel m;
    m.resize(kGridCols, kGridRows);
    const int z = m.n_zones();
    long total_shots = 0, total_mv_ok = 0;
    for (int i = 0; i < z; ++i) {
        total_shots += c.shot[i];
        total_mv_ok += c.mv_ok[i];
    }
    if (total_shots == 0) throw ContractError("fit_grid: corpus has no shots");
    if (total_mv_ok == 0) throw ContractError("fit_grid: corpus has no successful moving actions");

    for (int i = 0; i < z; ++i) {
        m.shot_count[i] = c.shot[i];
        m.goal_count[i] = c.goal[i];
        m.move_count[i] = c.mv[i];
        m.move_success_count[i] = c.mv_ok[i];

        const long denom = c.shot[i] + c.mv[i];
        if (denom > 0) {
            m.shoot[i] = static_cast<double>(c.shot[i]) / static_cast<double>(denom);
            m.move[i] = 1.0 - m.shoot[i];
        }
        if (c.shot[i] > 0)
            m.score[i] = static_cast<double>(c.goal[i]) / static_cast<double>(c.shot[i]);
        if (c.mv_ok[i] > 0) {
            for (int j = 0; j < z; ++j)
                m.transition[static_cast<size_t>(i) * z + j] =
                    static_cast<double>(c.trans[static_cast<size_t>(i) * z + j]) /
                    static_cast<double>(c.mv_ok[i]);
        }
    }
    return m;
}

} // namespace

namespace serial {
GridModel fit_grid(const std::vector<GameStream>& games) {
    Counts c(kGridCols * kGridRows);
    for (const GameStream& g : games) count_game(g, c);
    return model_from_counts(c);
}
} // namespace serial

GridModel fit_grid(const std::vector<GameStream>& games) {
    const int z = kGridCols * kGridRows;
    Counts total(z);
#ifdef _OPENMP
    #pragma omp parallel
    {
        Counts local(z);
        #pragma omp for schedule(static) nowait
        for (long i = 0; i < static_cast<long>(games.size()); ++i)
            count_game(games[static_cast<size_t>(i)], local);
        #pragma omp critical
        total.add(local);
    }
#else
    for (const GameStream& g : games) count_game(g, total);
#endif
    return model_from_counts(total);
}

XTSurface solve_xt(const GridModel& model, double tol, int max_iter) {
    if (!(tol > 0.0)) throw ContractError("solve_xt: tol must be positive");
    if (max_iter < 1) throw ContractError("solve_xt: max_iter must be at least 1");
    const int z = model.n_zones();
    XTSurface s;
    s.n_cols = model.n_cols;
    s.n_rows = model.n_rows;
    s.xt.assign(static_cast<size_t>(z), 0.0);

    std::vector<double> next(static_cast<size_t>(z), 0.0);
    for (int it = 1; it <= max_iter; ++it) {
        double max_change = 0.0;
        for (int i = 0; i < z; ++i) {
            double onward = 0.0;
            const double* row = &model.transition[static_cast<size_t>(i) * z];
            for (int j = 0; j < z; ++j) onward += row[j] * s.xt[j];
            next[i] = model.shoot[i] * model.score[i] + model.move[i] * onward;
            const double change = std::fabs(next[i] - s.xt[i]);
            if (change > max_change) max_change = change;
        }
        s.xt.swap(next);
        s.iterations_used = it;
        s.final_residual = max_change;
        if (max_change < tol) {
            s.converged = true;
            break;
        }
    }
    return s;
}

double xt_residual(const GridModel& model, const XTSurface& surface) {
    const int z = model.n_zones();
    double worst = 0.0;
    for (int i = 0; i < z; ++i) {
        double onward = 0.0;
        const double* row = &model.transition[static_cast<size_t>(i) * z];
        for (int j = 0; j < z; ++j) onward += row[j] * surface.xt[j];
        const double fresh = model.shoot[i] * model.score[i] + model.move[i] * onward;
        worst = std::max(worst, std::fabs(fresh - surface.xt[i]));
    }
    return worst;
}

bool is_valuable(const Action& a) {
    return is_moving(a.type) && a.result == Result::success;
}

double action_xt(const XTSurface& surface, const Action& a) {
    if (!is_valuable(a))
        throw ContractError("action_xt: only successful moving actions carry threat deltas");
    auto [c0, r0] = zone_of(a.start_x, a.start_y);
    auto [c1, r1] = zone_of(a.end_x, a.end_y);
    return surface.at(c1, r1) - surface.at(c0, r0);
}

std::string surface_to_csv(const XTSurface& s) {
    std::string out = "col,row,xt\n";
    for (int row = 0; row < s.n_rows; ++row)
        for (int col = 0; col < s.n_cols; ++col) {
            out += std::to_string(col);
            out += ',';
            out += std::to_string(row);
            out += ',';
            out += fmt_g17(s.at(col, row));
            out += '\n';
        }
    return out;
}

XTSurface surface_from_csv_text(const std::string& text) {
    auto rows = csv::parse_rows(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"col", "row", "xt"})
        throw IoError("surface csv: bad header");
    XTSurface s;
    s.xt.assign(static_cast<size_t>(kGridCols) * kGridRows, 0.0);
    std::vector<bool> seen(s.xt.size(), false);
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3) throw IoError("surface csv: row " + std::to_string(i) + " malformed");
        int col = std::stoi(rows[i][0]);
        int row = std::stoi(rows[i][1]);
        if (col < 0 || col >= kGridCols || row < 0 || row >= kGridRows)
            throw IoError("surface csv: zone out of range at row " + std::to_string(i));
        size_t idx = static_cast<size_t>(row) * kGridCols + col;
        if (seen[idx]) throw IoError("surface csv: duplicate zone at row " + std::to_string(i));
        seen[idx] = true;
        s.xt[idx] = std::strtod(rows[i][2].c_str(), nullptr);
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw IoError("surface csv: missing zone " + std::to_string(i));
    return s;
}

void write_surface(const XTSurface& s, const std::string& csv_path, const std::string& meta_path,
                   double tol, const std::string& corpus_fingerprint) {
    write_file(csv_path, surface_to_csv(s));
    std::string meta;
    meta += "iterations=" + std::to_string(s.iterations_used) + "\n";
    meta += "residual=" + fmt_g17(s.final_residual) + "\n";
    meta += "tol=" + fmt_g17(tol) + "\n";
    meta += "converged=" + std::string(s.converged ? "1" : "0") + "\n";
    meta += "corpus=" + corpus_fingerprint + "\n";
    write_file(meta_path, meta);
}

XTSurface read_surface(const std::string& csv_path) {
    return surface_from_csv_text(read_file(csv_path));
}

} // namespace daxt
