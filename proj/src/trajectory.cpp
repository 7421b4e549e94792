#include "spinbath/trajectory.hpp"

#include <cmath>

namespace spinbath {

void check_time_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw DomainError("time grid is empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0) throw DomainError("time grid entries must be finite and >= 0");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be strictly increasing");
    }
}

Trajectory assemble_trajectory(const EigenSystem& es, std::span<const double> t_grid,
                               std::vector<DensityMatrix> rho_eigen, unsigned threads) {
    Trajectory tr;
    tr.t.assign(t_grid.begin(), t_grid.end());
    tr.rho_eigen = std::move(rho_eigen);
    tr.rho.resize(tr.t.size());
    tr.concurrence.resize(tr.t.size());
    parallel_for(tr.t.size(), threads, [&](std::size_t i) {
        tr.rho[i] = to_computational(tr.rho_eigen[i], es);
        tr.concurrence[i] = wootters_concurrence(tr.rho[i]).value;
    });
    return tr;
}

}  // namespace spinbath
