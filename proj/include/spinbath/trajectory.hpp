// trajectory.hpp: per-time density matrices and concurrence along a time grid

#pragma once

#include "spinbath/density.hpp"
#include "spinbath/entanglement.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/model.hpp"
#include "spinbath/parallel.hpp"

#include <concepts>
#include <span>
#include <vector>

namespace spinbath {

struct Trajectory {
    std::vector<double> t;
    std::vector<DensityMatrix> rho_eigen;
    std::vector<DensityMatrix> rho;  // computational basis
    std::vector<double> concurrence;

    std::size_t size() const noexcept { return t.size(); }
};

template <class P>
concept Propagator = requires(const P& p, const DensityMatrix& rho, double t) {
    { p.propagate(rho, t) } -> std::same_as<DensityMatrix>;
    { p.eigen_system() } -> std::convertible_to<const EigenSystem&>;
};

// DomainError unless the grid is nonempty, strictly increasing and t_0 >= 0.
void check_time_grid(std::span<const double> t_grid);

// Fills rho / concurrence from eigenbasis states.
Trajectory assemble_trajectory(const EigenSystem& es, std::span<const double> t_grid,
                               std::vector<DensityMatrix> rho_eigen, unsigned threads = 1);

// Closed-form propagators are evaluated independently per time point.
template <Propagator P>
Trajectory concurrence_trajectory(const P& prop, const DensityMatrix& rho0, std::span<const double> t_grid,
                                  unsigned threads = 1) {
    check_time_grid(t_grid);
    const EigenSystem& es = prop.eigen_system();
    const DensityMatrix start = rho0.basis() == Basis::eigen ? rho0 : to_eigen(rho0, es);
    std::vector<DensityMatrix> states(t_grid.size());
    parallel_for(t_grid.size(), threads, [&](std::size_t i) { states[i] = prop.propagate(start, t_grid[i]); });
    return assemble_trajectory(es, t_grid, std::move(states), threads);
}

}  // namespace spinbath
