// experiment.hpp: time-series and steady-state sweep drivers with CSV emission

#pragma once

#include "spinbath/config.hpp"
#include "spinbath/trajectory.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spinbath {

Trajectory run_timeseries(const ExperimentConfig& cfg, unsigned threads = 1);

struct SweepPoint {
    double T_M{0.0};
    double dT{0.0};
    std::optional<double> C_inf;  // empty when T1 or T2 would be <= 0
};

// Rows ordered T_M-major, dT-minor regardless of the thread count.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, unsigned threads = 1);

// Steady-state concurrence at one (T1, T2) point for the given mode.
double steady_concurrence(const ModelParams& params, Mode mode);

// 17 significant digits, lowercase scientific.
std::string format_number(double v);

// Header t,C,rho11,rho22,rho33,rho44,re_rho34_eigen,im_rho34_eigen.
// Aborts with InvalidState if any state breaks the trace/Hermiticity bounds.
void write_timeseries_csv(std::ostream& os, const Trajectory& tr);
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

// Human-readable echo of the configuration plus derived quantities.
std::string describe(const ExperimentConfig& cfg);

}  // namespace spinbath
