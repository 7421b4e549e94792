// config.hpp: experiment configuration (YAML documents)
//
//   model:    { eps1, eps2, K, gamma1, gamma2, T1, T2 }
//   initial:  { p0, p1, p2, c12_re, c12_im }
//   dynamics: { mode: markov | postmarkov | oracle, gamma0, oracle_step }
//   run:      { type: timeseries, t_max, n_points, grid: linear | log, t_min }
//         or  { type: sweep, T_M: {min, max, count}, dT: {min, max, count} }
//   output:   path (optional; stdout when absent)

#pragma once

#include "spinbath/density.hpp"
#include "spinbath/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spinbath {

enum class Mode { markov, postmarkov, oracle };

std::string_view to_string(Mode m) noexcept;
Mode parse_mode(std::string_view text);  // ConfigError on unknown names

struct TimeSeries {
    double t_max{0.0};
    int n_points{1};
    bool logarithmic{false};
    double t_min{0.0};  // first point of a logarithmic grid

    std::vector<double> grid() const;
};

struct Range {
    double min{0.0};
    double max{0.0};
    int count{1};

    std::vector<double> values() const;  // evenly spaced, endpoints included
};

struct Sweep {
    Range T_M;
    Range dT;
};

struct ExperimentConfig {
    ModelParams model;
    InitialState initial;
    Mode mode{Mode::markov};
    std::optional<double> gamma0;
    std::optional<double> oracle_step;
    std::variant<TimeSeries, Sweep> run;
    std::string output;

    bool is_sweep() const { return std::holds_alternative<Sweep>(run); }

    // Cross-field checks (gamma0 present for postmarkov, grid sanity, ...).
    void validate() const;
};

// ConfigError messages carry "<source>:<line>: <field>: <problem>".
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace spinbath
