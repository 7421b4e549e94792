#include "spinbath/config.hpp"

#include "spinbath/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spinbath {

namespace {

// Accumulates every problem in a document so one run reports all of them.
class Reader {
public:
    explicit Reader(std::string_view source) : source_(source) {}

    void problem(const YAML::Node& at, const std::string& field, const std::string& what) {
        std::ostringstream os;
        os << source_ << ':';
        if (at && at.Mark().line >= 0) os << at.Mark().line + 1 << ':';
        os << ' ' << field << ": " << what;
        problems_.push_back(os.str());
    }

    YAML::Node section(const YAML::Node& root, const std::string& key, bool required) {
        YAML::Node n = root[key];
        if (!n) {
            if (required) problem(root, key, "required section missing");
            return {};
        }
        if (!n.IsMap()) {
            problem(n, key, "must be a mapping");
            return {};
        }
        return n;
    }

    template <class T>
    std::optional<T> get(const YAML::Node& parent, const std::string& prefix, const std::string& key,
                         bool required) {
        const std::string field = prefix.empty() ? key : prefix + "." + key;
        if (!parent) {
            if (required) problem(parent, field, "required field missing");
            return std::nullopt;
        }
        const YAML::Node n = parent[key];
        if (!n) {
            if (required) problem(parent, field, "required field missing");
            return std::nullopt;
        }
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            problem(n, field, "cannot parse value '" + (n.IsScalar() ? n.Scalar() : std::string("<node>")) + "'");
            return std::nullopt;
        }
    }

    void reject_unknown(const YAML::Node& map, const std::string& prefix, const std::set<std::string>& known) {
        if (!map || !map.IsMap()) return;
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!known.contains(key)) problem(kv.first, prefix.empty() ? key : prefix + "." + key, "unknown key");
        }
    }

    void finish() const {
        if (problems_.empty()) return;
        std::string msg = "invalid configuration:";
        for (const auto& p : problems_) msg += "\n  " + p;
        throw ConfigError(msg);
    }

private:
    std::string source_;
    std::vector<std::string> problems_;
};

Range read_range(Reader& rd, const YAML::Node& run, const std::string& key) {
    Range r;
    YAML::Node n = rd.section(run, key, true);
    const std::string prefix = "run." + key;
    if (auto v = rd.get<double>(n, prefix, "min", true)) r.min = *v;
    if (auto v = rd.get<double>(n, prefix, "max", true)) r.max = *v;
    if (auto v = rd.get<int>(n, prefix, "count", true)) r.count = *v;
    rd.reject_unknown(n, prefix, {"min", "max", "count"});
    return r;
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
    switch (m) {
        case Mode::markov: return "markov";
        case Mode::postmarkov: return "postmarkov";
        case Mode::oracle: return "oracle";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    if (text == "markov") return Mode::markov;
    if (text == "postmarkov") return Mode::postmarkov;
    if (text == "oracle") return Mode::oracle;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected markov, postmarkov or oracle)");
}

std::vector<double> TimeSeries::grid() const {
    std::vector<double> g(static_cast<std::size_t>(n_points));
    if (n_points == 1) {
        g[0] = logarithmic ? t_max : 0.0;
        return g;
    }
    const double last = static_cast<double>(n_points - 1);
    for (int k = 0; k < n_points; ++k) {
        const double u = static_cast<double>(k) / last;
        g[static_cast<std::size_t>(k)] = logarithmic ? t_min * std::pow(t_max / t_min, u) : t_max * u;
    }
    g.back() = t_max;
    return g;
}

std::vector<double> Range::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = min;
        return v;
    }
    for (int k = 0; k < count; ++k) {
        v[static_cast<std::size_t>(k)] = min + (max - min) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    v.back() = max;
    return v;
}

void ExperimentConfig::validate() const {
    if (mode == Mode::postmarkov && !gamma0) throw ConfigError("dynamics.gamma0: required for postmarkov mode");
    if (gamma0 && !(*gamma0 > 0.0)) throw ConfigError("dynamics.gamma0: must be > 0");
    if (oracle_step && !(*oracle_step > 0.0)) throw ConfigError("dynamics.oracle_step: must be > 0");

    if (const auto* ts = std::get_if<TimeSeries>(&run)) {
        if (ts->n_points < 1) throw ConfigError("run.n_points: must be >= 1");
        if (!(ts->t_max >= 0.0)) throw ConfigError("run.t_max: must be >= 0");
        if (ts->n_points > 1 && !(ts->t_max > 0.0)) throw ConfigError("run.t_max: must be > 0 when n_points > 1");
        if (ts->logarithmic) {
            if (!(ts->t_min > 0.0)) throw ConfigError("run.t_min: logarithmic grids need t_min > 0");
            if (ts->n_points > 1 && !(ts->t_min < ts->t_max)) throw ConfigError("run.t_min: must be < t_max");
        }
        try {
            model.validate();
            initial.validate();
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    } else {
        const auto& sw = std::get<Sweep>(run);
        for (const auto* r : {&sw.T_M, &sw.dT}) {
            const char* name = r == &sw.T_M ? "run.T_M" : "run.dT";
            if (r->count < 1) throw ConfigError(std::string(name) + ".count: must be >= 1");
            if (!(r->max >= r->min)) throw ConfigError(std::string(name) + ": max must be >= min");
        }
        ModelParams probe = model;
        probe.T1 = probe.T2 = 1.0;
        try {
            probe.validate();
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(std::string(source) + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root || root.IsNull()) {
        throw ConfigError(std::string(source) +
                          ": empty configuration; required: model.{eps1, eps2, K, T1, T2}, run.type and its fields");
    }
    if (!root.IsMap()) throw ConfigError(std::string(source) + ": top level must be a mapping");

    Reader rd(source);
    ExperimentConfig cfg;
    rd.reject_unknown(root, "", {"model", "initial", "dynamics", "run", "output"});

    const YAML::Node run = rd.section(root, "run", true);
    const auto run_type = rd.get<std::string>(run, "run", "type", true);
    const bool sweep = run_type && *run_type == "sweep";
    if (run_type && *run_type != "sweep" && *run_type != "timeseries") {
        rd.problem(run["type"], "run.type", "must be 'timeseries' or 'sweep'");
    }

    const YAML::Node model = rd.section(root, "model", true);
    if (auto v = rd.get<double>(model, "model", "eps1", true)) cfg.model.eps1 = *v;
    if (auto v = rd.get<double>(model, "model", "eps2", true)) cfg.model.eps2 = *v;
    if (auto v = rd.get<double>(model, "model", "K", true)) cfg.model.K = *v;
    if (auto v = rd.get<double>(model, "model", "gamma1", false)) cfg.model.gamma1 = *v;
    if (auto v = rd.get<double>(model, "model", "gamma2", false)) cfg.model.gamma2 = *v;
    if (auto v = rd.get<double>(model, "model", "T1", !sweep)) cfg.model.T1 = *v;
    if (auto v = rd.get<double>(model, "model", "T2", !sweep)) cfg.model.T2 = *v;
    rd.reject_unknown(model, "model", {"eps1", "eps2", "K", "gamma1", "gamma2", "T1", "T2"});

    const YAML::Node initial = rd.section(root, "initial", false);
    if (initial.IsMap()) {
        cfg.initial = InitialState{0.0, 0.0, 0.0, {0.0, 0.0}};
        if (auto v = rd.get<double>(initial, "initial", "p0", false)) cfg.initial.p0 = *v;
        if (auto v = rd.get<double>(initial, "initial", "p1", false)) cfg.initial.p1 = *v;
        if (auto v = rd.get<double>(initial, "initial", "p2", false)) cfg.initial.p2 = *v;
        const double re = rd.get<double>(initial, "initial", "c12_re", false).value_or(0.0);
        const double im = rd.get<double>(initial, "initial", "c12_im", false).value_or(0.0);
        cfg.initial.c12 = {re, im};
        rd.reject_unknown(initial, "initial", {"p0", "p1", "p2", "c12_re", "c12_im"});
    }

    const YAML::Node dyn = rd.section(root, "dynamics", false);
    if (dyn.IsMap()) {
        if (auto m = rd.get<std::string>(dyn, "dynamics", "mode", false)) {
            try {
                cfg.mode = parse_mode(*m);
            } catch (const ConfigError& e) {
                rd.problem(dyn["mode"], "dynamics.mode", e.what());
            }
        }
        cfg.gamma0 = rd.get<double>(dyn, "dynamics", "gamma0", false);
        cfg.oracle_step = rd.get<double>(dyn, "dynamics", "oracle_step", false);
        rd.reject_unknown(dyn, "dynamics", {"mode", "gamma0", "oracle_step"});
    }

    if (sweep) {
        Sweep sw;
        sw.T_M = read_range(rd, run, "T_M");
        sw.dT = read_range(rd, run, "dT");
        rd.reject_unknown(run, "run", {"type", "T_M", "dT"});
        cfg.run = sw;
    } else {
        TimeSeries ts;
        if (auto v = rd.get<double>(run, "run", "t_max", true)) ts.t_max = *v;
        if (auto v = rd.get<int>(run, "run", "n_points", true)) ts.n_points = *v;
        if (auto g = rd.get<std::string>(run, "run", "grid", false)) {
            if (*g == "log") {
                ts.logarithmic = true;
            } else if (*g != "linear") {
                rd.problem(run["grid"], "run.grid", "must be 'linear' or 'log'");
            }
        }
        ts.t_min = rd.get<double>(run, "run", "t_min", ts.logarithmic).value_or(0.0);
        rd.reject_unknown(run, "run", {"type", "t_max", "n_points", "grid", "t_min"});
        cfg.run = ts;
    }

    if (auto out = rd.get<std::string>(root, "", "output", false)) cfg.output = *out;

    rd.finish();
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

}  // namespace spinbath
