#include "antikz/cli.hpp"

#include <omp.h>

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "antikz/asymptotics.hpp"
#include "antikz/errors.hpp"
#include "antikz/full_space.hpp"

namespace antikz {

namespace {

using json = nlohmann::ordered_json;

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// config parsing
// ---------------------------------------------------------------------------

struct RawConfig {
    std::string origin;
    std::map<std::string, std::pair<std::string, int>> kv; // key -> (value, line)

    [[noreturn]] void fail(const std::string& msg, int line = 0) const {
        throw ConfigError(origin + (line > 0 ? ":" + std::to_string(line) : "") + ": " + msg);
    }

    bool take(const std::string& key, std::string& value, int& line) {
        auto it = kv.find(key);
        if (it == kv.end()) return false;
        value = it->second.first;
        line = it->second.second;
        kv.erase(it);
        return true;
    }

    template <typename Parse>
    bool take_as(const std::string& key, Parse&& parse) {
        std::string value;
        int line = 0;
        if (!take(key, value, line)) return false;
        try {
            parse(value);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(key + ": " + e.what(), line);
        }
        return true;
    }

    bool take_double(const std::string& key, double& out) {
        return take_as(key, [&](const std::string& v) {
            std::size_t pos = 0;
            out = std::stod(v, &pos);
            if (pos != v.size()) throw std::runtime_error("not a number: '" + v + "'");
        });
    }

    bool take_int(const std::string& key, int& out) {
        return take_as(key, [&](const std::string& v) {
            std::size_t pos = 0;
            out = std::stoi(v, &pos);
            if (pos != v.size()) throw std::runtime_error("not an integer: '" + v + "'");
        });
    }

    bool take_u64(const std::string& key, std::uint64_t& out) {
        return take_as(key, [&](const std::string& v) {
            std::size_t pos = 0;
            out = std::stoull(v, &pos);
            if (pos != v.size()) throw std::runtime_error("not an integer: '" + v + "'");
        });
    }

    bool take_list(const std::string& key, std::vector<double>& out) {
        return take_as(key, [&](const std::string& v) {
            out.clear();
            std::istringstream is(v);
            double x;
            while (is >> x) out.push_back(x);
            if (!is.eof()) throw std::runtime_error("not a number list: '" + v + "'");
            if (out.empty()) throw std::runtime_error("empty list");
        });
    }
};

RawConfig tokenize_config(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) raw.fail("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) raw.fail("empty key", line_no);
        if (raw.kv.count(key)) raw.fail("duplicate key '" + key + "'", line_no);
        raw.kv[key] = {value, line_no};
    }
    return raw;
}

RunConfig build_config(RawConfig raw) {
    RunConfig cfg;
    std::string s;
    int line = 0;

    if (raw.take("command", s, line)) cfg.command = s;

    raw.take_int("model.n", cfg.params.n_sites);
    raw.take_double("model.lambda", cfg.params.lambda);
    raw.take_double("model.tau", cfg.params.tau);
    raw.take_double("model.w2", cfg.params.w2);
    double g_start = 2.0, g_end = 0.0;
    const bool has_gs = raw.take_double("model.g_start", g_start);
    const bool has_ge = raw.take_double("model.g_end", g_end);
    if (raw.take("model.protocol", s, line)) {
        if (s == "annealing")
            cfg.params.protocol = Protocol::annealing();
        else if (s == "field-ramp")
            cfg.params.protocol = Protocol::field_ramp(g_start, g_end);
        else
            raw.fail("model.protocol: expected 'annealing' or 'field-ramp'", line);
    } else if (has_gs || has_ge) {
        raw.fail("model.g_start/g_end only apply to model.protocol = field-ramp");
    }

    raw.take_list("sweep.tau", cfg.sweep_tau);
    std::vector<double> tau_log;
    if (raw.take_list("sweep.tau_log", tau_log)) {
        if (tau_log.size() != 3)
            raw.fail("sweep.tau_log: expected 'lo hi npoints'");
        if (!cfg.sweep_tau.empty()) raw.fail("sweep.tau and sweep.tau_log both given");
        cfg.sweep_tau = log_grid(tau_log[0], tau_log[1], static_cast<int>(tau_log[2]));
    }
    raw.take_list("sweep.w2", cfg.sweep_w2);

    if (raw.take("integrator.method", s, line)) {
        if (s == "fixed")
            cfg.integrator.method = StepMethod::FixedRk4;
        else if (s == "adaptive")
            cfg.integrator.method = StepMethod::AdaptiveCashKarp;
        else
            raw.fail("integrator.method: expected 'fixed' or 'adaptive'", line);
    }
    raw.take_double("integrator.dt", cfg.integrator.dt);
    raw.take_double("integrator.tolerance", cfg.integrator.tolerance);
    raw.take_int("integrator.renormalize_every", cfg.integrator.renormalize_every);

    raw.take_int("trajectories.n", cfg.trajectories.n_traj);
    raw.take_double("trajectories.dt", cfg.trajectories.dt);
    if (raw.take("trajectories.scope", s, line)) {
        if (s == "mode")
            cfg.trajectories.scope = TrajectoryScope::PerMode;
        else if (s == "full")
            cfg.trajectories.scope = TrajectoryScope::FullSpace;
        else
            raw.fail("trajectories.scope: expected 'mode' or 'full'", line);
    }

    raw.take_double("verify.k", cfg.verify_k);
    if (raw.take("oracle.points", s, line)) {
        std::istringstream is(s);
        std::string tok;
        while (is >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                raw.fail("oracle.points: expected 'tau:w2' pairs", line);
            try {
                cfg.oracle_points.emplace_back(std::stod(tok.substr(0, colon)),
                                               std::stod(tok.substr(colon + 1)));
            } catch (const std::exception&) {
                raw.fail("oracle.points: bad pair '" + tok + "'", line);
            }
        }
        if (cfg.oracle_points.empty()) raw.fail("oracle.points: empty", line);
    }

    raw.take_u64("seed", cfg.seed);
    if (raw.take("output", s, line)) cfg.output_path = s;
    if (raw.take("format", s, line)) {
        if (s == "csv")
            cfg.format = OutputFormat::Csv;
        else if (s == "json")
            cfg.format = OutputFormat::Json;
        else
            raw.fail("format: expected 'csv' or 'json'", line);
    }
    raw.take_int("threads", cfg.threads);

    if (!raw.kv.empty()) {
        const auto& [key, vl] = *raw.kv.begin();
        raw.fail("unknown key '" + key + "'", vl.second);
    }
    cfg.trajectories.seed = cfg.seed;
    return cfg;
}

// ---------------------------------------------------------------------------
// output writers
// ---------------------------------------------------------------------------

json record_json(const ObservableRecord& r, const ModelParams& p, std::uint64_t seed) {
    json row;
    row["protocol"] = p.protocol.name();
    row["N"] = p.n_sites;
    row["lambda"] = p.lambda;
    row["tau"] = r.tau;
    row["w2"] = r.w2;
    row["method"] = method_name(r.method);
    row["n_w"] = r.n_w;
    row["q"] = r.q;
    row["de"] = r.de;
    row["seed"] = seed;
    return row;
}

// Streams rows as they are produced so a failing sweep point never corrupts
// the rows already flushed.
class TableWriter {
  public:
    TableWriter(const RunConfig& cfg) : cfg_(cfg), out_(cfg.output_path) {
        if (!out_) throw IoError("cannot open output file '" + cfg.output_path + "'");
        if (cfg_.format == OutputFormat::Csv)
            out_ << "protocol,N,lambda,tau,w2,method,n_w,q,de,seed\n";
        else
            out_ << "[\n";
        out_.flush();
    }

    void row(const ObservableRecord& r, const ModelParams& p) {
        if (cfg_.format == OutputFormat::Csv) {
            out_ << p.protocol.name() << ',' << p.n_sites << ',' << fmt_g17(p.lambda) << ','
                 << fmt_g17(r.tau) << ',' << fmt_g17(r.w2) << ',' << method_name(r.method)
                 << ',' << fmt_g17(r.n_w) << ',' << fmt_g17(r.q) << ',' << fmt_g17(r.de)
                 << ',' << cfg_.seed << '\n';
        } else {
            out_ << (first_ ? "  " : ",\n  ") << record_json(r, p, cfg_.seed).dump();
        }
        first_ = false;
        out_.flush();
        if (!out_) throw IoError("write failed for '" + cfg_.output_path + "'");
    }

    void fail_marker(const std::string& msg) {
        if (cfg_.format == OutputFormat::Csv)
            out_ << "# FAILED " << msg << '\n';
        else
            out_ << (first_ ? "  " : ",\n  ") << json{{"failed", msg}}.dump();
        out_.flush();
    }

    void close() {
        if (closed_) return;
        if (cfg_.format == OutputFormat::Json) out_ << "\n]\n";
        out_.flush();
        closed_ = true;
        if (!out_) throw IoError("write failed for '" + cfg_.output_path + "'");
    }

    ~TableWriter() {
        try {
            close();
        } catch (...) {
        }
    }

  private:
    const RunConfig& cfg_;
    std::ofstream out_;
    bool first_ = true;
    bool closed_ = false;
};

json config_echo(const RunConfig& cfg) {
    json c;
    c["command"] = cfg.command;
    c["model"] = {{"n", cfg.params.n_sites},
                  {"lambda", cfg.params.lambda},
                  {"tau", cfg.params.tau},
                  {"w2", cfg.params.w2},
                  {"protocol", cfg.params.protocol.name()},
                  {"g_start", cfg.params.protocol.g_start},
                  {"g_end", cfg.params.protocol.g_end}};
    c["sweep"] = {{"tau", cfg.sweep_tau}, {"w2", cfg.sweep_w2}};
    c["integrator"] = {{"method", cfg.integrator.method == StepMethod::FixedRk4 ? "fixed"
                                                                                : "adaptive"},
                       {"dt", cfg.integrator.dt},
                       {"tolerance", cfg.integrator.tolerance},
                       {"renormalize_every", cfg.integrator.renormalize_every}};
    c["trajectories"] = {{"n", cfg.trajectories.n_traj},
                         {"dt", cfg.trajectories.dt},
                         {"scope", cfg.trajectories.scope == TrajectoryScope::PerMode
                                       ? "mode"
                                       : "full"}};
    c["verify"] = {{"k", cfg.verify_k}};
    c["seed"] = cfg.seed;
    c["output"] = cfg.output_path;
    c["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
    c["threads"] = cfg.threads;
    return c;
}

void write_meta(const RunConfig& cfg, double wall_seconds, const json& results) {
    json meta;
    meta["version"] = kVersion;
    meta["config"] = config_echo(cfg);
    meta["wall_time_s"] = wall_seconds;
    if (!results.is_null()) meta["results"] = results;
    std::ofstream out(cfg.output_path + ".meta.json");
    if (!out) throw IoError("cannot open metadata sidecar for '" + cfg.output_path + "'");
    out << meta.dump(2) << '\n';
}

std::string w2_tag(double w2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", w2);
    return buf;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

ObservableRecord run_point(const ModelParams& base, double tau, double w2,
                           const IntegratorConfig& integ) {
    ModelParams p = base;
    p.tau = tau;
    p.w2 = w2;
    try {
        return make_record(evolve_all(p, integ), p, Method::MasterEquation);
    } catch (const std::exception& e) {
        throw SimulationError("at (tau = " + fmt_g17(tau) + ", w2 = " + fmt_g17(w2) +
                              "): " + e.what());
    }
}

json cmd_single(const RunConfig& cfg, TableWriter& table) {
    const ObservableRecord r =
        run_point(cfg.params, cfg.params.tau, cfg.params.w2, cfg.integrator);
    table.row(r, cfg.params);
    return nullptr;
}

json cmd_sweep_tau(const RunConfig& cfg, TableWriter& table) {
    std::vector<double> w2s = cfg.sweep_w2.empty() ? std::vector<double>{cfg.params.w2}
                                                   : cfg.sweep_w2;
    // The W^2 = 0 baseline is always computed: it anchors delta n_W.
    if (std::find(w2s.begin(), w2s.end(), 0.0) == w2s.end()) w2s.insert(w2s.begin(), 0.0);
    std::sort(w2s.begin(), w2s.end());

    std::vector<ObservableRecord> records;
    std::vector<ObservableRecord> baseline;
    json results;
    for (double w2 : w2s) {
        std::vector<ObservableRecord> rows;
        for (double tau : cfg.sweep_tau) {
            ModelParams p = cfg.params;
            p.tau = tau;
            p.w2 = w2;
            ObservableRecord r;
            try {
                r = run_point(cfg.params, tau, w2, cfg.integrator);
            } catch (const SimulationError& e) {
                table.fail_marker(e.what());
                throw;
            }
            table.row(r, p);
            rows.push_back(r);
            records.push_back(r);
        }
        if (w2 == 0.0) {
            baseline = rows;
            if (rows.size() >= 3) {
                std::vector<double> taus, nws;
                for (const auto& r : rows) {
                    taus.push_back(r.tau);
                    nws.push_back(r.n_w);
                }
                const FitResult fit = fit_power_law(taus, nws);
                results["kzm_fit"] = {{"prefactor", fit.prefactor},
                                      {"exponent", fit.exponent},
                                      {"prefactor_err", fit.prefactor_err},
                                      {"exponent_err", fit.exponent_err},
                                      {"r2", fit.r2}};
            }
        } else if (!baseline.empty()) {
            try {
                const HeatingRate hr = heating_rate(rows, baseline);
                results["heating"][w2_tag(w2)] = {{"rate", hr.rate},
                                                  {"residual", hr.residual}};
            } catch (const SimulationError&) {
                // no points inside the fast-ramp window; skip the report
            }
        }
    }
    emit_plot_data(records, cfg.output_path + ".plot");
    return results;
}

json cmd_sweep_w2(const RunConfig& cfg, TableWriter& table) {
    for (double w2 : cfg.sweep_w2) {
        ModelParams p = cfg.params;
        p.w2 = w2;
        ObservableRecord r;
        try {
            r = run_point(cfg.params, cfg.params.tau, w2, cfg.integrator);
        } catch (const SimulationError& e) {
            table.fail_marker(e.what());
            throw;
        }
        table.row(r, p);
    }
    return nullptr;
}

json cmd_tau_opt(const RunConfig& cfg, TableWriter& table) {
    const std::vector<double> w2s =
        cfg.sweep_w2.empty() ? default_w2_grid() : cfg.sweep_w2;
    SweepSpec search;
    search.tau_grid = cfg.sweep_tau;
    search.base = cfg.params;
    search.integrator = cfg.integrator;

    const TauOptScaling scaling = fit_tau_opt_scaling(w2s, search);
    for (std::size_t i = 0; i < scaling.w2.size(); ++i) {
        ModelParams p = cfg.params;
        p.tau = scaling.optima[i].tau_opt;
        p.w2 = scaling.w2[i];
        table.row(run_point(cfg.params, p.tau, p.w2, cfg.integrator), p);
    }

    // Fig.-3-style plot data: measured optima plus fit-line samples.
    const std::string plot_path = cfg.output_path + ".plot.tauopt.dat";
    std::ofstream plot(plot_path);
    if (!plot) throw IoError("cannot open '" + plot_path + "'");
    plot << "# w2 [time]  tau_opt [time]  n_min [dimensionless]  tau_fit [time]\n";
    for (std::size_t i = 0; i < scaling.w2.size(); ++i) {
        const double fit_tau =
            scaling.fit.prefactor * std::pow(scaling.w2[i], scaling.fit.exponent);
        plot << fmt_g17(scaling.w2[i]) << ' ' << fmt_g17(scaling.optima[i].tau_opt) << ' '
             << fmt_g17(scaling.optima[i].n_min) << ' ' << fmt_g17(fit_tau) << '\n';
    }

    json results;
    results["tau_opt_fit"] = {{"a", scaling.fit.prefactor},
                              {"a_err", scaling.fit.prefactor_err},
                              {"b", scaling.fit.exponent},
                              {"b_err", scaling.fit.exponent_err},
                              {"r2", scaling.fit.r2}};
    return results;
}

json cmd_verify_novikov(const RunConfig& cfg) {
    const ModeCoefficients coeffs = coefficients(cfg.verify_k, cfg.params);
    const ModeDensityMatrix rho0 =
        ModeDensityMatrix::pure(ground_state(cfg.verify_k, 0.0, cfg.params));
    const ModeDensityMatrix master =
        integrate_mode(rho0, coeffs, cfg.params, cfg.integrator);
    const AveragedState avg = noise_average(cfg.verify_k, cfg.params, cfg.trajectories);

    double max_sigma = 0.0;
    json entries = json::array();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double dre = avg.mean.rho(i, j).real() - master.rho(i, j).real();
            const double dim_ = avg.mean.rho(i, j).imag() - master.rho(i, j).imag();
            const double floor = 1e-14;
            const double sre = std::abs(dre) / std::max(avg.stderr_re(i, j), floor);
            const double sim = std::abs(dim_) / std::max(avg.stderr_im(i, j), floor);
            max_sigma = std::max({max_sigma, sre, sim});
            entries.push_back({{"entry", std::to_string(i) + std::to_string(j)},
                               {"mean_re", avg.mean.rho(i, j).real()},
                               {"mean_im", avg.mean.rho(i, j).imag()},
                               {"master_re", master.rho(i, j).real()},
                               {"master_im", master.rho(i, j).imag()},
                               {"stderr_re", avg.stderr_re(i, j)},
                               {"stderr_im", avg.stderr_im(i, j)},
                               {"sigma_re", sre},
                               {"sigma_im", sim}});
        }

    json report;
    report["k"] = cfg.verify_k;
    report["tau"] = cfg.params.tau;
    report["w2"] = cfg.params.w2;
    report["n_traj"] = cfg.trajectories.n_traj;
    report["max_sigma"] = max_sigma;
    report["pass"] = max_sigma < 3.0;
    report["entries"] = entries;

    std::ofstream out(cfg.output_path);
    if (!out) throw IoError("cannot open output file '" + cfg.output_path + "'");
    out << report.dump(2) << '\n';
    return report;
}

json cmd_verify_oracle(const RunConfig& cfg, TableWriter& table) {
    json results = json::array();
    for (const auto& [tau, w2] : cfg.oracle_points) {
        ModelParams p = cfg.params;
        p.tau = tau;
        p.w2 = w2;
        p.validate();
        const ObservableRecord mode_rec = run_point(cfg.params, tau, w2, cfg.integrator);
        table.row(mode_rec, p);
        const FullSpaceState st = full_space_oracle(p, cfg.integrator);
        const FullSpaceObservables ob = full_space_observables(st, p);
        const ObservableRecord oracle_rec{tau, w2, ob.n_w, ob.q, ob.de, Method::Oracle};
        table.row(oracle_rec, p);
        results.push_back({{"tau", tau},
                           {"w2", w2},
                           {"dn_w", std::abs(mode_rec.n_w - ob.n_w)},
                           {"dq", std::abs(mode_rec.q - ob.q)},
                           {"dde", std::abs(mode_rec.de - ob.de)}});
    }
    return json{{"oracle_diffs", results}};
}

json cmd_asymptotics(const RunConfig& cfg) {
    std::ofstream out(cfg.output_path);
    if (!out) throw IoError("cannot open output file '" + cfg.output_path + "'");
    out << "# tau [time]  n_k_closed [dimensionless]  n_k_discrete(N=" << cfg.params.n_sites
        << ") [dimensionless]\n";
    for (double tau : cfg.sweep_tau)
        out << fmt_g17(tau) << ' ' << fmt_g17(kayanuma_density(tau)) << ' '
            << fmt_g17(kayanuma_density_discrete(cfg.params.n_sites, tau)) << '\n';
    if (!out) throw IoError("write failed for '" + cfg.output_path + "'");
    return nullptr;
}

} // namespace

void RunConfig::validate() const {
    static const std::vector<std::string> known = {
        "single", "sweep-tau", "sweep-w2", "tau-opt",
        "verify-novikov", "verify-oracle", "asymptotics"};
    if (std::find(known.begin(), known.end(), command) == known.end())
        throw ConfigError("command: expected one of single, sweep-tau, sweep-w2, tau-opt, "
                          "verify-novikov, verify-oracle, asymptotics; got '" + command + "'");
    try {
        params.validate();
        if (command == "sweep-tau" || command == "tau-opt" || command == "asymptotics") {
            if (sweep_tau.empty())
                throw std::invalid_argument("sweep.tau: required for command " + command);
            for (std::size_t i = 1; i < sweep_tau.size(); ++i)
                if (!(sweep_tau[i] > sweep_tau[i - 1]))
                    throw std::invalid_argument("sweep.tau: must be strictly increasing");
            if (!(sweep_tau.front() > 0.0))
                throw std::invalid_argument("sweep.tau: values must be > 0");
        }
        if (command == "sweep-w2") {
            if (sweep_w2.empty())
                throw std::invalid_argument("sweep.w2: required for command sweep-w2");
        }
        for (std::size_t i = 1; i < sweep_w2.size(); ++i)
            if (!(sweep_w2[i] > sweep_w2[i - 1]))
                throw std::invalid_argument("sweep.w2: must be strictly increasing");
        if (!sweep_w2.empty() && sweep_w2.front() < 0.0)
            throw std::invalid_argument("sweep.w2: values must be >= 0");
        if (command == "verify-novikov") {
            if (trajectories.n_traj < 2)
                throw std::invalid_argument("trajectories.n: must be >= 2 for verify-novikov");
            trajectories.validate(params);
        }
        if (command == "verify-oracle") {
            if (oracle_points.empty())
                throw std::invalid_argument("oracle.points: required for verify-oracle");
            if (params.n_sites > 10)
                throw std::invalid_argument("model.n: verify-oracle requires N <= 10");
        }
        if (threads < 0) throw std::invalid_argument("threads: must be >= 0");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    return build_config(tokenize_config(text, origin));
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void emit_plot_data(std::span<const ObservableRecord> records, const std::string& prefix) {
    if (records.empty()) throw std::invalid_argument("emit_plot_data: empty record set");

    // Baseline n_W by tau for the delta column.
    std::map<double, double> baseline;
    for (const auto& r : records)
        if (r.w2 == 0.0) baseline[r.tau] = r.n_w;

    std::vector<double> w2s;
    for (const auto& r : records)
        if (std::find(w2s.begin(), w2s.end(), r.w2) == w2s.end()) w2s.push_back(r.w2);
    std::sort(w2s.begin(), w2s.end());

    for (double w2 : w2s) {
        const std::string path = prefix + ".w2_" + w2_tag(w2) + ".dat";
        std::ofstream out(path);
        if (!out) throw IoError("cannot open plot file '" + path + "'");
        out << "# tau [time]  w2 [time]  n_w [dimensionless]  q [energy/site]  "
               "de [energy/site]  delta_n_w [dimensionless]\n";
        for (const auto& r : records) {
            if (r.w2 != w2) continue;
            const auto it = baseline.find(r.tau);
            const double dnw = (it != baseline.end()) ? r.n_w - it->second
                                                      : std::nan("");
            out << fmt_g17(r.tau) << ' ' << fmt_g17(r.w2) << ' ' << fmt_g17(r.n_w) << ' '
                << fmt_g17(r.q) << ' ' << fmt_g17(r.de) << ' ' << fmt_g17(dnw) << '\n';
        }
        if (!out) throw IoError("write failed for plot file '" + path + "'");
    }
}

int run(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.threads > 0) {
        omp_set_num_threads(cfg.threads);
        Eigen::setNbThreads(cfg.threads);
    }

    const auto t0 = std::chrono::steady_clock::now();
    json results;

    if (cfg.command == "verify-novikov") {
        results = cmd_verify_novikov(cfg);
    } else if (cfg.command == "asymptotics") {
        results = cmd_asymptotics(cfg);
    } else {
        TableWriter table(cfg);
        if (cfg.command == "single")
            results = cmd_single(cfg, table);
        else if (cfg.command == "sweep-tau")
            results = cmd_sweep_tau(cfg, table);
        else if (cfg.command == "sweep-w2")
            results = cmd_sweep_w2(cfg, table);
        else if (cfg.command == "tau-opt")
            results = cmd_tau_opt(cfg, table);
        else if (cfg.command == "verify-oracle")
            results = cmd_verify_oracle(cfg, table);
        table.close();
    }

    const double wall = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t0).count();
    write_meta(cfg, wall, results);
    return 0;
}

} // namespace antikz
