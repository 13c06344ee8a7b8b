#include "tpjc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "tpjc/lindblad_oracle.hpp"

#ifndef TPJC_VERSION
#define TPJC_VERSION "dev"
#endif

namespace tpjc::harness {

namespace {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v))
        throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("'" + key + "' needs at least one value");
    return out;
}

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    const auto last = s.find_last_not_of(" \t\r");
    s.erase(last == std::string::npos ? 0 : last + 1);
    return s;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Mode parse_mode(const std::string& name) {
    if (name == "fig1") return Mode::Fig1;
    if (name == "fig2") return Mode::Fig2;
    if (name == "custom") return Mode::Custom;
    if (name == "validate") return Mode::Validate;
    throw ConfigError("unknown mode '" + name + "' (expected fig1, fig2, custom or validate)");
}

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::Fig1: return "fig1";
        case Mode::Fig2: return "fig2";
        case Mode::Custom: return "custom";
        case Mode::Validate: return "validate";
    }
    return "custom";
}

std::vector<double> SweepConfig::kappa_list() const {
    if (!kappas.empty()) return kappas;
    if (mode == Mode::Fig1) return {0.02, 0.04, 0.1};
    return {0.04};
}

std::vector<double> SweepConfig::nbar_list() const {
    if (!nbars.empty()) return nbars;
    if (mode == Mode::Fig2) return {1.0, 2.0, 3.0};
    return {1.0};
}

std::vector<double> SweepConfig::time_grid() const {
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) t[i] = t_max * i / (samples - 1);
    return t;
}

void SweepConfig::check() const {
    if (!(t_max > 0.0)) throw ConfigError("tmax must be positive");
    if (samples < 2) throw ConfigError("samples must be at least 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
    for (double k : kappa_list())
        if (!(k >= 0.0)) throw ConfigError("kappa values must be non-negative");
    for (double n : nbar_list())
        if (!(n >= 0.0)) throw ConfigError("nbar values must be non-negative");
}

void apply_setting(SweepConfig& config, const std::string& key, const std::string& value) {
    if (key == "mode") config.mode = parse_mode(value);
    else if (key == "kappa") config.kappas = parse_list(key, value);
    else if (key == "nbar") config.nbars = parse_list(key, value);
    else if (key == "beta-diff") config.beta_diff = parse_double(key, value);
    else if (key == "beta1") config.beta1 = parse_double(key, value);
    else if (key == "tmax") config.t_max = parse_double(key, value);
    else if (key == "samples") {
        const double s = parse_double(key, value);
        if (s != std::floor(s) || s < 0 || s > 1e8) throw ConfigError("samples must be a count");
        config.samples = static_cast<int>(s);
    } else if (key == "epsilon") config.epsilon = parse_double(key, value);
    else if (key == "out") config.out_dir = value;
    else throw ConfigError("unknown setting '" + key + "'");
}

void load_config(SweepConfig& config, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void load_config_file(SweepConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    load_config(config, in);
}

ModelParams sweep_params(const SweepConfig& config, double kappa, double nbar) {
    DimensionlessRatios r;
    r.kappa = kappa;
    r.beta1 = config.beta1;
    r.beta_diff = config.beta_diff;
    r.alpha = std::sqrt(nbar);
    return build_params(r);
}

int truncation_dim(cplx alpha, double t_max, double epsilon) {
    // Dropped mass p lowers the purity by at most 2p; keep S_f within epsilon.
    return choose_truncation(alpha, t_max, 0.5 * epsilon) + 1;
}

EntropyTrace compute_trace(const ModelParams& params, const std::vector<double>& times,
                           double epsilon) {
    const double horizon = times.empty() ? 0.0 : times.back();
    const int dim = truncation_dim(params.alpha, horizon, epsilon);
    EntropyTrace trace;
    trace.kappa = params.kappa / params.omega_shift;
    trace.nbar = params.mean_photons();
    trace.rows.reserve(times.size());
    for (double t : times) {
        const auto rho = field_state(params, t, dim);
        TraceRow row;
        row.omega_t = params.omega_shift * t;
        row.s_f = linear_entropy(params, t, dim);
        row.trace = rho.trace();
        row.tail = rho.tail_bound();
        row.abs_a1 = std::abs(amplitude_moment(params, 1, t));
        trace.rows.push_back(row);
    }
    trace.metadata = {
        {"kappa_over_omega", format_number(params.kappa / params.omega_shift)},
        {"beta1_over_omega", format_number(params.beta1 / params.omega_shift)},
        {"beta_diff_over_omega", format_number((params.beta2 - params.beta1) / params.omega_shift)},
        {"nbar", format_number(params.mean_photons())},
        {"alpha", format_number(params.alpha.real()) + (params.alpha.imag() < 0 ? "" : "+") +
                      format_number(params.alpha.imag()) + "i"},
        {"truncation_dim", std::to_string(dim)},
        {"epsilon", format_number(epsilon)},
        {"version", TPJC_VERSION},
    };
    return trace;
}

std::vector<EntropyTrace> compute_sweep(const SweepConfig& config) {
    config.check();
    const auto times = config.time_grid();
    std::vector<std::pair<double, double>> members;
    for (double k : config.kappa_list())
        for (double n : config.nbar_list()) members.emplace_back(k, n);

    auto one = [&](std::pair<double, double> member) {
        auto trace = compute_trace(sweep_params(config, member.first, member.second), times,
                                   config.epsilon);
        trace.metadata.insert(trace.metadata.begin(), {"mode", mode_name(config.mode)});
        trace.metadata.emplace_back("t_max", format_number(config.t_max));
        trace.metadata.emplace_back("samples", std::to_string(config.samples));
        return trace;
    };

    std::vector<EntropyTrace> out;
    if (config.threads == 1) {
        for (const auto& m : members) out.push_back(one(m));
        return out;
    }
    std::vector<std::future<EntropyTrace>> jobs;
    for (const auto& m : members) jobs.push_back(std::async(std::launch::async, one, m));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

void write_csv(const EntropyTrace& trace, std::ostream& out, bool with_timestamp) {
    for (const auto& [key, value] : trace.metadata) out << "# " << key << '=' << value << '\n';
    if (with_timestamp) out << "# generated=" << utc_timestamp() << '\n';
    out << csv_body(trace);
}

std::string csv_body(const EntropyTrace& trace) {
    std::string body = std::string(kCsvHeader) + '\n';
    for (const auto& r : trace.rows) {
        body += format_number(r.omega_t) + ',' + format_number(r.s_f) + ',' +
                format_number(r.trace) + ',' + format_number(r.tail) + ',' +
                format_number(r.abs_a1) + '\n';
    }
    return body;
}

std::string trace_file_name(Mode mode, const EntropyTrace& trace) {
    const std::string k = short_number(trace.kappa);
    const std::string n = short_number(trace.nbar);
    switch (mode) {
        case Mode::Fig1: return "fig1_kappa_" + k + ".csv";
        case Mode::Fig2: return "fig2_nbar_" + n + ".csv";
        default: return mode_name(mode) + "_kappa_" + k + "_nbar_" + n + ".csv";
    }
}

std::vector<std::string> row_violations(const EntropyTrace& trace) {
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        const auto& r = trace.rows[i];
        std::ostringstream os;
        if (i > 0 && !(r.omega_t > trace.rows[i - 1].omega_t)) os << " time not increasing;";
        if (!(r.s_f >= 0.0 && r.s_f < 1.0)) os << " s_f=" << r.s_f << " outside [0,1);";
        if (!(std::abs(r.trace - 1.0) <= r.tail + 1e-9)) os << " trace=" << r.trace << ";";
        if (!os.str().empty()) bad.push_back("row " + std::to_string(i) + ":" + os.str());
    }
    return bad;
}

std::vector<std::filesystem::path> write_traces(const SweepConfig& config,
                                                const std::vector<EntropyTrace>& traces) {
    std::filesystem::create_directories(config.out_dir);
    std::vector<std::filesystem::path> paths;
    for (const auto& trace : traces) {
        const auto path = config.out_dir / trace_file_name(config.mode, trace);
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path.string());
        write_csv(trace, out);
        if (!out) throw Error("write failed for " + path.string());
        paths.push_back(path);
    }
    return paths;
}

namespace {

std::vector<std::filesystem::path> run_mode(const SweepConfig& config, Mode expected) {
    if (config.mode != expected)
        throw ConfigError("config mode is " + mode_name(config.mode) + ", expected " +
                          mode_name(expected));
    return write_traces(config, compute_sweep(config));
}

}  // namespace

std::vector<std::filesystem::path> run_fig1(const SweepConfig& config) {
    return run_mode(config, Mode::Fig1);
}

std::vector<std::filesystem::path> run_fig2(const SweepConfig& config) {
    return run_mode(config, Mode::Fig2);
}

std::vector<std::filesystem::path> run_custom(const SweepConfig& config) {
    return run_mode(config, Mode::Custom);
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationReport run_validate(const SweepConfig& config, const ValidationOptions& options) {
    config.check();
    ValidationReport report;
    auto add = [&](std::string name, double value, double tol) {
        report.checks.push_back({std::move(name), value <= tol, value, tol});
    };

    const auto params = sweep_params(config, config.kappa_list().front(), config.nbar_list().front());
    const int dim = truncation_dim(params.alpha, config.t_max, config.epsilon);

    KernelFn closed_kernel = kernel;
    if (config.corrupt_kernel) {
        closed_kernel = [](const ModelParams& p, int m, int n, double t) {
            auto v = kernel(p, m, n, t);
            v.theta_g = -v.theta_g;
            return v;
        };
    }

    // Closed form against direct integration.
    {
        const auto initial = oracle::initial_joint_state(params, dim + oracle::kGuardLevels);
        oracle::IntegratorConfig ic;
        ic.step = options.oracle_step;
        ic.check_convergence = true;
        double worst = 0.0;
        double drift = 0.0;
        double convergence = 0.0;
        try {
            const auto traj = oracle::propagate_trajectory(params, initial, options.oracle_times, ic);
            drift = traj.max_trace_drift;
            for (const auto& s : traj.samples) {
                const auto reference = oracle::reduce_field(s);
                const auto closed = field_state(params, s.t, dim, closed_kernel);
                worst = std::max(worst, max_abs_difference(closed.entries(),
                                                           reference.entries().topLeftCorner(dim, dim)));
            }
        } catch (const ConvergenceError&) {
            convergence = std::numeric_limits<double>::infinity();
            worst = std::numeric_limits<double>::infinity();
        }
        add("oracle_equivalence", worst, 1e-6);
        add("oracle_trace_drift", drift, 1e-9);
        add("oracle_step_halving", convergence, 1e-8);
    }

    // Lossless limit against exact phase evolution.
    {
        const auto lossless = with_kappa(params, 0.0);
        const int d0 = truncation_dim(lossless.alpha, config.t_max, config.epsilon);
        double worst = 0.0;
        for (double t : {1.0, 5.0, 15.0}) {
            const auto closed = field_state(lossless, t, d0, closed_kernel);
            worst = std::max(worst, max_abs_difference(closed.entries(),
                                                       oracle::unitary_reference(lossless, t, d0).entries()));
        }
        add("lossless_unitary", worst, 1e-10);
    }

    // Two entropy routes, trace and hermiticity over the time grid.
    {
        double dual = 0.0, trace_excess = 0.0, herm = 0.0;
        for (double t : config.time_grid()) {
            const auto rho = field_state(params, t, dim, closed_kernel);
            dual = std::max(dual, std::abs(linear_entropy(params, t, dim) - linear_entropy_from_state(rho)));
            trace_excess = std::max(trace_excess, std::abs(rho.trace() - 1.0) - rho.tail_bound());
            herm = std::max(herm, rho.max_hermiticity_defect());
        }
        add("entropy_dual_path", dual, 1e-9);
        add("trace_within_tail", std::max(trace_excess, 0.0), 1e-9);
        add("hermiticity", herm, 1e-12);
    }

    add("superoperator_commutators", superop_commutators_check(8) ? 0.0 : 1.0, 0.0);

    {
        double worst = 0.0;
        for (double t : {0.5, 3.0, 11.0})
            for (int m = 0; m < dim; ++m)
                for (int n = 0; n < dim; ++n) {
                    const auto a = closed_kernel(params, m, n, t);
                    const auto b = closed_kernel(params, n, m, t);
                    worst = std::max({worst, std::abs(a.gamma - b.gamma),
                                      std::abs(a.theta_g + b.theta_g), std::abs(a.theta_e + b.theta_e)});
                }
        add("kernel_antisymmetry", worst, 1e-12);
    }

    {
        const auto shifted = make_params(params.beta1 + 0.37, params.beta2 + 0.37, params.omega_shift,
                                         params.kappa, params.alpha);
        double worst = 0.0;
        for (double t : {0.7, 4.0, 13.0})
            worst = std::max(worst, std::abs(linear_entropy(params, t, dim) - linear_entropy(shifted, t, dim)));
        add("beta_shift_invariance", worst, 1e-12);
    }
    return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << format_number(c.value)
            << "  tol=" << format_number(c.tolerance) << '\n';
    }
    out << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
}

double settling_time(const EntropyTrace& trace, double level) {
    double settle = trace.rows.empty() ? std::numeric_limits<double>::infinity() : trace.rows.front().omega_t;
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        if (trace.rows[i].s_f >= level) {
            settle = i + 1 < trace.rows.size() ? trace.rows[i + 1].omega_t
                                               : std::numeric_limits<double>::infinity();
        }
    }
    return settle;
}

std::vector<double> window_maxima(const EntropyTrace& trace, double window) {
    if (!(window > 0.0)) throw ParameterError("window must be positive");
    std::vector<double> out;
    if (trace.rows.empty()) return out;
    const double start = trace.rows.front().omega_t;
    const double end = trace.rows.back().omega_t;
    const auto full = static_cast<std::size_t>(std::floor((end - start) / window));
    out.assign(full, -std::numeric_limits<double>::infinity());
    for (const auto& r : trace.rows) {
        const auto k = static_cast<std::size_t>(std::floor((r.omega_t - start) / window));
        if (k < full) out[k] = std::max(out[k], r.s_f);
    }
    return out;
}

std::size_t count_local_maxima(const EntropyTrace& trace) {
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < trace.rows.size(); ++i)
        if (trace.rows[i].s_f > trace.rows[i - 1].s_f && trace.rows[i].s_f >= trace.rows[i + 1].s_f)
            ++count;
    return count;
}

bool non_increasing_after_peak(const std::vector<double>& values, double slack) {
    if (values.empty()) return true;
    const auto peak = std::max_element(values.begin(), values.end());
    for (auto it = peak; it + 1 != values.end(); ++it)
        if (*(it + 1) > *it + slack) return false;
    return true;
}

double max_entropy(const EntropyTrace& trace) {
    double m = 0.0;
    for (const auto& r : trace.rows) m = std::max(m, r.s_f);
    return m;
}

}  // namespace tpjc::harness
