#pragma once

// Experiment runner: entropy sweeps over damping and intensity, CSV traces and
// the oracle-validation suite.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tpjc/liouville.hpp"

namespace tpjc::harness {

enum class Mode { Fig1, Fig2, Custom, Validate };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

inline constexpr const char* kOutputDirEnv = "TPJC_OUT_DIR";

struct SweepConfig {
    Mode mode = Mode::Custom;
    // Empty lists mean "use the mode's preset".
    std::vector<double> kappas;  // κ/Ω
    std::vector<double> nbars;   // n̄ = |α|², α = √n̄ taken real
    double beta_diff = 0.02;     // (β₂−β₁)/Ω
    double beta1 = 1.0;          // β₁/Ω; S_f does not depend on it
    double t_max = 30.0;         // in units of 1/Ω
    int samples = 600;
    double epsilon = 1e-12;
    std::filesystem::path out_dir = ".";
    unsigned threads = 0;        // 0: one per sweep member
    bool corrupt_kernel = false; // validation self-test: negate the ground-branch phase

    std::vector<double> kappa_list() const;
    std::vector<double> nbar_list() const;
    std::vector<double> time_grid() const;
    void check() const;  // throws ConfigError
};

// One key=value assignment, using the long flag names without dashes
// (mode, kappa, nbar, beta-diff, beta1, tmax, samples, epsilon, out).
void apply_setting(SweepConfig& config, const std::string& key, const std::string& value);

// key=value lines; '#' starts a comment.
void load_config(SweepConfig& config, std::istream& in);
void load_config_file(SweepConfig& config, const std::filesystem::path& path);

struct TraceRow {
    double omega_t = 0.0;
    double s_f = 0.0;
    double trace = 0.0;
    double tail = 0.0;
    double abs_a1 = 0.0;
};

struct EntropyTrace {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<TraceRow> rows;
    double kappa = 0.0;
    double nbar = 0.0;
};

// Dimensionless model for one sweep member (Ω = 1).
ModelParams sweep_params(const SweepConfig& config, double kappa, double nbar);

int truncation_dim(cplx alpha, double t_max, double epsilon);

EntropyTrace compute_trace(const ModelParams& params, const std::vector<double>& times,
                           double epsilon);

// Traces for every (κ, n̄) pair of the config, in list order.
std::vector<EntropyTrace> compute_sweep(const SweepConfig& config);

inline constexpr const char* kCsvHeader = "omega_t,s_f,trace,tail,abs_a1";

void write_csv(const EntropyTrace& trace, std::ostream& out, bool with_timestamp = true);
std::string csv_body(const EntropyTrace& trace);
std::string trace_file_name(Mode mode, const EntropyTrace& trace);

// Rows breaking Ωt ordering, S_f ∈ [0,1) or |trace − 1| ≤ tail + 1e-9.
std::vector<std::string> row_violations(const EntropyTrace& trace);

std::vector<std::filesystem::path> write_traces(const SweepConfig& config,
                                                const std::vector<EntropyTrace>& traces);

std::vector<std::filesystem::path> run_fig1(const SweepConfig& config);
std::vector<std::filesystem::path> run_fig2(const SweepConfig& config);
std::vector<std::filesystem::path> run_custom(const SweepConfig& config);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured deviation or indicator
    double tolerance = 0.0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

struct ValidationOptions {
    std::vector<double> oracle_times{1.0, 5.0};
    double oracle_step = 5e-4;
};

ValidationReport run_validate(const SweepConfig& config, const ValidationOptions& options = {});
void print_report(const ValidationReport& report, std::ostream& out);

// Trace analysis.

// Smallest sampled Ωt after which every sample stays below `level`; +inf when the
// trace ends at or above it.
double settling_time(const EntropyTrace& trace, double level);

// Maximum S_f over consecutive windows [kW, (k+1)W); a trailing partial window is dropped.
std::vector<double> window_maxima(const EntropyTrace& trace, double window);

std::size_t count_local_maxima(const EntropyTrace& trace);

// True when the sequence never increases after its largest element (within `slack`).
bool non_increasing_after_peak(const std::vector<double>& values, double slack = 0.0);

double max_entropy(const EntropyTrace& trace);

}  // namespace tpjc::harness
