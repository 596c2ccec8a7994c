#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/forces.hpp"

namespace casimir {

inline constexpr int csv_schema_version = 1;

struct CommandOptions {
    std::optional<std::string> out;  // file (force, limits, verify) or directory (sweep-sigma)
    bool reproducible = false;       // suppress the timestamp line
    std::optional<int> threads;
};

// exit codes
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_verify = 4;

// ---- force ----
ForceBreakdown run_force(const RunConfig& cfg);
std::string force_csv(const ForceBreakdown& fb, bool reproducible);
int cmd_force(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);

// ---- sweep-sigma ----
struct SweepRow {
    double omega_center = 0.0, sigma = 0.0, squeeze = 0.0;
    double f_ic_thermal = 0.0, f_ic_squeezed = 0.0, ratio_ic = 0.0;
    double f_total_thermal = 0.0, f_total_squeezed = 0.0, ratio_total = 0.0;
    double err_ic_squeezed = 0.0, err_total_squeezed = 0.0;
    std::string flags;
};

struct SweepTable {
    SweepBase base;
    std::string base_flags;  // set when the shared integrals failed
    double beta_field = 0.0, beta_left = 0.0, beta_right = 0.0;
    std::vector<std::vector<SweepRow>> rows;  // one block per omega_center, sigma ascending
};

// squeezed IC force = f_vac + (cosh(2 scale/sigma) - 1) * band integral; cells run on `threads` workers
SweepTable run_sweep_sigma(const RunConfig& cfg, int threads);
std::string sweep_csv(const RunConfig& cfg, const SweepTable& t, std::size_t block, bool reproducible);
std::string sweep_file_name(double omega_center);
int cmd_sweep_sigma(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);

// ---- limits ----
struct LimitRow {
    std::string limit;
    double gap = 0.0, width = 0.0, parameter = 0.0;
    double value = 0.0, err = 0.0, reference = 0.0, rel_dev = 0.0;
    std::string flags;
};
std::vector<LimitRow> run_limits(const RunConfig& cfg);
int cmd_limits(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);

// ---- verify ----
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
std::vector<CheckResult> run_verify(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);

// static_nd copy of a material (zero-frequency permittivity)
Material static_limit(const Material& m);
CavityConfig static_limit(const CavityConfig& cfg);

}  // namespace casimir
