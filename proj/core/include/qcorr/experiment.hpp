#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/dynamics.hpp"

namespace qcorr {

enum class ScanMode { AnalyticFamily, Numeric };

struct ScanConfig {
    std::vector<double> p_values;
    double k = 0.5;
    double tau_max = 30.0;
    int samples = 3001;
    ScanMode mode = ScanMode::AnalyticFamily;
    std::string output_path;
    std::uint64_t seed = 0;

    // numeric-mode evolution parameters
    double V = 0;
    double omega1 = 0;
    double omega2 = 0;
    double step = 1e-3;
};

void validate_scan_config(const ScanConfig& cfg);

/// One CSV row; column order is fixed to the field order below.
struct TrajectoryRecord {
    double tau = 0, p = 0, k = 0;
    double a = 0, b = 0, c = 0, d = 0, z_re = 0, z_im = 0;
    double C = 0, B = 0, BF3 = 0, D = 0;
    double HB = 0, HBF3 = 0, HD = 0, MEC = 0;
    double nu0 = 0, nu1 = 0, nu2 = 0, nu3 = 0;
};

inline constexpr const char* kRecordCsvHeader =
    "tau,p,k,a,b,c,d,z_re,z_im,C,B,BF3,D,HB,HBF3,HD,MEC,nu0,nu1,nu2,nu3";

/// Evaluates the correlation and hidden reports on every (p, tau) grid
/// point; records come back canonically sorted by (p, tau). Deterministic
/// for identical configs.
std::vector<TrajectoryRecord> run_trajectory_scan(const ScanConfig& cfg);

/// First tau at which the series leaves the threshold: the first sample
/// strictly above `threshold` whose predecessor was <= threshold (the
/// initial sample counts if it already exceeds it). nullopt without a
/// crossing.
std::optional<double> detect_birth_time(std::span<const std::pair<double, double>> series,
                                        double threshold = 1e-12);

/// Same, then bisection of value_at(tau) - threshold inside the bracketing
/// grid cell to |dtau| <= 1e-6.
std::optional<double> detect_birth_time(std::span<const std::pair<double, double>> series,
                                        double threshold,
                                        const std::function<double(double)>& value_at);

/// 17-significant-digit CSV with the fixed header above.
void write_records_csv(std::ostream& out, std::span<const TrajectoryRecord> records);
void write_records_csv(const std::filesystem::path& path,
                       std::span<const TrajectoryRecord> records);

/// Per-p summary of a family scan.
struct FamilySummary {
    double p = 0;
    double c_max = 0, tau_c_max = 0;
    std::optional<double> tau_birth_c, tau_birth_hd, tau_birth_hbf3, tau_birth_hb;
    std::optional<double> tau_hd_099, tau_hbf3_099, tau_hb_099;
};

/// k = 1/2, p in {0, 1/30, ..., 10/30}, tau in [0,30] with 3001 samples.
/// Writes figure1_p00.csv .. figure1_p10.csv plus summary.csv into out_dir
/// and returns the summaries.
std::vector<FamilySummary> figure1_dataset(const std::filesystem::path& out_dir);

/// key=value config file; '#' starts a comment. Keys: p_values (comma
/// separated), k, tau_max, samples, mode (analytic-family|numeric), out,
/// seed, V, omega1, omega2, step.
ScanConfig load_scan_config(const std::filesystem::path& path);

/// "%.17g" formatting used for every number the library emits.
std::string format_g17(double v);

}  // namespace qcorr
