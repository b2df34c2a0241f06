#include "qcorr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorr/correlations.hpp"
#include "qcorr/filtering.hpp"

namespace qcorr {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate_scan_config(const ScanConfig& cfg) {
    if (cfg.p_values.empty()) throw ValidationError("scan config: p_values is empty");
    for (double p : cfg.p_values)
        if (p < 0.0 || p > 1.0) throw ValidationError("scan config: p outside [0,1]");
    if (cfg.samples < 2) throw ValidationError("scan config: samples must be >= 2");
    if (!(cfg.tau_max > 0)) throw ValidationError("scan config: tau_max must be positive");
    if (cfg.mode == ScanMode::AnalyticFamily) {
        if (cfg.k < 1e-6 || cfg.k > 1.0 - 1e-6)
            throw ValidationError("scan config: analytic-family mode needs k in (0,1)");
    } else {
        if (std::abs(cfg.k) > 1.0)
            throw ValidationError("scan config: |k| must not exceed 1");
        if (!(cfg.step > 0)) throw ValidationError("scan config: step must be positive");
    }
}

namespace {

TrajectoryRecord make_record(double tau, double p, double k, const XParams& x,
                             const CorrelationReport& rep, const HiddenReport& hid) {
    TrajectoryRecord rec;
    rec.tau = tau;
    rec.p = p;
    rec.k = k;
    rec.a = x.a;
    rec.b = x.b;
    rec.c = x.c;
    rec.d = x.d;
    rec.z_re = x.z.real();
    rec.z_im = x.z.imag();
    rec.C = rep.C;
    rec.B = rep.B;
    rec.BF3 = rep.BF3;
    rec.D = rep.D;
    rec.HB = hid.HB;
    rec.HBF3 = hid.HBF3;
    rec.HD = hid.HD;
    rec.MEC = hid.MEC;
    rec.nu0 = hid.nu.nu[0];
    rec.nu1 = hid.nu.nu[1];
    rec.nu2 = hid.nu.nu[2];
    rec.nu3 = hid.nu.nu[3];
    return rec;
}

}  // namespace

std::vector<TrajectoryRecord> run_trajectory_scan(const ScanConfig& cfg) {
    validate_scan_config(cfg);
    std::vector<double> ps = cfg.p_values;
    std::sort(ps.begin(), ps.end());

    const std::vector<double> grid = uniform_grid(cfg.tau_max, cfg.samples);
    std::vector<TrajectoryRecord> records;
    records.reserve(ps.size() * grid.size());

    for (double p : ps) {
        if (cfg.mode == ScanMode::AnalyticFamily) {
            for (double tau : grid) {
                XParams x;
                try {
                    x = evolve_reduced_family(p, cfg.k, tau);
                } catch (const std::exception& e) {
                    std::ostringstream os;
                    os << "scan failed at p = " << p << ", tau = " << tau << ": " << e.what();
                    throw ValidationError(os.str());
                }
                const DensityMatrix rho = make_x_state(x);
                // The family nu spectrum has a closed form that stays accurate
                // deep in the decay tail where the general eigensolve cannot.
                records.push_back(make_record(tau, p, cfg.k, x, correlation_report(rho),
                                              hidden_from_nu(x_family_nu_spectrum(x))));
            }
        } else {
            SystemParams sp;
            sp.k = cfg.k;
            sp.V = cfg.V;
            sp.omega1 = cfg.omega1;
            sp.omega2 = cfg.omega2;
            Trajectory traj;
            try {
                traj = evolve_numeric(werner_state(p), sp, grid, cfg.step);
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "scan failed at p = " << p << ": " << e.what();
                throw NumericalError(os.str());
            }
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const DensityMatrix& rho = traj.states[i];
                const XParams x = extract_x_params(rho);
                records.push_back(make_record(grid[i], p, cfg.k, x, correlation_report(rho),
                                              hidden_measures(rho)));
            }
        }
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const TrajectoryRecord& l, const TrajectoryRecord& r) {
                         if (l.p != r.p) return l.p < r.p;
                         return l.tau < r.tau;
                     });
    return records;
}

std::optional<double> detect_birth_time(std::span<const std::pair<double, double>> series,
                                        double threshold) {
    if (series.empty()) return std::nullopt;
    if (series[0].second > threshold) return series[0].first;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i - 1].second <= threshold && series[i].second > threshold)
            return series[i].first;
    }
    return std::nullopt;
}

std::optional<double> detect_birth_time(std::span<const std::pair<double, double>> series,
                                        double threshold,
                                        const std::function<double(double)>& value_at) {
    if (series.empty()) return std::nullopt;
    if (series[0].second > threshold) return series[0].first;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (!(series[i - 1].second <= threshold && series[i].second > threshold)) continue;
        double lo = series[i - 1].first;
        double hi = series[i].first;
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            (value_at(mid) > threshold ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }
    return std::nullopt;
}

void write_records_csv(std::ostream& out, std::span<const TrajectoryRecord> records) {
    out << kRecordCsvHeader << '\n';
    for (const auto& r : records) {
        const double cols[] = {r.tau, r.p,  r.k,    r.a,  r.b,  r.c,   r.d,
                               r.z_re, r.z_im, r.C,  r.B,  r.BF3, r.D,
                               r.HB,  r.HBF3, r.HD, r.MEC, r.nu0, r.nu1, r.nu2, r.nu3};
        bool first = true;
        for (double v : cols) {
            if (!first) out << ',';
            out << format_g17(v);
            first = false;
        }
        out << '\n';
    }
    if (!out) throw IoError("failed while writing CSV records");
}

void write_records_csv(const std::filesystem::path& path,
                       std::span<const TrajectoryRecord> records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_records_csv(out, records);
}

namespace {

// Birth refinement callables on the family closed forms.
double family_c(double p, double k, double tau) {
    const XParams x = evolve_reduced_family(p, k, tau);
    return closed_forms_standard(x).c;
}

double family_hidden(double p, double k, double tau, int which) {
    const XParams x = evolve_reduced_family(p, k, tau);
    const HiddenReport h = hidden_from_nu(x_family_nu_spectrum(x));
    switch (which) {
        case 0: return h.HD;
        case 1: return h.HBF3;
        default: return h.HB;
    }
}

std::vector<std::pair<double, double>> column_series(std::span<const TrajectoryRecord> recs,
                                                     double TrajectoryRecord::*col) {
    std::vector<std::pair<double, double>> s;
    s.reserve(recs.size());
    for (const auto& r : recs) s.emplace_back(r.tau, r.*col);
    return s;
}

}  // namespace

std::vector<FamilySummary> figure1_dataset(const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir))
        throw IoError("cannot create output directory: " + out_dir.string());

    std::vector<FamilySummary> summaries;
    const double k = 0.5;

    for (int i = 0; i <= 10; ++i) {
        const double p = i / 30.0;
        ScanConfig cfg;
        cfg.p_values = {p};
        cfg.k = k;
        cfg.tau_max = 30.0;
        cfg.samples = 3001;
        const auto records = run_trajectory_scan(cfg);

        char name[32];
        std::snprintf(name, sizeof(name), "figure1_p%02d.csv", i);
        write_records_csv(out_dir / name, records);

        FamilySummary s;
        s.p = p;
        for (const auto& r : records) {
            if (r.C > s.c_max) {
                s.c_max = r.C;
                s.tau_c_max = r.tau;
            }
        }
        const auto c_series = column_series(records, &TrajectoryRecord::C);
        const auto hd_series = column_series(records, &TrajectoryRecord::HD);
        const auto hbf3_series = column_series(records, &TrajectoryRecord::HBF3);
        const auto hb_series = column_series(records, &TrajectoryRecord::HB);

        s.tau_birth_c = detect_birth_time(c_series, 1e-12,
                                          [&](double t) { return family_c(p, k, t); });
        s.tau_birth_hd = detect_birth_time(
            hd_series, 1e-12, [&](double t) { return family_hidden(p, k, t, 0); });
        s.tau_birth_hbf3 = detect_birth_time(
            hbf3_series, 1e-12, [&](double t) { return family_hidden(p, k, t, 1); });
        s.tau_birth_hb = detect_birth_time(
            hb_series, 1e-12, [&](double t) { return family_hidden(p, k, t, 2); });
        s.tau_hd_099 = detect_birth_time(hd_series, 0.99,
                                         [&](double t) { return family_hidden(p, k, t, 0); });
        s.tau_hbf3_099 = detect_birth_time(
            hbf3_series, 0.99, [&](double t) { return family_hidden(p, k, t, 1); });
        s.tau_hb_099 = detect_birth_time(hb_series, 0.99,
                                         [&](double t) { return family_hidden(p, k, t, 2); });
        summaries.push_back(s);
    }

    std::ofstream out(out_dir / "summary.csv");
    if (!out) throw IoError("cannot open summary.csv for writing");
    out << "p,C_max,tau_C_max,tau_birth_C,tau_birth_HD,tau_birth_HBF3,tau_birth_HB,"
           "tau_HD_099,tau_HBF3_099,tau_HB_099\n";
    auto opt = [](const std::optional<double>& v) {
        return v ? format_g17(*v) : std::string("none");
    };
    for (const auto& s : summaries) {
        out << format_g17(s.p) << ',' << format_g17(s.c_max) << ',' << format_g17(s.tau_c_max)
            << ',' << opt(s.tau_birth_c) << ',' << opt(s.tau_birth_hd) << ','
            << opt(s.tau_birth_hbf3) << ',' << opt(s.tau_birth_hb) << ',' << opt(s.tau_hd_099)
            << ',' << opt(s.tau_hbf3_099) << ',' << opt(s.tau_hb_099) << '\n';
    }
    if (!out) throw IoError("failed while writing summary.csv");
    return summaries;
}

ScanConfig load_scan_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());

    ScanConfig cfg;
    cfg.p_values.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << lineno << ": expected key=value";
            throw ValidationError(os.str());
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        try {
            if (key == "p_values") {
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.p_values.push_back(std::stod(item));
            } else if (key == "k") {
                cfg.k = std::stod(value);
            } else if (key == "tau_max") {
                cfg.tau_max = std::stod(value);
            } else if (key == "samples") {
                cfg.samples = std::stoi(value);
            } else if (key == "mode") {
                if (value == "analytic-family")
                    cfg.mode = ScanMode::AnalyticFamily;
                else if (value == "numeric")
                    cfg.mode = ScanMode::Numeric;
                else
                    throw ValidationError("config: mode must be analytic-family or numeric");
            } else if (key == "out") {
                cfg.output_path = value;
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "V") {
                cfg.V = std::stod(value);
            } else if (key == "omega1") {
                cfg.omega1 = std::stod(value);
            } else if (key == "omega2") {
                cfg.omega2 = std::stod(value);
            } else if (key == "step") {
                cfg.step = std::stod(value);
            } else {
                throw ValidationError("config: unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            std::ostringstream os;
            os << "config line " << lineno << ": cannot parse value for '" << key << "'";
            throw ValidationError(os.str());
        }
    }
    return cfg;
}

}  // namespace qcorr
