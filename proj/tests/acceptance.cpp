// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/experiment.hpp"
#include "qcorr/filtering.hpp"
#include "support/generators.hpp"

using namespace qcorr;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what) {
    std::printf("[%2d] %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// --- 1. integrator vs analytic oracle -----------------------------------
void criterion_1() {
    test::Rng rng(1001);
    std::uniform_real_distribution<double> uk(-0.9, 0.9);
    std::uniform_real_distribution<double> u10(0.0, 10.0);
    const auto grid = uniform_grid(5.0, 21);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const XParams x0 = test::random_x_params(rng);
        SystemParams sp;
        sp.k = uk(rng);
        sp.V = u10(rng);
        sp.omega1 = sp.omega2 = u10(rng);
        const Trajectory traj = evolve_numeric(make_x_state(x0), sp, grid, 1e-3);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const XParams xt = evolve_analytic_x(x0, sp, grid[i]);
            worst = std::max(worst, (traj.states[i].matrix() - make_x_state(xt).matrix())
                                        .cwiseAbs()
                                        .maxCoeff());
        }
    }
    report(1, worst <= 1e-8,
           fmt("integrator vs analytic oracle: 100 random X states, max dev %.3e (tol 1e-8)",
               worst));
}

// --- 2. V-independence on the reduced family ----------------------------
void criterion_2() {
    test::Rng rng(1002);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    std::uniform_real_distribution<double> uk(0.05, 0.95);
    const auto grid = uniform_grid(5.0, 11);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const double p = up(rng);
        SystemParams sp0;
        sp0.k = uk(rng);
        sp0.V = 0.0;
        SystemParams sp7 = sp0;
        sp7.V = 7.0;
        const Trajectory t0 = evolve_numeric(werner_state(p), sp0, grid, 1e-3);
        const Trajectory t7 = evolve_numeric(werner_state(p), sp7, grid, 1e-3);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(
                worst, (t0.states[i].matrix() - t7.states[i].matrix()).cwiseAbs().maxCoeff());
    }
    report(2, worst <= 1e-9,
           fmt("V-independence (V=0 vs V=7), 10 random (p,k): max dev %.3e (tol 1e-9)", worst));
}

// --- 3. figure-1 reproduction --------------------------------------------
void criterion_3() {
    double worst_standard = 0;
    double c_max = 0;
    double min_h20 = 1, min_h30 = 1;
    for (int i = 0; i <= 10; ++i) {
        ScanConfig cfg;
        cfg.p_values = {i / 30.0};
        cfg.k = 0.5;
        cfg.tau_max = 30.0;
        cfg.samples = 3001;
        const auto records = run_trajectory_scan(cfg);
        for (const auto& r : records) {
            worst_standard = std::max({worst_standard, r.B, r.BF3, r.D});
            c_max = std::max(c_max, r.C);
        }
        const auto& r20 = records[2000];
        const auto& r30 = records[3000];
        min_h20 = std::min({min_h20, r20.HD, r20.HBF3, r20.HB});
        min_h30 = std::min({min_h30, r30.HD, r30.HBF3, r30.HB});
    }
    report(3, worst_standard <= 1e-12 && c_max >= 0.015 && c_max <= 0.035 && min_h20 >= 0.95 &&
                  min_h30 >= 0.99,
           fmt("figure-1 grid: max standard %.2e (tol 1e-12), C_max %.4f (in [0.015,0.035]), "
               "min hidden at tau=20 %.4f (>=0.95), at tau=30 %.6f (>=0.99)",
               worst_standard, c_max, min_h20, min_h30));
}

// --- 4. birth-time structure ---------------------------------------------
double family_measure(double p, double k, double tau, int which) {
    const XParams x = evolve_reduced_family(p, k, tau);
    if (which == 0) return closed_forms_standard(x).c;
    const HiddenReport h = hidden_from_nu(x_family_nu_spectrum(x));
    return which == 1 ? h.HD : which == 2 ? h.HBF3 : h.HB;
}

std::optional<double> family_birth(double p, double k, int which) {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i <= 3000; ++i) {
        const double tau = 0.01 * i;
        series.emplace_back(tau, family_measure(p, k, tau, which));
    }
    return detect_birth_time(series, 1e-12,
                             [&](double t) { return family_measure(p, k, t, which); });
}

void criterion_4() {
    // independent oracle: bisect |z(tau)| = sqrt(a(tau) d(tau))
    double lo = 0.01, hi = 10.0;
    auto gap = [](double tau) {
        const XParams x = evolve_reduced_family(0.0, 0.5, tau);
        return std::abs(x.z) - std::sqrt(x.a * x.d);
    };
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0 ? hi : lo) = mid;
    }
    const double oracle = 0.5 * (lo + hi);

    const auto tc = family_birth(0.0, 0.5, 0);
    const auto thd = family_birth(0.0, 0.5, 1);
    const auto thbf3 = family_birth(0.0, 0.5, 2);
    const auto thb = family_birth(0.0, 0.5, 3);
    const bool have = tc && thd && thbf3 && thb;
    bool pass = have;
    if (have) {
        pass = std::abs(*tc - oracle) <= 2e-6 && std::abs(*thd - oracle) <= 2e-6 &&
               std::abs(oracle - 2.53) <= 0.02 && *thd + 0.01 <= *thbf3 &&
               *thbf3 + 0.01 <= *thb;
    }
    report(4, pass,
           fmt("births p=0,k=1/2: oracle %.6f (= 2.53 +- 0.02), C %.6f, HD %.6f, "
               "HBF3 %.6f, HB %.6f strictly ordered",
               oracle, have ? *tc : -1.0, have ? *thd : -1.0, have ? *thbf3 : -1.0,
               have ? *thb : -1.0));
}

// --- 5. k-monotonicity of the hidden CHSH birth --------------------------
void criterion_5() {
    const auto t25 = family_birth(0.0, 0.25, 3);
    const auto t50 = family_birth(0.0, 0.50, 3);
    const auto t75 = family_birth(0.0, 0.75, 3);
    const bool have = t25 && t50 && t75;
    const bool pass = have && *t75 < *t50 && *t50 < *t25;
    report(5, pass,
           fmt("HB birth decreases with k: k=0.25 -> %.4f, k=0.5 -> %.4f, k=0.75 -> %.4f",
               have ? *t25 : -1.0, have ? *t50 : -1.0, have ? *t75 : -1.0));
}

// --- 6. Werner thresholds -------------------------------------------------
double werner_threshold(const std::function<double(const DensityMatrix&)>& measure) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        (measure(werner_state(mid)) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

void criterion_6() {
    const double tc = werner_threshold([](const DensityMatrix& r) { return concurrence(r); });
    const double td = werner_threshold([](const DensityMatrix& r) { return teleportation_d(r); });
    const double tbf3 = werner_threshold([](const DensityMatrix& r) { return f3_bf3(r); });
    const double tb = werner_threshold([](const DensityMatrix& r) { return chsh_b(r); });
    const bool pass = std::abs(tc - 1.0 / 3.0) <= 1e-6 && std::abs(td - 1.0 / 3.0) <= 1e-6 &&
                      std::abs(tbf3 - 1.0 / std::sqrt(3.0)) <= 1e-6 &&
                      std::abs(tb - 1.0 / std::sqrt(2.0)) <= 1e-6;
    report(6, pass,
           fmt("werner thresholds: C at %.7f (1/3), D at %.7f (1/3), BF3 at %.7f (0.5773503), "
               "B at %.7f (0.7071068), each within 1e-6",
               tc, td, tbf3, tb));
}

// --- 7. hierarchy + hidden dominance on 1e4 random states ----------------
void criterion_7() {
    test::Rng rng(1007);
    std::uniform_int_distribution<int> rank(1, 4);
    bool hierarchy = true;
    double min_slack = 0;
    for (int i = 0; i < 10000; ++i) {
        const DensityMatrix rho = test::random_state(rng, rank(rng));
        const CorrelationReport s = correlation_report(rho);
        const HiddenReport h = hidden_measures(rho);
        if ((s.B > 1e-10 && !(s.BF3 > 0)) || (s.BF3 > 1e-10 && !(s.D > 0)) ||
            (s.D > 1e-10 && !(s.C > 0)))
            hierarchy = false;
        min_slack = std::min({min_slack, h.HB - s.B, h.HBF3 - s.BF3, h.HD - s.D, h.MEC - s.C});
    }
    report(7, hierarchy && min_slack >= -1e-10,
           fmt("hierarchy B=>BF3=>D=>C holds on 1e4 random states; hidden-standard slack "
               ">= %.2e (tol -1e-10)",
               min_slack));
}

// --- 8. normal-form consistency triangle ---------------------------------
void criterion_8() {
    test::Rng rng(1008);
    double worst_triangle = 0;
    bool all_converged = true;
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho = test::random_state(rng, 4);
        const NormalFormResult nf = compute_normal_form_filters(rho, 1e-12, 10000);
        all_converged = all_converged && nf.converged;
        const CorrelationReport s = correlation_report(nf.normal_form);
        const HiddenReport h = hidden_measures(rho);
        worst_triangle = std::max({worst_triangle, std::abs(s.B - h.HB), std::abs(s.BF3 - h.HBF3),
                                   std::abs(s.D - h.HD), std::abs(s.C - h.MEC)});
    }
    double worst_orbit = 0;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = test::random_state(rng, 4);
        FilterPair f;
        f.f_a = test::random_filter(rng, 1e3);
        f.f_b = test::random_filter(rng, 1e3);
        const FilterOutcome out = apply_filter(rho, f);
        const HiddenReport h0 = hidden_measures(rho);
        const HiddenReport h1 = hidden_measures(out.state);
        worst_orbit = std::max({worst_orbit, std::abs(h0.HB - h1.HB),
                                std::abs(h0.HBF3 - h1.HBF3), std::abs(h0.HD - h1.HD)});
    }
    report(8, all_converged && worst_triangle <= 1e-6 && worst_orbit <= 1e-8,
           fmt("normal form: 200 states converged=%s, |standard(NF) - hidden| <= %.2e "
               "(tol 1e-6); orbit invariance over 1000 filters <= %.2e (tol 1e-8)",
               all_converged ? "yes" : "NO", worst_triangle, worst_orbit));
}

// --- 9. no entanglement from nothing --------------------------------------
void criterion_9() {
    test::Rng rng(1009);
    double worst = 0;
    for (int i = 0; i < 1000; ++i)
        worst = std::max(worst, hidden_measures(test::random_separable_state(rng)).MEC);
    report(9, worst <= 1e-8,
           fmt("MEC on 1000 random separable states <= %.2e (tol 1e-8)", worst));
}

// --- 10. determinism -------------------------------------------------------
void criterion_10() {
    const fs::path d1 = fs::temp_directory_path() / "qcorr_accept_fig1_a";
    const fs::path d2 = fs::temp_directory_path() / "qcorr_accept_fig1_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    figure1_dataset(d1);
    figure1_dataset(d2);
    bool identical = true;
    int files = 0;
    for (const auto& entry : fs::directory_iterator(d1)) {
        ++files;
        std::ifstream f1(entry.path(), std::ios::binary);
        std::ifstream f2(d2 / entry.path().filename(), std::ios::binary);
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        if (!f2 || s1.str() != s2.str()) identical = false;
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
    report(10, identical && files == 12,
           fmt("figure1 run twice: %d files, byte-identical = %s", files,
               identical ? "yes" : "NO"));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
