// Acceptance suite: one line per criterion, measured values included.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "jc/design.hpp"
#include "jc/dynamics.hpp"
#include "jc/field_state.hpp"
#include "jc/resummation.hpp"
#include "jc/scan.hpp"

using namespace jc;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("%s  %2d  %-34s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, auto... values) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, values...);
    return buf;
}

// Global bound tracking across every purity evaluated here (criterion 6).
double g_min_purity = std::numeric_limits<double>::infinity();
double g_max_purity = -std::numeric_limits<double>::infinity();
double g_min_gap = std::numeric_limits<double>::infinity();

double tracked_purity(const AtomDensity& rho) {
    double p = purity(rho);
    g_min_purity = std::min(g_min_purity, p);
    g_max_purity = std::max(g_max_purity, p);
    g_min_gap = std::min(g_min_gap, cauchy_schwarz_gap(rho));
    return p;
}

double exact_purity_at(const JointState& s0, double gt) {
    return tracked_purity(atom_density(evolve(s0, gt / s0.g())));
}

JointState excited(const FieldState& f, double omega = 49.0) {
    return initial_joint(AtomAmplitudes{}, f, f, 1.0, omega);
}

void criterion_1_subsystem_identity() {
    FieldState f = coherent_state(49.0, 0.0);
    double worst = 0.0;
    auto sweep = [&](const JointState& s0) {
        for (int i = 0; i < 200; ++i) {
            double gt = 50.0 * i / 199.0;
            JointState s = evolve(s0, gt);
            double atom = tracked_purity(atom_density(s));
            worst = std::max(worst, std::abs(atom - field_purity(field_density(s))));
        }
    };
    sweep(excited(f));
    JointState entangled = initial_joint(AtomAmplitudes{{0.6, 0.0}, {0.0, 0.8}},
                                         coherent_state(49.0, 0.0),
                                         coherent_state(49.0, 0.2), 1.0, 49.0);
    sweep(entangled);
    report(1, "subsystem purity identity", worst < 1e-10,
           fmt("max |atom - field| = %.2e (tol 1e-10)", worst));
}

void criterion_2_coherent_benchmark() {
    JointState s0 = excited(coherent_state(49.0, 0.0));

    double mean_plateau = 0.0;
    int count = 0;
    for (double gt = 6.0; gt <= 16.0 + 1e-9; gt += 0.005) {
        mean_plateau += exact_purity_at(s0, gt);
        ++count;
    }
    mean_plateau /= count;
    bool pass_a = mean_plateau >= 0.49 && mean_plateau <= 0.53;
    report(2, "coherent: collapse-window mean", pass_a,
           fmt("mean purity over gt in [6,16] = %.4f (required [0.49, 0.53]; the "
               "slow coherence term lifts it)",
               mean_plateau));

    double peak = 0.0;
    double peak_gt = 0.0;
    for (double gt = 19.0; gt <= 25.5; gt += 0.002) {
        double p = exact_purity_at(s0, gt);
        if (p > peak) {
            peak = p;
            peak_gt = gt;
        }
    }
    double t0 = kPi * std::sqrt(50.0);
    ResumModel m{49.0, 49.0, ContinuationFamily::PoissonSpecialized, 4, 1.0};
    double closed = half_revival_purity(m);
    bool pass_b = std::abs(peak_gt - t0) <= 1.0 && peak >= 0.97 &&
                  std::abs(peak - closed) < 0.01;
    report(2, "coherent: half-revival peak", pass_b,
           fmt("peak %.4f at gt = %.3f (t0 = %.3f, closed form %.4f)", peak, peak_gt,
               t0, closed));

    double at_zero = exact_purity_at(s0, 0.0);
    report(2, "coherent: purity(0) = 1", std::abs(at_zero - 1.0) < 1e-12,
           fmt("purity(0) = %.15f", at_zero));
}

void criterion_3_resummation() {
    FieldState f = coherent_state(49.0, 0.0);
    JointState s0 = excited(f);
    ResumModel m = model_from_state(f, ContinuationFamily::PoissonSpecialized,
                                    default_nu_max(49.0, 50.0), 1.0);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        double gt = 50.0 * i / 1000.0;
        worst = std::max(worst,
                         std::abs(exact_purity_at(s0, gt) - purity_resummed(m, gt)));
    }
    report(3, "resummed purity accuracy", worst < 0.02,
           fmt("max |exact - resummed| = %.4f over gt in [0,50] (tol 0.02)", worst));
}

void criterion_4_cat_benchmark() {
    FieldState cat = cat_state(49.0, 0.0);
    JointState s0 = excited(cat);
    double max_c = 0.0;
    double max_purity_after = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        double gt = 50.0 * i / 1000.0;
        AtomDensity rho = atom_density(evolve(s0, gt));
        tracked_purity(rho);
        max_c = std::max(max_c, std::abs(rho.coherence));
        if (gt > 0.5) max_purity_after = std::max(max_purity_after, purity(rho));
    }
    double at_zero = exact_purity_at(s0, 0.0);
    bool pass = max_c < 1e-12 && max_purity_after < 1.0 - 1e-3 &&
                std::abs(at_zero - 1.0) < 1e-12;
    report(4, "cat state: coherence and purity", pass,
           fmt("max |c| = %.1e, max purity on (0.5,50] = %.4f, purity(0) = %.12f",
               max_c, max_purity_after, at_zero));
}

void criterion_5_squeezed_benchmark() {
    FieldState sq = squeezed_coherent_state(0.75, 14.72);
    FieldStats st = stats(sq);
    double target_var = std::pow(49.0, 0.65);
    bool pass_moments = std::abs(st.mean - 49.0) <= 0.5 &&
                        st.variance >= 0.8 * target_var &&
                        st.variance <= 1.2 * target_var;
    report(5, "squeezed: number statistics", pass_moments,
           fmt("mean = %.3f (49 +- 0.5), variance = %.3f (%.3f +- 20%%)", st.mean,
               st.variance, target_var));

    JointState s_sq = excited(sq);
    JointState s_coh = excited(coherent_state(49.0, 0.0));
    double peak_sq = 0.0;
    double peak_coh = 0.0;
    for (double gt = 19.0; gt <= 25.5; gt += 0.002) {
        peak_sq = std::max(peak_sq, exact_purity_at(s_sq, gt));
        peak_coh = std::max(peak_coh, exact_purity_at(s_coh, gt));
    }
    report(5, "squeezed vs coherent peak", peak_sq > peak_coh,
           fmt("squeezed peak %.4f vs coherent %.4f (number-statistics tail costs "
               "the squeezed state its width advantage)",
               peak_sq, peak_coh));

    ResumModel m = model_from_state(sq, ContinuationFamily::GaussianContinuation,
                                    default_nu_max(st.mean, 50.0), 1.0);
    double lobe1 = 2.0 * kPi * std::sqrt(st.mean);
    double worst_core = 0.0;
    double worst_wide = 0.0;
    for (double gt = lobe1 - kPi; gt <= lobe1 + kPi; gt += 0.02) {
        double dev = std::abs(exact_purity_at(s_sq, gt) -
                              purity_resummed_quad(m, gt, {1}));
        worst_wide = std::max(worst_wide, dev);
        if (std::abs(gt - lobe1) <= 2.0) worst_core = std::max(worst_core, dev);
    }
    report(5, "squeezed: quadrature lobe restores", worst_core < 0.02,
           fmt("max dev %.4f in the lobe core |gt - %.2f| <= 2 (tol 0.02); %.4f "
               "over +-pi",
               worst_core, lobe1, worst_wide));
}

void criterion_6_bounds() {
    report(6, "bounds and coherence gap",
           g_min_purity >= 0.5 - 1e-9 && g_max_purity <= 1.0 + 1e-9 &&
               g_min_gap >= -1e-12,
           fmt("purity range [%.12f, %.12f], min gap = %.2e", g_min_purity,
               g_max_purity, g_min_gap));
}

void criterion_7_omega_independence() {
    FieldState f = coherent_state(49.0, 0.0);
    JointState base = excited(f, 1.0);
    JointState slow = excited(f, 0.1);
    JointState fast = excited(f, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double gt = 50.0 * i / 199.0;
        double p = exact_purity_at(base, gt);
        worst = std::max(worst, std::abs(exact_purity_at(slow, gt) - p));
        worst = std::max(worst, std::abs(exact_purity_at(fast, gt) - p));
    }
    report(7, "omega independence", worst < 1e-12,
           fmt("max pointwise spread = %.2e over omega in {0.1, 1, 100} g", worst));
}

void criterion_8_rabi() {
    JointState s0 = excited(fock_state(0), 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double gt = 20.0 * i / 999.0;
        double c = std::cos(gt);
        double s = std::sin(gt);
        double analytic = c * c * c * c + s * s * s * s;
        worst = std::max(worst, std::abs(exact_purity_at(s0, gt) - analytic));
    }
    report(8, "vacuum Rabi analytic oracle", worst < 1e-12,
           fmt("max |purity - cos^4 - sin^4| = %.2e at 1000 points", worst));
}

void criterion_9_random_phase() {
    const int draws = 2000;
    const double tol = 3.0 / std::sqrt(static_cast<double>(draws));
    FieldState base = coherent_state(49.0, 0.0);
    JointState det = excited(base);
    std::mt19937_64 rng(987654321);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        double gt = 50.0 * k / 20.0;
        double p_plus_det = atom_density(evolve(det, gt)).p_plus;
        double acc_p = 0.0;
        Complex acc_c{};
        for (int d = 0; d < draws; ++d) {
            std::vector<double> phases(base.probs().size());
            for (double& a : phases) a = uniform(rng);
            FieldState field(base.probs(), std::move(phases));
            AtomDensity rho = atom_density(evolve(excited(field), gt));
            acc_p += rho.p_plus;
            acc_c += rho.coherence;
        }
        AtomDensity averaged{acc_p / draws, 1.0 - acc_p / draws,
                             acc_c / static_cast<double>(draws)};
        worst = std::max(worst,
                         std::abs(purity(averaged) - mixed_phase_purity(p_plus_det)));
    }
    report(9, "random-phase mixture", worst < tol,
           fmt("max |MC - closed form| = %.4f at 20 grid points (tol %.4f)", worst, tol));
}

void criterion_10_disentanglement() {
    FieldState f = coherent_state(49.0, 0.0);
    double inv = 1.0 / std::sqrt(2.0);
    double t0 = kPi * std::sqrt(50.0);

    JointState ent = initial_joint(AtomAmplitudes{{inv, 0.0}, {inv, 0.0}}, f, f, 1.0, 49.0);
    DisentangledPrediction pred = predicted_disentangled(ent, t0);
    double fid = fidelity(pred, evolve(ent, t0));

    DisentangledPrediction p10 = predicted_disentangled(excited(f), t0);
    DisentangledPrediction p01 = predicted_disentangled(
        initial_joint(AtomAmplitudes{{0.0, 0.0}, {1.0, 0.0}}, f, f, 1.0, 49.0), t0);
    bool factor_equal = p10.atom_plus == pred.atom_plus &&
                        p10.atom_minus == pred.atom_minus &&
                        p01.atom_plus == pred.atom_plus &&
                        p01.atom_minus == pred.atom_minus;
    report(10, "entangled-state disentanglement", fid > 0.95 && factor_equal,
           fmt("fidelity = %.4f (tol > 0.95), atom factor a,b-independent: %s", fid,
               factor_equal ? "exactly" : "NO"));
}

void criterion_11_designed_purity() {
    DesignResult d = design_distribution(3.3, 1.0, 80);
    bool clean = d.rejected_indices.empty();
    report(11, "designed distribution purity", clean && d.achieved_purity > 0.999,
           fmt("forward-evolved purity at g t_f = 3.3: %.6f (tol > 0.999)",
               d.achieved_purity));
}

void criterion_12_property_suite() {
    std::mt19937_64 rng(424242);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    bool pass = true;
    std::string first_failure;
    for (int i = 0; i < 200 && pass; ++i) {
        FieldState f = coherent_state(uniform(1.0, 60.0), uniform(-1.0, 1.0));
        double theta = uniform(0.0, kPi);
        AtomAmplitudes atom{std::polar(std::cos(theta / 2.0), uniform(0.0, 2.0 * kPi)),
                            std::polar(std::sin(theta / 2.0), uniform(0.0, 2.0 * kPi))};
        JointState s0 = initial_joint(atom, f, f, 1.0, uniform(0.5, 60.0));

        double norm_dev = std::abs(s0.norm_sq() - 1.0);
        if (norm_dev > 1e-10) {
            pass = false;
            first_failure = fmt("normalization off by %.2e", norm_dev);
            break;
        }
        double n_bar = marginal_mean(s0);
        double t_long = uniform(0.0, 10.0 * 2.0 * kPi * std::sqrt(n_bar + 1.0));
        double unit_dev = std::abs(evolve(s0, t_long).norm_sq() - 1.0);
        if (unit_dev > 1e-10) {
            pass = false;
            first_failure = fmt("unitarity off by %.2e", unit_dev);
            break;
        }
        double t1 = uniform(0.0, 44.0);
        double t2 = uniform(0.0, 44.0);
        JointState a = evolve(evolve(s0, t1), t2);
        JointState b = evolve(s0, t1 + t2);
        for (std::size_t n = 0; n < b.plus().size(); ++n) {
            if (std::abs(a.plus()[n] - b.plus()[n]) > 1e-9) {
                pass = false;
                first_failure = "composition mismatch";
                break;
            }
        }
        double eps = std::pow(10.0, -uniform(8.0, 12.0));
        FieldState coarse = coherent_state(30.0, 0.0, eps);
        FieldState fine = coherent_state(30.0, 0.0, eps / 2.0);
        for (int n = 0; n <= coarse.n_max(); ++n) {
            if (std::abs(coarse.prob(n) - fine.prob(n)) > eps) {
                pass = false;
                first_failure = "truncation instability";
                break;
            }
        }
    }
    report(12, "randomized property suite", pass,
           pass ? "unitarity, composition, truncation, normalization: 200 cases"
                : first_failure);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1_subsystem_identity();
    criterion_2_coherent_benchmark();
    criterion_3_resummation();
    criterion_4_cat_benchmark();
    criterion_5_squeezed_benchmark();
    criterion_7_omega_independence();
    criterion_8_rabi();
    criterion_9_random_phase();
    criterion_10_disentanglement();
    criterion_11_designed_purity();
    criterion_12_property_suite();
    criterion_6_bounds();  // after every scan above has been tracked
    std::printf("%d criterion check(s) failed\n", g_failures);
    return g_failures;
}
