#include "jc/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "jc/errors.hpp"
#include "jc/logspace.hpp"

namespace jc {

double cauchy_schwarz_gap(const AtomDensity& rho) {
    return rho.p_plus * rho.p_minus - std::norm(rho.coherence);
}

DesignResult design_distribution(double g_tf, double beta2, int n_max,
                                 double cos_floor) {
    if (!(g_tf > 0.0)) throw ConfigError("g_tf must be > 0");
    if (!(beta2 > 0.0)) throw ConfigError("beta2 must be > 0");
    if (n_max < 1) throw ConfigError("design n_max must be >= 1");
    if (!(cos_floor > 0.0) || !(cos_floor < 1.0))
        throw ConfigError("cos_floor must lie in (0, 1)");

    const double log_beta2 = std::log(beta2);
    std::vector<double> log_q{0.0};  // q_0 = 1
    std::vector<int> rejected;
    for (int n = 1; n <= n_max; ++n) {
        double c = std::cos(g_tf * std::sqrt(n + 1.0));
        if (std::abs(c) < cos_floor) {
            rejected.push_back(n);
            break;
        }
        double s = std::sin(g_tf * std::sqrt(static_cast<double>(n)));
        double step;
        if (s == 0.0) {
            step = -std::numeric_limits<double>::infinity();
        } else {
            step = log_beta2 + 2.0 * (std::log(std::abs(s)) - std::log(std::abs(c)));
        }
        double next = log_q.back() + step;
        if (std::isnan(next)) throw UnnormalizableDesign("design weight is not a number");
        log_q.push_back(next);
    }
    if (log_q.size() == 1)
        throw EmptyDesign("recursion pole at n = 1 leaves only the vacuum index");

    double peak = *std::max_element(log_q.begin(), log_q.end());
    if (!std::isfinite(peak))
        throw UnnormalizableDesign("design weights have no finite peak");
    std::vector<double> probs(log_q.size());
    for (std::size_t n = 0; n < log_q.size(); ++n)
        probs[n] = std::exp(log_q[n] - peak);

    DesignResult result{FieldState(std::move(probs), std::vector<double>(log_q.size(), 0.0)),
                        beta2, g_tf, 0.0, std::move(rejected)};
    JointState excited =
        initial_joint(AtomAmplitudes{}, result.state, result.state, 1.0, 1.0);
    result.achieved_purity = purity(atom_density(evolve(excited, g_tf)));
    return result;
}

double phase_sensitivity(const FieldState& state, double t, double perturbation,
                         std::uint64_t seed, int draws) {
    if (draws < 1) throw ConfigError("draws must be >= 1");
    auto purity_of = [&](const FieldState& s) {
        JointState joint = initial_joint(AtomAmplitudes{}, s, s, 1.0, 1.0);
        return purity(atom_density(evolve(joint, t)));
    };
    const double base = purity_of(state);
    if (perturbation == 0.0) return 0.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-perturbation, perturbation);
    double acc = 0.0;
    for (int k = 0; k < draws; ++k) {
        std::vector<double> phases = state.phases();
        for (double& a : phases) a += jitter(rng);
        acc += purity_of(FieldState(state.probs(), std::move(phases))) - base;
    }
    return acc / draws;
}

}  // namespace jc
