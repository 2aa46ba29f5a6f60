#pragma once

#include <cstdint>
#include <vector>

#include "jc/dynamics.hpp"
#include "jc/field_state.hpp"

namespace jc {

/// p_+ p_- - |c|^2 >= 0; zero exactly when the two coherence vectors are
/// parallel, i.e. when the atom is momentarily pure given its populations.
double cauchy_schwarz_gap(const AtomDensity& rho);

inline constexpr double kDefaultCosFloor = 1e-3;

struct DesignResult {
    FieldState state;
    double beta2;
    double t_f;
    double achieved_purity;              // forward-evolved, never assumed
    std::vector<int> rejected_indices;   // n where |cos(g t_f sqrt(n+1))| < cos_floor
};

/// Solves the parallel-vector recursion
///   q_n = q_{n-1} * beta2 * sin^2(g t_f sqrt(n)) / cos^2(g t_f sqrt(n+1))
/// for an initial distribution that renders the atom pure at t = t_f.
///
/// An index whose cosine falls under cos_floor is a pole of the recursion:
/// it is recorded and the distribution is truncated just below it (the
/// weights past a pole would be a numerical spike, not a distribution).
/// achieved_purity comes from evolving |+> x state to t_f with g = 1.
/// Throws EmptyDesign when the first step already hits a pole and
/// UnnormalizableDesign when the weights cannot be normalized.
DesignResult design_distribution(double g_tf, double beta2, int n_max,
                                 double cos_floor = kDefaultCosFloor);

/// Mean purity change when every phase alpha_n is jittered uniformly in
/// [-perturbation, perturbation], averaged over `draws` redraws; demonstrates
/// how phase noise destroys the coherence channel. Deterministic for a fixed
/// seed; returns exactly 0 for perturbation = 0.
double phase_sensitivity(const FieldState& state, double t, double perturbation,
                         std::uint64_t seed = 0, int draws = 100);

}  // namespace jc
