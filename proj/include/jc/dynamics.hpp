#pragma once

#include <complex>
#include <vector>

#include "jc/field_state.hpp"

namespace jc {

using Complex = std::complex<double>;

struct AtomAmplitudes {
    Complex plus{1.0, 0.0};
    Complex minus{0.0, 0.0};
};

/// Joint atom-field amplitudes on the resonant doublet basis.
///
/// plus[n] multiplies |n,+> and minus[n] multiplies |n,->; minus carries one
/// extra index because doublet n couples |n,+> with |n+1,->. States are
/// immutable values; evolve() returns a fresh one.
class JointState {
public:
    JointState(std::vector<Complex> plus, std::vector<Complex> minus,
               double g, double omega);

    const std::vector<Complex>& plus() const { return plus_; }
    const std::vector<Complex>& minus() const { return minus_; }
    /// Highest Fock index stored on the plus branch.
    int n_top() const { return static_cast<int>(plus_.size()) - 1; }
    double g() const { return g_; }
    double omega() const { return omega_; }
    double norm_sq() const;

private:
    std::vector<Complex> plus_;
    std::vector<Complex> minus_;
    double g_;
    double omega_;
};

/// Builds a|+>|field_plus> + b|->|field_minus> at t = 0. The two fields are
/// padded to a common range plus one empty guard doublet. The product case is
/// field_plus == field_minus. Throws NormalizationError when the combined
/// norm is off by more than 1e-8.
JointState initial_joint(const AtomAmplitudes& atom, const FieldState& field_plus,
                         const FieldState& field_minus, double g, double omega);

/// Closed-form evolution by time t: each doublet {|n,+>, |n+1,->} rotates by
/// g t sqrt(n+1) under its free phase, |0,-> picks up e^{+i omega t / 2}.
/// Throws TruncationLeak if the top doublet holds more than 1e-8 probability.
JointState evolve(const JointState& state, double t);

struct AtomDensity {
    double p_plus;
    double p_minus;
    Complex coherence;  // <+|rho_A|->
};

AtomDensity atom_density(const JointState& state);

/// Tr[rho_A^2] = p_+^2 + p_-^2 + 2|c|^2, in [1/2, 1] for a unit-trace qubit.
double purity(const AtomDensity& rho);

/// Reduced field density matrix rho(m,n) = c_m^+ c_n^+* + c_m^- c_n^-*.
struct FieldDensity {
    int dim;
    std::vector<Complex> matrix;  // row-major dim x dim, Hermitian

    Complex at(int m, int n) const {
        return matrix[static_cast<std::size_t>(m) * static_cast<std::size_t>(dim) +
                      static_cast<std::size_t>(n)];
    }
};

FieldDensity field_density(const JointState& state);
double field_purity(const FieldDensity& rho);

/// Von Neumann entropy from the two eigenvalues 1/2 +- sqrt((p_+ - 1/2)^2 + |c|^2),
/// with 0 ln 0 = 0.
double entropy(const AtomDensity& rho);

/// Purity after averaging the atom density matrix over uniformly random
/// phase profiles: 1 + 2 p_+ (p_+ - 1).
double mixed_phase_purity(double p_plus);

/// Product-state prediction for the joint state near the half-revival time
/// t0 = pi sqrt(nbar+1) / g.
struct DisentangledPrediction {
    Complex atom_plus;
    Complex atom_minus;
    std::vector<Complex> field;  // normalized, indexed by Fock n
    double t0;
    double n_bar;
};

/// Mean Fock index of the state's field marginal |c_n^+|^2 + |c_n^-|^2.
double marginal_mean(const JointState& state);

/// Builds the prediction from the *initial* joint state. Enforces
/// |t - t0| <= 0.5 sqrt(nbar+1)/g (WindowViolation otherwise) and that the
/// two branch distributions peak within one marginal standard deviation of
/// each other (PeakMismatch otherwise).
DisentangledPrediction predicted_disentangled(const JointState& state0, double t);

/// Squared overlap |<prediction|state>|^2 of the normalized states.
double fidelity(const DisentangledPrediction& prediction, const JointState& state);

/// nu-th revival time 2 pi nu sqrt(n_mean + 1) / g. Setting
/// sqrt_nbar_convention evaluates the sqrt(n_mean) variant instead; both
/// appear in the revival literature and differ at O(1/n_mean).
double revival_time(double n_mean, double g, int nu, bool sqrt_nbar_convention = false);

}  // namespace jc
