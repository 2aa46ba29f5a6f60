#pragma once

#include <iosfwd>
#include <vector>

namespace jc {

/// Default truncation tolerance: discarded tail mass of each constructed
/// photon-number distribution.
inline constexpr double kDefaultEpsTrunc = 1e-12;

/// Extra indices kept past the tail cutoff. Purity sums contain
/// sqrt(p_n p_{n-1}) factors, which are more tail-sensitive than the
/// probabilities themselves.
inline constexpr int kTruncationGuard = 10;

struct FieldStats {
    double mean;
    double variance;
    int peak_index;
};

/// A pure field state truncated to Fock indices 0..n_max, held as
/// probabilities p_n plus phases alpha_n. Immutable after construction;
/// all operations on it are pure functions, safe to share across threads.
///
/// Phases are kept raw (not reduced mod 2*pi): only differences
/// alpha_n - alpha_{n-1} ever enter the dynamics, and reduction would
/// corrupt them for steep profiles.
class FieldState {
public:
    /// Normalizes `probs` to unit mass. Throws InvalidDistribution on
    /// negative or non-finite entries, zero total mass, or length mismatch.
    FieldState(std::vector<double> probs, std::vector<double> phases,
               double tail_mass = 0.0);

    int n_max() const { return static_cast<int>(probs_.size()) - 1; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& phases() const { return phases_; }
    double prob(int n) const;
    double phase(int n) const;
    double tail_mass() const { return tail_mass_; }

private:
    std::vector<double> probs_;
    std::vector<double> phases_;
    double tail_mass_;
};

/// Poisson photon statistics with mean |z|^2 = mean_photons and linear
/// phases alpha_n = n * phase_alpha. Probabilities are assembled in
/// log-space; mean_photons up to several hundred is routine.
FieldState coherent_state(double mean_photons, double phase_alpha,
                          double eps_trunc = kDefaultEpsTrunc);

/// Even/odd cat superposition N(|alpha> + e^{i phi}|-alpha>) with alpha real,
/// mean_photons = |alpha|^2:
///   p_n = |alpha|^{2n} [1 + (-1)^n cos(phi)] / (n! (e^{|alpha|^2} + e^{-|alpha|^2} cos(phi)))
/// phi = 0 kills every odd index exactly, phi = pi every even one.
/// Throws DegenerateState when the normalizing denominator vanishes
/// (mean_photons = 0 with cos(phi) = -1).
FieldState cat_state(double mean_photons, double phi,
                     double eps_trunc = kDefaultEpsTrunc);

/// Squeezed coherent state S(r)|alpha> with S(r) = exp(r (a^2 - a^t2)/2) and
/// alpha real:
///   p_n = tanh(r)^n / (n! 2^n cosh(r)) * exp(-alpha^2 (1 - tanh r))
///         * H_n(alpha / sqrt(sinh 2r))^2.
/// The Hermite factor is carried through its recurrence in (log-magnitude,
/// sign) form and p_n is assembled entirely in log-space. r = 0 dispatches to
/// coherent_state(alpha^2, 0, .): the Hermite argument diverges there while
/// the prefactor vanishes, so the limit is taken analytically.
FieldState squeezed_coherent_state(double r, double alpha,
                                   double eps_trunc = kDefaultEpsTrunc);

/// Discretized Gaussian p_n ~ exp(-(n - mean)^2 / (2 sigma2)) on n >= 0,
/// renormalized, with alpha_n = n * phase_slope. Throws DegenerateState when
/// more than 10% of the continuous mass lies at n < 0.
FieldState gaussian_state(double mean, double sigma2, double phase_slope,
                          double eps_trunc = kDefaultEpsTrunc);

/// Number state |n>.
FieldState fock_state(int n);

/// User-supplied table, normalized. Throws InvalidDistribution as the
/// FieldState constructor does.
FieldState custom_state(std::vector<double> probs, std::vector<double> phases);

/// Mean, variance (computed as a centered second moment), and argmax of p_n.
FieldStats stats(const FieldState& state);

/// Plain-text table "n,p_n,alpha_n" at full double precision.
void write_state_table(std::ostream& out, const FieldState& state);
FieldState read_state_table(std::istream& in);

}  // namespace jc
