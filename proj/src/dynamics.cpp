#include "jc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jc/errors.hpp"

namespace jc {

namespace {

constexpr double kTopDoubletTol = 1e-8;
constexpr double kJointNormTol = 1e-8;

double branch_norm_sq(const std::vector<Complex>& amps) {
    double s = 0.0;
    for (const Complex& c : amps) s += std::norm(c);
    return s;
}

int branch_peak(const std::vector<Complex>& amps) {
    int peak = 0;
    double best = -1.0;
    for (std::size_t n = 0; n < amps.size(); ++n) {
        double w = std::norm(amps[n]);
        if (w > best) {
            best = w;
            peak = static_cast<int>(n);
        }
    }
    return peak;
}

}  // namespace

JointState::JointState(std::vector<Complex> plus, std::vector<Complex> minus,
                       double g, double omega)
    : plus_(std::move(plus)), minus_(std::move(minus)), g_(g), omega_(omega) {
    if (minus_.size() != plus_.size() + 1)
        throw NormalizationError("minus branch must carry exactly one extra index");
    if (!(g_ > 0.0)) throw ConfigError("coupling g must be > 0");
}

double JointState::norm_sq() const {
    return branch_norm_sq(plus_) + branch_norm_sq(minus_);
}

JointState initial_joint(const AtomAmplitudes& atom, const FieldState& field_plus,
                         const FieldState& field_minus, double g, double omega) {
    // Common range plus one empty guard doublet at the top; the guard keeps
    // the truncation check in evolve() meaningful for exact finite states.
    const int top = std::max(field_plus.n_max(), field_minus.n_max()) + 1;
    std::vector<Complex> plus(static_cast<std::size_t>(top) + 1, Complex{});
    std::vector<Complex> minus(static_cast<std::size_t>(top) + 2, Complex{});
    for (int n = 0; n <= top; ++n) {
        if (atom.plus != Complex{})
            plus[static_cast<std::size_t>(n)] =
                atom.plus * std::polar(std::sqrt(field_plus.prob(n)), field_plus.phase(n));
        if (atom.minus != Complex{})
            minus[static_cast<std::size_t>(n)] =
                atom.minus * std::polar(std::sqrt(field_minus.prob(n)), field_minus.phase(n));
    }
    JointState state(std::move(plus), std::move(minus), g, omega);
    if (std::abs(state.norm_sq() - 1.0) > kJointNormTol)
        throw NormalizationError("initial joint state norm deviates from 1");
    return state;
}

JointState evolve(const JointState& state, double t) {
    if (t < 0.0) throw ConfigError("evolution time must be >= 0");
    const int top = state.n_top();
    double leak = std::norm(state.plus()[static_cast<std::size_t>(top)]) +
                  std::norm(state.minus()[static_cast<std::size_t>(top) + 1]);
    if (leak > kTopDoubletTol)
        throw TruncationLeak("probability at the top doublet exceeds 1e-8; enlarge truncation");

    std::vector<Complex> plus(state.plus());
    std::vector<Complex> minus(state.minus());

    // Free phase e^{-i omega (n + 1/2) t} built as h * u^n by iterated
    // multiplication: the omega dependence then cancels exactly in every
    // observable that pairs adjacent indices.
    const Complex h = std::polar(1.0, -0.5 * state.omega() * t);
    const Complex u = std::polar(1.0, -state.omega() * t);
    Complex phase = h;
    for (int n = 0; n <= top; ++n) {
        const double theta = state.g() * t * std::sqrt(n + 1.0);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex a = plus[static_cast<std::size_t>(n)];
        const Complex b = minus[static_cast<std::size_t>(n) + 1];
        plus[static_cast<std::size_t>(n)] = phase * (c * a - Complex(0.0, 1.0) * s * b);
        minus[static_cast<std::size_t>(n) + 1] = phase * (c * b - Complex(0.0, 1.0) * s * a);
        phase *= u;
    }
    minus[0] *= std::conj(h);  // |0,-> is uncoupled, energy -omega/2
    return JointState(std::move(plus), std::move(minus), state.g(), state.omega());
}

AtomDensity atom_density(const JointState& state) {
    double p_plus = branch_norm_sq(state.plus());
    double p_minus = branch_norm_sq(state.minus());
    Complex c{};
    for (std::size_t n = 0; n < state.plus().size(); ++n)
        c += state.plus()[n] * std::conj(state.minus()[n]);
    return {p_plus, p_minus, c};
}

double purity(const AtomDensity& rho) {
    return rho.p_plus * rho.p_plus + rho.p_minus * rho.p_minus +
           2.0 * std::norm(rho.coherence);
}

FieldDensity field_density(const JointState& state) {
    const int dim = static_cast<int>(state.minus().size());
    auto amp_plus = [&](int n) {
        return n <= state.n_top() ? state.plus()[static_cast<std::size_t>(n)] : Complex{};
    };
    FieldDensity rho;
    rho.dim = dim;
    rho.matrix.resize(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            rho.matrix[static_cast<std::size_t>(m) * static_cast<std::size_t>(dim) +
                       static_cast<std::size_t>(n)] =
                amp_plus(m) * std::conj(amp_plus(n)) +
                state.minus()[static_cast<std::size_t>(m)] *
                    std::conj(state.minus()[static_cast<std::size_t>(n)]);
        }
    }
    return rho;
}

double field_purity(const FieldDensity& rho) {
    double s = 0.0;
    for (const Complex& v : rho.matrix) s += std::norm(v);
    return s;
}

double entropy(const AtomDensity& rho) {
    double d = rho.p_plus - 0.5;
    double disc = std::sqrt(d * d + std::norm(rho.coherence));
    double s = 0.0;
    for (double lambda : {0.5 + disc, 0.5 - disc})
        if (lambda > 0.0) s -= lambda * std::log(lambda);
    return s;
}

double mixed_phase_purity(double p_plus) {
    if (p_plus < 0.0 || p_plus > 1.0)
        throw ConfigError("p_plus must lie in [0, 1]");
    return 1.0 + 2.0 * p_plus * (p_plus - 1.0);
}

double marginal_mean(const JointState& state) {
    const auto& plus = state.plus();
    const auto& minus = state.minus();
    double n_bar = 0.0;
    double norm = 0.0;
    for (std::size_t n = 0; n < minus.size(); ++n) {
        double w = std::norm(minus[n]);
        if (n < plus.size()) w += std::norm(plus[n]);
        n_bar += static_cast<double>(n) * w;
        norm += w;
    }
    return n_bar / norm;
}

DisentangledPrediction predicted_disentangled(const JointState& state0, double t) {
    const auto& plus = state0.plus();
    const auto& minus = state0.minus();
    const int top = state0.n_top();

    const double n_bar = marginal_mean(state0);
    double var = 0.0;
    double norm = 0.0;
    for (std::size_t n = 0; n < minus.size(); ++n) {
        double w = std::norm(minus[n]);
        if (n < plus.size()) w += std::norm(plus[n]);
        double d = static_cast<double>(n) - n_bar;
        var += d * d * w;
        norm += w;
    }
    var /= norm;

    const double w_plus = branch_norm_sq(plus);
    const double w_minus = branch_norm_sq(minus);
    if (w_plus > 1e-12 && w_minus > 1e-12) {
        int gap = std::abs(branch_peak(plus) - branch_peak(minus));
        if (static_cast<double>(gap) > std::sqrt(var))
            throw PeakMismatch("branch distributions peak more than sigma_n apart");
    }

    const double g = state0.g();
    const double t0 = std::numbers::pi * std::sqrt(n_bar + 1.0) / g;
    if (std::abs(t - t0) > 0.5 * std::sqrt(n_bar + 1.0) / g)
        throw WindowViolation("time outside the disentanglement window around t0");

    // Phase step of the dominant branch at the rounded peak.
    double delta_alpha = 0.0;
    const int nb = std::clamp(static_cast<int>(std::lround(n_bar)), 1, top);
    const std::vector<Complex>& lead = w_plus >= w_minus ? plus : minus;
    if (std::norm(lead[static_cast<std::size_t>(nb)]) > 0.0 &&
        std::norm(lead[static_cast<std::size_t>(nb) - 1]) > 0.0) {
        delta_alpha = std::arg(lead[static_cast<std::size_t>(nb)] *
                               std::conj(lead[static_cast<std::size_t>(nb) - 1]));
    }

    // Field factor: the evolved amplitudes with the quarter-period shift
    // cos(gt sqrt(n+1)) -> -sin(gt sqrt(n)) already applied, which is what
    // makes the atom factor separate off.
    const double omega = state0.omega();
    DisentangledPrediction pred;
    pred.t0 = t0;
    pred.n_bar = n_bar;
    pred.field.resize(static_cast<std::size_t>(top) + 1);
    const Complex h = std::polar(1.0, -0.5 * omega * t);
    const Complex u = std::polar(1.0, -omega * t);
    Complex phase = h;
    double f_norm = 0.0;
    for (int n = 0; n <= top; ++n) {
        const double s = std::sin(g * t * std::sqrt(static_cast<double>(n)));
        const double c = std::cos(g * t * std::sqrt(static_cast<double>(n)));
        Complex f = -phase * (plus[static_cast<std::size_t>(n)] * s +
                              Complex(0.0, 1.0) * minus[static_cast<std::size_t>(n) + 1] * c);
        pred.field[static_cast<std::size_t>(n)] = f;
        f_norm += std::norm(f);
        phase *= u;
    }
    f_norm = std::sqrt(f_norm);
    for (Complex& f : pred.field) f /= f_norm;

    // Atom factor (|+> + i e^{i(omega t - delta_alpha)} |->)/sqrt(2); the
    // relative phase carries no dependence on the atomic amplitudes a, b.
    pred.atom_plus = Complex(1.0 / std::sqrt(2.0), 0.0);
    pred.atom_minus =
        Complex(0.0, 1.0) * std::polar(1.0 / std::sqrt(2.0), omega * t - delta_alpha);
    return pred;
}

double fidelity(const DisentangledPrediction& prediction, const JointState& state) {
    Complex overlap{};
    double pred_norm = 0.0;
    for (std::size_t n = 0; n < prediction.field.size(); ++n) {
        Complex f = prediction.field[n];
        Complex pred_plus = prediction.atom_plus * f;
        Complex pred_minus = prediction.atom_minus * f;
        pred_norm += std::norm(pred_plus) + std::norm(pred_minus);
        if (n < state.plus().size())
            overlap += std::conj(pred_plus) * state.plus()[n];
        overlap += std::conj(pred_minus) * state.minus()[n];
    }
    return std::norm(overlap) / (pred_norm * state.norm_sq());
}

double revival_time(double n_mean, double g, int nu, bool sqrt_nbar_convention) {
    if (!(n_mean >= 0.0)) throw ConfigError("n_mean must be >= 0");
    if (!(g > 0.0)) throw ConfigError("coupling g must be > 0");
    if (nu < 1) throw ConfigError("revival index nu must be >= 1");
    double root = sqrt_nbar_convention ? std::sqrt(n_mean) : std::sqrt(n_mean + 1.0);
    return 2.0 * std::numbers::pi * nu * root / g;
}

}  // namespace jc
