#include "jc/field_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "jc/errors.hpp"
#include "jc/logspace.hpp"

namespace jc {

namespace {

constexpr int kMaxIndex = 2'000'000;

void check_eps(double eps_trunc) {
    if (!(eps_trunc > 0.0) || !(eps_trunc < 1.0))
        throw ConfigError("eps_trunc must lie in (0, 1)");
}

/// Accumulates exp(log_p(n)) for a distribution known to sum to one over the
/// integers, stopping once the remaining tail is below eps_trunc, then keeps a
/// guard band and trims exact zeros off the end.
std::vector<double> collect_until_tail(double eps_trunc,
                                       const auto& log_p) {
    std::vector<double> p;
    double cum = 0.0;
    int peak = 0;
    double peak_val = -1.0;
    int tiny_run = 0;
    int n = 0;
    for (; n <= kMaxIndex; ++n) {
        double v = std::exp(log_p(n));
        p.push_back(v);
        cum += v;
        if (v > peak_val) {
            peak_val = v;
            peak = n;
        }
        if (1.0 - cum < eps_trunc) break;
        // Fallback for tolerances at the rounding floor of the cumulative
        // sum; a run of consecutive tiny entries keeps alternating-support
        // distributions from breaking on their structural zeros.
        tiny_run = v < eps_trunc * 1e-6 ? tiny_run + 1 : 0;
        if (n > peak + 50 && tiny_run >= 3) break;
    }
    if (n > kMaxIndex)
        throw ConfigError("photon-number truncation did not converge");
    for (int g = 0; g < kTruncationGuard; ++g)
        p.push_back(std::exp(log_p(static_cast<int>(p.size()))));
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    return p;
}

std::vector<double> linear_phases(std::size_t count, double slope) {
    std::vector<double> a(count);
    for (std::size_t i = 0; i < count; ++i) a[i] = slope * static_cast<double>(i);
    return a;
}

}  // namespace

FieldState::FieldState(std::vector<double> probs, std::vector<double> phases,
                       double tail_mass)
    : probs_(std::move(probs)), phases_(std::move(phases)), tail_mass_(tail_mass) {
    if (probs_.empty()) throw InvalidDistribution("empty probability table");
    if (phases_.size() != probs_.size())
        throw InvalidDistribution("probs and phases differ in length");
    double total = 0.0;
    for (double v : probs_) {
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidDistribution("probabilities must be finite and non-negative");
        total += v;
    }
    if (!(total > 0.0)) throw InvalidDistribution("zero total probability mass");
    for (double& v : probs_) v /= total;
    for (double v : phases_)
        if (!std::isfinite(v)) throw InvalidDistribution("phases must be finite");
}

double FieldState::prob(int n) const {
    if (n < 0 || n > n_max()) return 0.0;
    return probs_[static_cast<std::size_t>(n)];
}

double FieldState::phase(int n) const {
    if (n < 0 || n > n_max()) return 0.0;
    return phases_[static_cast<std::size_t>(n)];
}

FieldState coherent_state(double mean_photons, double phase_alpha, double eps_trunc) {
    if (!(mean_photons >= 0.0)) throw ConfigError("mean_photons must be >= 0");
    check_eps(eps_trunc);
    const double m = mean_photons;
    const double log_m = m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
    auto log_p = [&](int n) {
        if (n == 0) return -m;
        return -m + n * log_m - std::lgamma(n + 1.0);
    };
    std::vector<double> p = collect_until_tail(eps_trunc, log_p);
    double mass = 0.0;
    for (double v : p) mass += v;
    std::vector<double> phases = linear_phases(p.size(), phase_alpha);
    return FieldState(std::move(p), std::move(phases), std::max(0.0, 1.0 - mass));
}

FieldState cat_state(double mean_photons, double phi, double eps_trunc) {
    if (!(mean_photons >= 0.0)) throw ConfigError("mean_photons must be >= 0");
    check_eps(eps_trunc);
    const double m = mean_photons;
    const double c = std::cos(phi);
    const double denom_rest = 1.0 + std::exp(-2.0 * m) * c;
    if (!(denom_rest > 0.0))
        throw DegenerateState("cat-state normalization vanishes");
    const double log_den = m + std::log1p(std::exp(-2.0 * m) * c);
    const double log_m = m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
    auto log_p = [&](int n) {
        double parity = 1.0 + (n % 2 == 0 ? c : -c);
        if (parity <= 0.0) return -std::numeric_limits<double>::infinity();
        double lead = (n == 0) ? 0.0 : n * log_m - std::lgamma(n + 1.0);
        return lead + std::log(parity) - log_den;
    };
    std::vector<double> p = collect_until_tail(eps_trunc, log_p);
    double mass = 0.0;
    for (double v : p) mass += v;
    std::vector<double> phases(p.size(), 0.0);
    return FieldState(std::move(p), std::move(phases), std::max(0.0, 1.0 - mass));
}

FieldState squeezed_coherent_state(double r, double alpha, double eps_trunc) {
    if (!(r >= 0.0)) throw ConfigError("squeezing r must be >= 0");
    check_eps(eps_trunc);
    if (r == 0.0) return coherent_state(alpha * alpha, 0.0, eps_trunc);

    const double x = alpha / std::sqrt(std::sinh(2.0 * r));
    const double log_tanh = std::log(std::tanh(r));
    const double log_cosh = std::log(std::cosh(r));
    const double offset = -alpha * alpha * (1.0 - std::tanh(r));
    const double log2 = std::log(2.0);

    HermiteLogRecurrence hermite(x);
    auto log_p = [&](int n) {
        SignedLog h = hermite.at(n);
        if (h.sign == 0) return -std::numeric_limits<double>::infinity();
        return n * (log_tanh - log2) - std::lgamma(n + 1.0) - log_cosh + offset +
               2.0 * h.log_mag;
    };
    std::vector<double> p = collect_until_tail(eps_trunc, log_p);
    double mass = 0.0;
    for (double v : p) mass += v;
    std::vector<double> phases(p.size(), 0.0);
    return FieldState(std::move(p), std::move(phases), std::max(0.0, 1.0 - mass));
}

FieldState gaussian_state(double mean, double sigma2, double phase_slope,
                          double eps_trunc) {
    if (!(mean > 0.0)) throw ConfigError("gaussian mean must be > 0");
    if (!(sigma2 > 0.0)) throw ConfigError("gaussian sigma2 must be > 0");
    check_eps(eps_trunc);
    const double sigma = std::sqrt(sigma2);
    // Continuous mass at n < 0; the discretized distribution cannot represent it.
    double negative_mass = 0.5 * std::erfc(mean / (sigma * std::sqrt(2.0)));
    if (negative_mass > 0.10)
        throw DegenerateState("more than 10% of the gaussian lies at n < 0");

    const double half_width = sigma * std::sqrt(2.0 * std::log(1.0 / eps_trunc)) + 2.0;
    const int hi = static_cast<int>(std::ceil(mean + half_width));
    std::vector<double> w(static_cast<std::size_t>(hi) + 1);
    double total = 0.0;
    for (int n = 0; n <= hi; ++n) {
        double d = n - mean;
        w[static_cast<std::size_t>(n)] = std::exp(-d * d / (2.0 * sigma2));
        total += w[static_cast<std::size_t>(n)];
    }
    // Truncate at the smallest N whose normalized discrete tail is < eps_trunc,
    // then apply the usual guard band.
    double tail = 0.0;
    int cut = hi;
    for (int n = hi; n >= 0; --n) {
        tail += w[static_cast<std::size_t>(n)] / total;
        if (tail >= eps_trunc) {
            cut = n;
            break;
        }
    }
    cut = std::min(hi, cut + kTruncationGuard);
    w.resize(static_cast<std::size_t>(cut) + 1);
    while (w.size() > 1 && w.back() == 0.0) w.pop_back();
    double kept = 0.0;
    for (double v : w) kept += v;
    std::vector<double> phases = linear_phases(w.size(), phase_slope);
    return FieldState(std::move(w), std::move(phases), std::max(0.0, 1.0 - kept / total));
}

FieldState fock_state(int n) {
    if (n < 0) throw ConfigError("fock index must be >= 0");
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p.back() = 1.0;
    std::vector<double> phases(p.size(), 0.0);
    return FieldState(std::move(p), std::move(phases), 0.0);
}

FieldState custom_state(std::vector<double> probs, std::vector<double> phases) {
    return FieldState(std::move(probs), std::move(phases), 0.0);
}

FieldStats stats(const FieldState& state) {
    const auto& p = state.probs();
    double mean = 0.0;
    int peak = 0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        mean += static_cast<double>(n) * p[n];
        if (p[n] > p[static_cast<std::size_t>(peak)]) peak = static_cast<int>(n);
    }
    double var = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        double d = static_cast<double>(n) - mean;
        var += d * d * p[n];
    }
    return {mean, var, peak};
}

void write_state_table(std::ostream& out, const FieldState& state) {
    out << "n,p_n,alpha_n\n";
    char buf[64];
    for (int n = 0; n <= state.n_max(); ++n) {
        std::snprintf(buf, sizeof buf, "%.17g", state.prob(n));
        out << n << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.17g", state.phase(n));
        out << ',' << buf << '\n';
    }
}

FieldState read_state_table(std::istream& in) {
    std::vector<double> probs;
    std::vector<double> phases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
        std::istringstream row(line);
        std::string field;
        if (!std::getline(row, field, ',')) continue;
        int n = std::stoi(field);
        if (n != static_cast<int>(probs.size()))
            throw InvalidDistribution("state table indices must be contiguous from 0");
        if (!std::getline(row, field, ','))
            throw InvalidDistribution("state table row missing p_n");
        probs.push_back(std::stod(field));
        if (!std::getline(row, field, ','))
            throw InvalidDistribution("state table row missing alpha_n");
        phases.push_back(std::stod(field));
    }
    return custom_state(std::move(probs), std::move(phases));
}

}  // namespace jc
