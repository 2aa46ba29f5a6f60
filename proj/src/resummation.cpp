#include "jc/resummation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "jc/errors.hpp"

namespace jc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_model(const ResumModel& model) {
    if (!(model.n_mean > 0.0) || !(model.sigma2 > 0.0))
        throw InvalidModel("continuation requires n_mean > 0 and sigma2 > 0");
    if (model.nu_max < 1) throw InvalidModel("nu_max must be >= 1");
}

/// Analytic continuation p(n) of the photon-number distribution.
double continuation(const ResumModel& model, double n) {
    if (model.family == ContinuationFamily::PoissonSpecialized) {
        if (n < 0.0) return 0.0;
        return std::exp(n * std::log(model.n_mean) - model.n_mean - std::lgamma(n + 1.0));
    }
    double d = n - model.n_mean;
    return std::exp(-d * d / (2.0 * model.sigma2)) / std::sqrt(2.0 * kPi * model.sigma2);
}

/// Envelope multiplying the cross terms of the lobe weights; the Poisson
/// specialization keeps its sqrt(nbar) flavor.
double cross_envelope(const ResumModel& model, double gt) {
    if (model.family == ContinuationFamily::PoissonSpecialized) {
        double q = gt / (2.0 * model.n_mean);
        return std::exp(-q * q / 8.0) * std::sin(gt / (2.0 * std::sqrt(model.n_mean)));
    }
    return  // Gaussian continuation uses the sqrt(nbar + 1) envelope
        std::exp(-(gt * gt) * model.sigma2 /
                 (32.0 * model.n_mean * model.n_mean * model.n_mean)) *
        std::sin(gt / (2.0 * std::sqrt(model.n_mean + 1.0)));
}

// Digamma / trigamma by upward recurrence into the asymptotic regime.
double digamma(double x) {
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    return acc + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double trigamma(double x) {
    double acc = 0.0;
    while (x < 8.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    return acc + inv * (1.0 + 0.5 * inv +
                        inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0)));
}

/// Local quadratic model of ln p(n) for the family's continuation.
struct LogContinuation {
    double value;   // ln p
    double slope;   // d ln p / dn
    double curve;   // d^2 ln p / dn^2, < 0 near the peak
};

LogContinuation log_continuation(const ResumModel& model, double n) {
    if (model.family == ContinuationFamily::PoissonSpecialized) {
        double log_nb = std::log(model.n_mean);
        return {n * log_nb - model.n_mean - std::lgamma(n + 1.0),
                log_nb - digamma(n + 1.0), -trigamma(n + 1.0)};
    }
    double d = n - model.n_mean;
    return {-d * d / (2.0 * model.sigma2) - 0.5 * std::log(2.0 * kPi * model.sigma2),
            -d / model.sigma2, -1.0 / model.sigma2};
}

/// Gaussian-order saddle evaluation of int p(n) e^{i phase(n)} dn expanded
/// about a point near the phase's stationary point: ln p enters through its
/// local quadratic model, so the lobe keeps the continuation's skew in its
/// tails.
std::complex<double> lobe_saddle(const LogContinuation& local, double phase_value,
                                 double phase_slope, double phase_curve) {
    std::complex<double> quad(local.curve, phase_curve);   // L2 + i phi''
    std::complex<double> lin(local.slope, phase_slope);    // L1 + i phi'
    std::complex<double> amp = std::sqrt(2.0 * kPi / -quad) *
                               std::exp(local.value - lin * lin / (2.0 * quad));
    return amp * std::polar(1.0, phase_value);
}

/// Revival lobes of the two oscillatory series entering the purity:
///   f: sum p_n e^{2i gt sqrt(n+1)}            (lobe of S_c + i S_s)
///   g: sum sqrt(p_n p_{n-1}) e^{i gt (sqrt(n+1)+sqrt(n))}  (coherence lobe)
/// g trails f by pi*nu in phase, which the direct evaluation reproduces.
struct LobePair {
    std::complex<double> f;
    std::complex<double> g;
};

LobePair lobe_pair(const ResumModel& model, double gt, int nu) {
    if (gt <= 0.0) return {{}, {}};
    const double mu = gt / (2.0 * kPi * nu);
    if (mu * mu <= 0.51) return {{}, {}};  // lobe support would sit below n = 0
    const double n_star = mu * mu - 1.0;  // stationary point of both phases
    LogContinuation local = log_continuation(model, n_star);

    double phi = 2.0 * (gt * mu - kPi * nu * n_star);
    double phi_curve = -gt / (2.0 * std::pow(mu * mu, 1.5));

    // sqrt(p_n p_{n-1}) = p(n - 1/2) on the continuation; shifting the
    // integration variable lands back on n_star up to a residual slope.
    double xi = gt * (std::sqrt(n_star + 1.5) + std::sqrt(n_star + 0.5)) -
                2.0 * kPi * nu * (n_star + 0.5);
    double xi_slope = (gt / 2.0) * (std::pow(n_star + 1.5, -0.5) +
                                    std::pow(n_star + 0.5, -0.5)) -
                      2.0 * kPi * nu;
    double xi_curve = -(gt / 4.0) * (std::pow(n_star + 1.5, -1.5) +
                                     std::pow(n_star + 0.5, -1.5));
    return {lobe_saddle(local, phi, 0.0, phi_curve),
            lobe_saddle(local, xi, xi_slope, xi_curve)};
}

// 15-point Kronrod / 7-point Gauss pair (positive abscissae).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    std::complex<double> integral;
    double error;
};

template <typename F>
PanelResult kronrod15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::complex<double> k15 = kWgk[7] * f(mid);
    std::complex<double> g7 = kWg[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        std::complex<double> y = f(mid + dx) + f(mid - dx);
        k15 += kWgk[i] * y;
        if (i % 2 == 1) g7 += kWg[i / 2] * y;
    }
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
}

template <typename F, typename Rate>
std::complex<double> adaptive_integral(const ResumModel& model, const Rate& phase_rate,
                                       const F& integrand, double abs_tol,
                                       int max_panels) {
    const double sigma = std::sqrt(model.sigma2);
    const double lo = std::max(0.0, model.n_mean - 8.0 * sigma);
    const double hi = model.n_mean + 8.0 * sigma;

    struct Panel {
        double a, b, error;
        std::complex<double> value;
        bool operator<(const Panel& other) const { return error < other.error; }
    };
    std::priority_queue<Panel> queue;
    std::complex<double> total{};
    double total_error = 0.0;
    int panels = 0;
    auto push = [&](double a, double b) {
        PanelResult r = kronrod15(integrand, a, b);
        queue.push({a, b, r.error, r.integral});
        total += r.integral;
        total_error += r.error;
        ++panels;
    };
    // Seed with panels spanning at most ~pi of local phase, so the refinement
    // loop starts from a resolved grid without over-sampling quiet regions.
    const double coarse = (hi - lo) / 8.0;
    double a = lo;
    while (a < hi) {
        if (panels + 1 > max_panels)
            throw QuadratureNoConvergence(
                "lobe quadrature cannot cover the window within its panel budget",
                std::numeric_limits<double>::infinity());
        double width = std::min(coarse, kPi / std::max(phase_rate(a), 1e-12));
        double b = std::min(hi, a + width);
        push(a, b);
        a = b;
    }
    while (total_error > abs_tol) {
        if (panels + 2 > max_panels)
            throw QuadratureNoConvergence("lobe quadrature exhausted its panel budget",
                                          total_error);
        Panel worst = queue.top();
        queue.pop();
        total -= worst.value;
        total_error -= worst.error;
        --panels;
        double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);
    }
    return total;
}

/// Local phase rate of the revival-lobe integrands.
auto lobe_phase_rate(double gt, int nu) {
    return [gt, nu](double n) {
        return std::abs(gt / std::sqrt(n + 1.0) - 2.0 * kPi * nu);
    };
}

/// Quadrature of the coherence lobe: weight sqrt(p_n p_{n-1}) continued as
/// p(n - 1/2), phase gt (sqrt(n+1) + sqrt(n)).
std::complex<double> g_nu_quadrature(const ResumModel& model, double gt, int nu,
                                     double abs_tol, int max_panels = 20000) {
    auto integrand = [&](double n) {
        double phase = gt * (std::sqrt(n + 1.0) + std::sqrt(std::max(n, 0.0))) -
                       2.0 * kPi * nu * n;
        return continuation(model, n - 0.5) * std::polar(1.0, phase);
    };
    return adaptive_integral(model, lobe_phase_rate(gt, nu), integrand, abs_tol,
                             max_panels);
}

/// The slow series sum p_n sin(gt / (2 sqrt(n+1))) as an integral over the
/// continuation. This is the exact nu = 0 term of its resummation; the
/// closed-form envelope is its gaussian reduction and loses accuracy for
/// wide or skewed distributions at large gt.
double slow_term_integral(const ResumModel& model, double gt) {
    if (gt == 0.0) return 0.0;
    auto integrand = [&](double n) {
        return std::complex<double>(
            continuation(model, n) * std::sin(gt / (2.0 * std::sqrt(n + 1.0))), 0.0);
    };
    auto rate = [gt](double n) { return gt / (4.0 * std::pow(n + 1.0, 1.5)); };
    return adaptive_integral(model, rate, integrand, 1e-9, 20000).real();
}

}  // namespace

int default_nu_max(double n_mean, double gt_max) {
    if (!(n_mean > 0.0)) return 1;
    return std::max(1, static_cast<int>(
                           std::ceil(gt_max / (2.0 * kPi * std::sqrt(n_mean)))) +
                           2);
}

ResumModel model_from_state(const FieldState& state, ContinuationFamily family,
                            int nu_max, double g) {
    FieldStats s = stats(state);
    return ResumModel{s.mean, s.variance, family, nu_max, g};
}

ValidityReport validity(const ResumModel& model, int nu) {
    if (nu < 1) throw ConfigError("validity index nu must be >= 1");
    double lower = model.sigma2 / ((model.n_mean + 1.0) / (nu * kPi));
    double upper = model.n_mean * model.n_mean / model.sigma2;
    return {nu, lower, upper, lower >= kValidityRatioMin && upper >= kValidityRatioMin};
}

std::pair<double, double> series_sc_ss(const FieldState& state, double gt) {
    double sc = 0.0;
    double ss = 0.0;
    for (int n = 0; n <= state.n_max(); ++n) {
        double arg = 2.0 * gt * std::sqrt(n + 1.0);
        sc += state.prob(n) * std::cos(arg);
        ss += state.prob(n) * std::sin(arg);
    }
    return {sc, ss};
}

double series_s(const FieldState& state, double gt) {
    double s = 0.0;
    for (int n = 0; n <= state.n_max(); ++n)
        s += state.prob(n) * std::sin(gt / (2.0 * std::sqrt(n + 1.0)));
    return s;
}

double coherence_approx(const FieldState& state, double gt) {
    double ss = series_sc_ss(state, gt).second;
    return 0.5 * (ss - series_s(state, gt));
}

double envelope_s(const ResumModel& model, double gt) {
    const double nb = model.n_mean;
    return std::exp(-(gt * gt) * model.sigma2 / (32.0 * nb * nb * nb)) *
           std::sin(gt / (2.0 * std::sqrt(nb + 1.0)));
}

std::complex<double> f0_closed(const ResumModel& model, double gt) {
    double mag = std::exp(-(gt * gt) * model.sigma2 / (2.0 * model.n_mean));
    return std::polar(mag, 2.0 * gt * std::sqrt(model.n_mean + 1.0));
}

std::complex<double> f_nu_stationary(const ResumModel& model, double gt, int nu) {
    if (nu < 1) throw ConfigError("stationary lobe index nu must be >= 1");
    if (gt <= 0.0) return {};
    const double nb = model.n_mean;
    double amplitude;
    if (model.family == ContinuationFamily::PoissonSpecialized) {
        // Lobe centered on 2 pi nu sqrt(nb + 1): the exact stationary point is
        // (gt/2pi nu)^2 - 1, so the center carries the +1 of the revival time.
        double d = gt - 2.0 * kPi * nu * std::sqrt(nb + 1.0);
        amplitude = gt * std::exp(-d * d / (2.0 * kPi * kPi * nu * nu)) /
                    (2.0 * std::sqrt(kPi * kPi * kPi * nu * nu * nu * nb));
    } else {
        double mu = gt / (2.0 * kPi * nu);
        double n_star = mu * mu - 1.0;  // exact stationary point of the lobe phase
        amplitude = gt / (kPi * std::sqrt(2.0 * nu * nu * nu)) *
                    continuation(model, n_star);
    }
    double chi = gt * gt / (2.0 * kPi * nu) - kPi / 4.0;
    return std::polar(amplitude, chi);
}

double w0(const ResumModel& model, double gt) {
    const double nb = model.n_mean;
    const double q = gt * gt * model.sigma2;
    return 0.5 * (std::exp(-q / nb) -
                  2.0 * std::exp(-q * (1.0 + 1.0 / (16.0 * nb * nb)) / (2.0 * nb)) *
                      std::sin(gt / (2.0 * std::sqrt(nb + 1.0))) *
                      std::sin(2.0 * gt * std::sqrt(nb + 1.0)));
}

double w_nu(const ResumModel& model, double gt, int nu) {
    std::complex<double> f = f_nu_stationary(model, gt, nu);
    double a = std::abs(f);
    // The coherence's fast series carries phase gt(sqrt(n+1) + sqrt(n)), whose
    // lobe nu sits pi*nu behind the S_s lobe; the cross term alternates sign
    // with nu accordingly.
    double parity = nu % 2 == 0 ? 1.0 : -1.0;
    return 0.5 * a * a - parity * cross_envelope(model, gt) * f.imag();
}

double purity_resummed(const ResumModel& model, double gt) {
    check_model(model);
    double slow = slow_term_integral(model, gt);
    double total = 0.5 + 0.5 * slow * slow + w0(model, gt);
    for (int nu = 1; nu <= model.nu_max; ++nu) {
        LobePair lobe = lobe_pair(model, gt, nu);
        total += 0.5 * std::norm(lobe.f) - slow * lobe.g.imag();
    }
    return total;
}

std::complex<double> f_nu_quadrature(const ResumModel& model, double gt, int nu,
                                     double abs_tol, int max_panels) {
    check_model(model);
    if (nu < 0) throw ConfigError("lobe index nu must be >= 0");
    auto integrand = [&](double n) {
        double phase = 2.0 * (gt * std::sqrt(n + 1.0) - kPi * nu * n);
        return continuation(model, n) * std::polar(1.0, phase);
    };
    return adaptive_integral(model, lobe_phase_rate(gt, nu), integrand, abs_tol,
                             max_panels);
}

double purity_resummed_quad(const ResumModel& model, double gt,
                            const std::vector<int>& quad_nus, double abs_tol) {
    check_model(model);
    auto wants_quad = [&](int nu) {
        return std::find(quad_nus.begin(), quad_nus.end(), nu) != quad_nus.end();
    };
    double slow = slow_term_integral(model, gt);
    double total = 0.5 + 0.5 * slow * slow;
    for (int nu = 0; nu <= model.nu_max; ++nu) {
        if (wants_quad(nu)) {
            std::complex<double> f = f_nu_quadrature(model, gt, nu, abs_tol);
            if (nu == 0) {  // boundary term of the resummation identity
                f += 0.5 * continuation(model, 0.0) * std::polar(1.0, 2.0 * gt);
                total += 0.5 * std::norm(f) - slow * f.imag();
            } else {
                std::complex<double> g = g_nu_quadrature(model, gt, nu, abs_tol);
                total += 0.5 * std::norm(f) - slow * g.imag();
            }
        } else if (nu == 0) {
            total += w0(model, gt);
        } else {
            LobePair lobe = lobe_pair(model, gt, nu);
            total += 0.5 * std::norm(lobe.f) - slow * lobe.g.imag();
        }
    }
    return total;
}

double half_revival_purity(const ResumModel& model) {
    check_model(model);
    const double nb = model.n_mean;
    const double s2pi2 = model.sigma2 * kPi * kPi;
    return 0.5 * (1.0 + std::exp(-s2pi2 / (16.0 * nb * nb)) + std::exp(-s2pi2) -
                  2.0 * std::exp(-s2pi2 / 2.0) * std::sin(2.0 * kPi * nb));
}

}  // namespace jc
