#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "jc/field_state.hpp"

namespace jc {

enum class ContinuationFamily {
    GaussianContinuation,  // p(n) = exp(-(n-nbar)^2 / 2 sigma^2) / sqrt(2 pi sigma^2)
    PoissonSpecialized,    // p(n) = exp(n ln nbar - nbar - lgamma(n+1))
};

/// Analytic-continuation parameters for the resummed purity. The moments are
/// taken from the actual truncated state (see model_from_state), not from
/// nominal constructor inputs: squeezed states need the fitted variance.
struct ResumModel {
    double n_mean;
    double sigma2;
    ContinuationFamily family;
    int nu_max;
    double g = 1.0;
};

/// nu_max large enough that every revival lobe inside [0, gt_max] is kept:
/// lobes sit at gt = 2 pi nu sqrt(n_mean), so ceil(gt_max / lobe spacing) + 2.
int default_nu_max(double n_mean, double gt_max);

ResumModel model_from_state(const FieldState& state, ContinuationFamily family,
                            int nu_max, double g = 1.0);

/// Peakedness window for revival lobe nu: (n_mean+1)/(nu pi) << sigma2 << n_mean^2,
/// with "<<" read as a ratio of at least 10. Marginal cases are reported, not
/// rejected: the coherent benchmark sits at lower_ratio ~ 3 yet resums well.
struct ValidityReport {
    int nu;
    double lower_ratio;  // sigma2 / ((n_mean + 1) / (nu pi))
    double upper_ratio;  // n_mean^2 / sigma2
    bool ok;
};

inline constexpr double kValidityRatioMin = 10.0;

ValidityReport validity(const ResumModel& model, int nu);

/// Exact truncated sums over the state; the brute-force reference for every
/// resummed form below. Time enters only as the product gt.
///   S_c = sum p_n cos(2 gt sqrt(n+1)),  S_s = sum p_n sin(2 gt sqrt(n+1))
std::pair<double, double> series_sc_ss(const FieldState& state, double gt);

/// S = sum p_n sin(gt / (2 sqrt(n+1))). The argument is the slow phase
/// gt/(2 sqrt(n+1)), not (gt/2) sqrt(n+1).
double series_s(const FieldState& state, double gt);

/// Coherence magnitude estimate (S_s - S)/2 from the exact series. Valid only
/// for slowly varying phase differences; alternating-support states (cat) are
/// the standard counterexample.
double coherence_approx(const FieldState& state, double gt);

/// Gaussian envelope of S: exp(-(gt sigma)^2 / 32 nbar^3) sin(gt / (2 sqrt(nbar+1))).
/// Leading closed form; purity_resummed integrates the slow term instead.
double envelope_s(const ResumModel& model, double gt);

/// nu = 0 lobe in closed form: exp(-(gt sigma)^2 / 2 nbar) e^{2 i gt sqrt(nbar+1)}.
std::complex<double> f0_closed(const ResumModel& model, double gt);

/// Leading stationary-phase lobe nu >= 1; family selects the generic
/// Gaussian-continuation form or the Poisson specialization. Kept as the
/// reference closed form; purity_resummed evaluates its lobes one order
/// higher (gaussian saddle on the continuation's local log-quadratic),
/// which matters in the lobe tails.
std::complex<double> f_nu_stationary(const ResumModel& model, double gt, int nu);

/// Closed-form lobe weights: w0 for the nu = 0 term, w_nu pairing
/// |f_nu_stationary|^2 with the cross term against the S envelope (the
/// coherence lobe trails the S_s lobe by pi*nu, hence the alternating sign
/// inside).
double w0(const ResumModel& model, double gt);
double w_nu(const ResumModel& model, double gt, int nu);

/// Resummed purity
///   1/2 + S^2/2 + w_0 + sum_{nu>=1} [ |f_nu|^2/2 - S Im g_nu ]
/// with S the integrated slow term, f_nu / g_nu the revival lobes of the
/// population and coherence series at gaussian-saddle order. Reduces to the
/// closed w_nu forms near the lobe centers. Throws InvalidModel on
/// non-positive n_mean or sigma2. Callers decide what to do with marginal
/// validity; see ValidityReport.
double purity_resummed(const ResumModel& model, double gt);

/// Revival-lobe integral f_nu = int_0^inf p(n) e^{2i(gt sqrt(n+1) - pi nu n)} dn
/// by adaptive Gauss-Kronrod panels over [max(0, nbar - 8 sigma), nbar + 8 sigma],
/// with the initial panel count scaled to the local phase derivative.
/// Throws QuadratureNoConvergence (with the achieved error estimate) when the
/// subdivision budget runs out above abs_tol.
std::complex<double> f_nu_quadrature(const ResumModel& model, double gt, int nu,
                                     double abs_tol = 1e-6, int max_panels = 20000);

/// purity_resummed with the stationary-phase lobes in quad_nus replaced by
/// their quadrature evaluation (the nu = 0 entry also restores the p(0)
/// boundary term of the resummation identity).
double purity_resummed_quad(const ResumModel& model, double gt,
                            const std::vector<int>& quad_nus,
                            double abs_tol = 1e-6);

/// Closed-form purity at the half revival:
///   (1 + e^{-sigma^2 pi^2 / 16 nbar^2} + e^{-sigma^2 pi^2}
///      - 2 e^{-sigma^2 pi^2 / 2} sin(2 pi nbar)) / 2
/// evaluated exactly as printed; out-of-window parameters (tiny sigma2) push
/// it above 1 and are reported as-is rather than clamped.
double half_revival_purity(const ResumModel& model);

}  // namespace jc
