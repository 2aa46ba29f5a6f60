#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jc/dynamics.hpp"
#include "jc/field_state.hpp"
#include "jc/resummation.hpp"

namespace jc {

enum class StateKind { Coherent, Cat, Squeezed, Gaussian, Fock, Custom };

struct StateSpec {
    StateKind kind = StateKind::Coherent;
    double nbar = 49.0;      // coherent / cat / gaussian mean photon number
    double phase = 0.0;      // coherent phase slope alpha
    double phi = 0.0;        // cat relative phase
    double r = 0.75;         // squeezing parameter
    double alpha = 14.72;    // squeezed displacement (real)
    double sigma2 = 49.0;    // gaussian variance
    double slope = 0.0;      // gaussian phase slope
    int fock_n = 0;
    std::string custom_path;
};

/// Product atom (a|+> + b|->) x state, or an entangled pair of field specs.
struct AtomSpec {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    std::optional<StateSpec> field_plus;
    std::optional<StateSpec> field_minus;
};

struct RunConfig {
    StateSpec state;
    AtomSpec atom;
    double g = 1.0;
    double omega = 49.0;
    double gt_min = 0.0;
    double gt_max = 50.0;
    int gt_steps = 5000;
    double eps_trunc = kDefaultEpsTrunc;
    bool resum = false;
    int nu_max = 0;  // 0 selects default_nu_max for the scanned window
    std::optional<ContinuationFamily> family;  // default: Poisson for coherent states
    std::vector<int> quad_nus;
    std::string out_path;
    std::uint64_t seed = 0;
    bool emit_plot = false;
    // design subcommand parameters
    double g_tf = 4.0;
    double beta2 = 1.0;
    int design_n_max = 80;
    double cos_floor = 1e-3;
};

StateKind parse_state_kind(const std::string& name);
std::string state_kind_name(StateKind kind);

FieldState build_state(const StateSpec& spec, double eps_trunc);
JointState build_joint(const RunConfig& config);
/// Continuation model fitted to the scanned state over [gt_min, gt_max].
ResumModel build_model(const RunConfig& config, const FieldState& state);

using KeyValues = std::map<std::string, std::string>;

/// Flat key=value file; '#' starts a comment. Unknown keys are rejected when
/// the config is materialized, not here.
KeyValues parse_config_file(std::istream& in);

/// Builds a RunConfig from defaults plus overrides. Entangled field specs use
/// prefixed keys (plus_state, plus_nbar, ..., minus_state, ...).
RunConfig config_from_map(const KeyValues& values);

/// Effective configuration as deterministic key=value lines for CSV metadata.
std::vector<std::string> config_metadata(const RunConfig& config,
                                         const std::string& command);

}  // namespace jc
