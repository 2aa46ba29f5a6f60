#include "jc/run_config.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "jc/csv.hpp"
#include "jc/errors.hpp"

namespace jc {

namespace {

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw ConfigError("bad boolean value for " + key + ": '" + value + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(static_cast<int>(to_long(key, item)));
    return out;
}

/// Applies one `key=value` pair to a state spec given its key prefix.
/// Returns false when the key does not belong to the spec.
bool apply_state_key(StateSpec& spec, const std::string& prefix,
                     const std::string& key, const std::string& value) {
    if (key.rfind(prefix, 0) != 0) return false;
    std::string name = key.substr(prefix.size());
    if (name == "state") {
        spec.kind = parse_state_kind(value);
    } else if (name == "nbar") {
        spec.nbar = to_double(key, value);
    } else if (name == "phase") {
        spec.phase = to_double(key, value);
    } else if (name == "phi") {
        spec.phi = to_double(key, value);
    } else if (name == "r") {
        spec.r = to_double(key, value);
    } else if (name == "alpha") {
        spec.alpha = to_double(key, value);
    } else if (name == "sigma2") {
        spec.sigma2 = to_double(key, value);
    } else if (name == "slope") {
        spec.slope = to_double(key, value);
    } else if (name == "fock_n") {
        spec.fock_n = static_cast<int>(to_long(key, value));
    } else if (name == "custom_path") {
        spec.custom_path = value;
    } else {
        return false;
    }
    return true;
}

void append_state_metadata(std::vector<std::string>& lines, const std::string& prefix,
                           const StateSpec& spec) {
    lines.push_back(prefix + "state=" + state_kind_name(spec.kind));
    switch (spec.kind) {
        case StateKind::Coherent:
            lines.push_back(prefix + "nbar=" + format_double(spec.nbar));
            lines.push_back(prefix + "phase=" + format_double(spec.phase));
            break;
        case StateKind::Cat:
            lines.push_back(prefix + "nbar=" + format_double(spec.nbar));
            lines.push_back(prefix + "phi=" + format_double(spec.phi));
            break;
        case StateKind::Squeezed:
            lines.push_back(prefix + "r=" + format_double(spec.r));
            lines.push_back(prefix + "alpha=" + format_double(spec.alpha));
            break;
        case StateKind::Gaussian:
            lines.push_back(prefix + "nbar=" + format_double(spec.nbar));
            lines.push_back(prefix + "sigma2=" + format_double(spec.sigma2));
            lines.push_back(prefix + "slope=" + format_double(spec.slope));
            break;
        case StateKind::Fock:
            lines.push_back(prefix + "fock_n=" + std::to_string(spec.fock_n));
            break;
        case StateKind::Custom:
            lines.push_back(prefix + "custom_path=" + spec.custom_path);
            break;
    }
}

}  // namespace

StateKind parse_state_kind(const std::string& name) {
    if (name == "coherent") return StateKind::Coherent;
    if (name == "cat") return StateKind::Cat;
    if (name == "squeezed") return StateKind::Squeezed;
    if (name == "gaussian") return StateKind::Gaussian;
    if (name == "fock") return StateKind::Fock;
    if (name == "custom") return StateKind::Custom;
    throw ConfigError("unknown state kind '" + name + "'");
}

std::string state_kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::Coherent: return "coherent";
        case StateKind::Cat: return "cat";
        case StateKind::Squeezed: return "squeezed";
        case StateKind::Gaussian: return "gaussian";
        case StateKind::Fock: return "fock";
        case StateKind::Custom: return "custom";
    }
    throw ConfigError("unreachable state kind");
}

FieldState build_state(const StateSpec& spec, double eps_trunc) {
    switch (spec.kind) {
        case StateKind::Coherent:
            return coherent_state(spec.nbar, spec.phase, eps_trunc);
        case StateKind::Cat:
            return cat_state(spec.nbar, spec.phi, eps_trunc);
        case StateKind::Squeezed:
            return squeezed_coherent_state(spec.r, spec.alpha, eps_trunc);
        case StateKind::Gaussian:
            return gaussian_state(spec.nbar, spec.sigma2, spec.slope, eps_trunc);
        case StateKind::Fock:
            return fock_state(spec.fock_n);
        case StateKind::Custom: {
            std::ifstream in(spec.custom_path);
            if (!in) throw ConfigError("cannot open custom state file " + spec.custom_path);
            return read_state_table(in);
        }
    }
    throw ConfigError("unreachable state kind");
}

JointState build_joint(const RunConfig& config) {
    double norm = std::norm(config.atom.a) + std::norm(config.atom.b);
    if (std::abs(norm - 1.0) > 1e-8)
        throw ConfigError("atom amplitudes must satisfy |a|^2 + |b|^2 = 1");
    const StateSpec& plus_spec = config.atom.field_plus.value_or(config.state);
    const StateSpec& minus_spec = config.atom.field_minus.value_or(plus_spec);
    FieldState plus = build_state(plus_spec, config.eps_trunc);
    FieldState minus = config.atom.field_minus || config.atom.field_plus
                           ? build_state(minus_spec, config.eps_trunc)
                           : plus;
    return initial_joint(AtomAmplitudes{config.atom.a, config.atom.b}, plus, minus,
                         config.g, config.omega);
}

ResumModel build_model(const RunConfig& config, const FieldState& state) {
    ContinuationFamily family = config.family.value_or(
        config.state.kind == StateKind::Coherent ? ContinuationFamily::PoissonSpecialized
                                                 : ContinuationFamily::GaussianContinuation);
    FieldStats s = stats(state);
    int nu_max = config.nu_max > 0 ? config.nu_max
                                   : default_nu_max(s.mean, config.gt_max);
    return model_from_state(state, family, nu_max, config.g);
}

KeyValues parse_config_file(std::istream& in) {
    KeyValues values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::size_t vb = value.find_first_not_of(" \t");
        value = vb == std::string::npos ? "" : value.substr(vb);
        values[key] = value;
    }
    return values;
}

RunConfig config_from_map(const KeyValues& values) {
    RunConfig config;
    for (const auto& [key, value] : values) {
        if (apply_state_key(config.state, "", key, value)) continue;
        if (key.rfind("plus_", 0) == 0) {
            if (!config.atom.field_plus) config.atom.field_plus = config.state;
            if (apply_state_key(*config.atom.field_plus, "plus_", key, value)) continue;
        }
        if (key.rfind("minus_", 0) == 0) {
            if (!config.atom.field_minus) config.atom.field_minus = config.state;
            if (apply_state_key(*config.atom.field_minus, "minus_", key, value)) continue;
        }
        if (key == "a_re") config.atom.a.real(to_double(key, value));
        else if (key == "a_im") config.atom.a.imag(to_double(key, value));
        else if (key == "b_re") config.atom.b.real(to_double(key, value));
        else if (key == "b_im") config.atom.b.imag(to_double(key, value));
        else if (key == "g") config.g = to_double(key, value);
        else if (key == "omega") config.omega = to_double(key, value);
        else if (key == "gt_min") config.gt_min = to_double(key, value);
        else if (key == "gt_max") config.gt_max = to_double(key, value);
        else if (key == "gt_steps") config.gt_steps = static_cast<int>(to_long(key, value));
        else if (key == "eps_trunc") config.eps_trunc = to_double(key, value);
        else if (key == "resum") config.resum = to_bool(key, value);
        else if (key == "nu_max") config.nu_max = static_cast<int>(to_long(key, value));
        else if (key == "family")
            config.family = value == "poisson" ? ContinuationFamily::PoissonSpecialized
                          : value == "gaussian"
                              ? ContinuationFamily::GaussianContinuation
                              : throw ConfigError("family must be poisson or gaussian");
        else if (key == "quadrature_nu") config.quad_nus = to_int_list(key, value);
        else if (key == "out") config.out_path = value;
        else if (key == "seed") config.seed = static_cast<std::uint64_t>(to_long(key, value));
        else if (key == "plot") config.emit_plot = to_bool(key, value);
        else if (key == "gtf") config.g_tf = to_double(key, value);
        else if (key == "beta2") config.beta2 = to_double(key, value);
        else if (key == "design_n_max") config.design_n_max = static_cast<int>(to_long(key, value));
        else if (key == "cos_floor") config.cos_floor = to_double(key, value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (!(config.gt_min < config.gt_max))
        throw ConfigError("gt_min must be less than gt_max");
    if (config.gt_steps < 2) throw ConfigError("gt_steps must be >= 2");
    return config;
}

std::vector<std::string> config_metadata(const RunConfig& config,
                                         const std::string& command) {
    std::vector<std::string> lines;
    lines.push_back("jcpurity " + command + " v1");
    append_state_metadata(lines, "", config.state);
    if (config.atom.field_plus) append_state_metadata(lines, "plus_", *config.atom.field_plus);
    if (config.atom.field_minus)
        append_state_metadata(lines, "minus_", *config.atom.field_minus);
    lines.push_back("a_re=" + format_double(config.atom.a.real()));
    lines.push_back("a_im=" + format_double(config.atom.a.imag()));
    lines.push_back("b_re=" + format_double(config.atom.b.real()));
    lines.push_back("b_im=" + format_double(config.atom.b.imag()));
    lines.push_back("g=" + format_double(config.g));
    lines.push_back("omega=" + format_double(config.omega));
    lines.push_back("gt_min=" + format_double(config.gt_min));
    lines.push_back("gt_max=" + format_double(config.gt_max));
    lines.push_back("gt_steps=" + std::to_string(config.gt_steps));
    lines.push_back("eps_trunc=" + format_double(config.eps_trunc));
    lines.push_back(std::string("resum=") + (config.resum ? "1" : "0"));
    if (config.resum) {
        lines.push_back("nu_max=" + std::to_string(config.nu_max));
        if (config.family)
            lines.push_back(std::string("family=") +
                            (*config.family == ContinuationFamily::PoissonSpecialized
                                 ? "poisson"
                                 : "gaussian"));
        if (!config.quad_nus.empty()) {
            std::string list;
            for (std::size_t i = 0; i < config.quad_nus.size(); ++i)
                list += (i ? "," : "") + std::to_string(config.quad_nus[i]);
            lines.push_back("quadrature_nu=" + list);
        }
    }
    lines.push_back("seed=" + std::to_string(config.seed));
    return lines;
}

}  // namespace jc
