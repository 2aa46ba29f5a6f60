#include "jc/commands.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "jc/errors.hpp"

namespace jc {

namespace {

ScanRequest scan_request(const RunConfig& config) {
    JointState state0 = build_joint(config);
    std::optional<ResumModel> model;
    if (config.resum) {
        const StateSpec& spec = config.atom.field_plus.value_or(config.state);
        model = build_model(config, build_state(spec, config.eps_trunc));
    }
    return ScanRequest{std::move(state0), config.gt_min, config.gt_max,
                       config.gt_steps, model, config.quad_nus};
}

}  // namespace

ScanTable run_scan(const RunConfig& config) {
    ScanRequest request = scan_request(config);
    ScanTable table;
    table.metadata = config_metadata(config, "scan");
    if (request.resum)
        table.metadata.push_back("nu_max_resolved=" +
                                 std::to_string(request.resum->nu_max));
    table.rows = scan_parallel(request);
    return table;
}

CompareReport run_compare(const RunConfig& config) {
    RunConfig with_resum = config;
    with_resum.resum = true;
    ScanRequest request = scan_request(with_resum);
    const ResumModel& model = *request.resum;

    CompareReport report{};
    for (int nu = 1; nu <= model.nu_max; ++nu)
        report.validity.push_back(validity(model, nu));

    ScanRequest plain = request;
    plain.quad_nus.clear();
    std::vector<ScanRow> rows = scan_parallel(plain);
    double sum = 0.0;
    for (const ScanRow& row : rows) {
        double dev = std::abs(row.purity_exact - *row.purity_resummed);
        sum += dev;
        if (dev >= report.max_abs_dev) {
            report.max_abs_dev = dev;
            report.gt_at_max = row.gt;
        }
    }
    report.mean_abs_dev = sum / rows.size();

    report.quadrature_used = !request.quad_nus.empty();
    if (report.quadrature_used) {
        std::vector<ScanRow> quad_rows = scan_parallel(request);
        double quad_sum = 0.0;
        for (const ScanRow& row : quad_rows) {
            double dev = std::abs(row.purity_exact - *row.purity_resummed);
            quad_sum += dev;
            if (dev >= report.max_abs_dev_quad) {
                report.max_abs_dev_quad = dev;
                report.gt_at_max_quad = row.gt;
            }
        }
    }
    return report;
}

void print_compare_report(std::ostream& out, const CompareReport& report) {
    out << "max |exact - resummed| = " << format_double(report.max_abs_dev)
        << " at gt = " << format_double(report.gt_at_max) << '\n'
        << "mean |exact - resummed| = " << format_double(report.mean_abs_dev) << '\n';
    for (const ValidityReport& v : report.validity) {
        out << "lobe nu=" << v.nu << ": lower_ratio = " << format_double(v.lower_ratio)
            << ", upper_ratio = " << format_double(v.upper_ratio)
            << (v.ok ? " (peakedness ok)" : " (peakedness FAILS; consider --quadrature-nu)")
            << '\n';
    }
    if (report.quadrature_used) {
        out << "with quadrature lobes: max |exact - resummed| = "
            << format_double(report.max_abs_dev_quad)
            << " at gt = " << format_double(report.gt_at_max_quad) << '\n';
    }
}

DesignOutput run_design(const RunConfig& config) {
    DesignResult result = design_distribution(config.g_tf, config.beta2,
                                              config.design_n_max, config.cos_floor);
    RunConfig forward = config;
    forward.state.kind = StateKind::Custom;
    forward.atom = AtomSpec{};
    forward.gt_min = 0.0;
    forward.gt_max = 2.0 * config.g_tf;
    forward.resum = false;
    forward.quad_nus.clear();

    JointState state0 = initial_joint(AtomAmplitudes{}, result.state, result.state,
                                      config.g, config.omega);
    ScanRequest request{std::move(state0), forward.gt_min, forward.gt_max,
                        forward.gt_steps, std::nullopt, {}};
    DesignOutput output{std::move(result), {}};
    output.forward_scan.metadata = config_metadata(forward, "design");
    output.forward_scan.metadata.push_back("gtf=" + format_double(config.g_tf));
    output.forward_scan.metadata.push_back("beta2=" + format_double(config.beta2));
    output.forward_scan.metadata.push_back("design_n_max=" +
                                           std::to_string(config.design_n_max));
    output.forward_scan.metadata.push_back("cos_floor=" + format_double(config.cos_floor));
    output.forward_scan.rows = scan_parallel(request);
    return output;
}

DisentangleReport run_disentangle(const RunConfig& config) {
    JointState state0 = build_joint(config);
    const double n_bar = marginal_mean(state0);
    const double t0 = std::numbers::pi * std::sqrt(n_bar + 1.0) / config.g;
    DisentangledPrediction prediction = predicted_disentangled(state0, t0);
    JointState evolved = evolve(state0, t0);
    DisentangleReport report;
    report.fidelity_value = fidelity(prediction, evolved);
    report.purity_at_t0 = purity(atom_density(evolved));
    report.t0 = t0;
    report.n_bar = n_bar;
    report.atom_plus = prediction.atom_plus;
    report.atom_minus = prediction.atom_minus;
    return report;
}

void print_disentangle_report(std::ostream& out, const DisentangleReport& report) {
    out << "t0 = " << format_double(report.t0)
        << ", n_bar = " << format_double(report.n_bar) << '\n'
        << "fidelity to product prediction = " << format_double(report.fidelity_value)
        << '\n'
        << "purity at t0 = " << format_double(report.purity_at_t0) << '\n'
        << "predicted atom factor: (" << format_double(report.atom_plus.real()) << ", "
        << format_double(report.atom_plus.imag()) << ") |+> + ("
        << format_double(report.atom_minus.real()) << ", "
        << format_double(report.atom_minus.imag()) << ") |->\n";
}

}  // namespace jc
