#include "jc/scan.hpp"

#include <cmath>
#include <exception>

#include "jc/design.hpp"
#include "jc/errors.hpp"

namespace jc {

namespace {

double grid_point(const ScanRequest& request, int i) {
    return request.gt_min +
           (request.gt_max - request.gt_min) * i / (request.steps - 1.0);
}

void check_request(const ScanRequest& request) {
    if (!(request.gt_min < request.gt_max))
        throw ConfigError("scan requires gt_min < gt_max");
    if (request.steps < 2) throw ConfigError("scan requires gt_steps >= 2");
}

}  // namespace

ScanRow scan_point(const ScanRequest& request, double gt) {
    const double t = gt / request.state0.g();
    AtomDensity rho = atom_density(evolve(request.state0, t));
    ScanRow row;
    row.gt = gt;
    row.purity_exact = purity(rho);
    row.p_plus = rho.p_plus;
    row.abs_c = std::abs(rho.coherence);
    row.entropy = entropy(rho);
    row.cs_gap = cauchy_schwarz_gap(rho);
    row.validity_flags = 0;
    if (request.resum) {
        const ResumModel& model = *request.resum;
        row.purity_resummed = request.quad_nus.empty()
                                  ? purity_resummed(model, gt)
                                  : purity_resummed_quad(model, gt, request.quad_nus);
        for (int nu = 1; nu <= model.nu_max && nu < 32; ++nu)
            if (!validity(model, nu).ok) row.validity_flags |= 1u << nu;
    }
    return row;
}

std::vector<ScanRow> scan_serial(const ScanRequest& request) {
    check_request(request);
    std::vector<ScanRow> rows(static_cast<std::size_t>(request.steps));
    for (int i = 0; i < request.steps; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = scan_point(request, grid_point(request, i));
        } catch (const Error& e) {
            throw Error("scan failed at gt = " + std::to_string(grid_point(request, i)) +
                        ": " + e.what());
        }
    }
    return rows;
}

std::vector<ScanRow> scan_parallel(const ScanRequest& request) {
    check_request(request);
    std::vector<ScanRow> rows(static_cast<std::size_t>(request.steps));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(request.steps));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < request.steps; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = scan_point(request, grid_point(request, i));
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (int i = 0; i < request.steps; ++i) {
        if (failures[static_cast<std::size_t>(i)]) {
            try {
                std::rethrow_exception(failures[static_cast<std::size_t>(i)]);
            } catch (const Error& e) {
                throw Error("scan failed at gt = " +
                            std::to_string(grid_point(request, i)) + ": " + e.what());
            }
        }
    }
    return rows;
}

}  // namespace jc
