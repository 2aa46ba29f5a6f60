#pragma once

#include <iosfwd>
#include <string>

#include "jc/csv.hpp"
#include "jc/design.hpp"
#include "jc/run_config.hpp"
#include "jc/scan.hpp"

namespace jc {

/// Grid scan of exact (and optionally resummed) purity; rows carry the
/// diagnostics of the CSV schema.
ScanTable run_scan(const RunConfig& config);

struct CompareReport {
    double max_abs_dev;
    double mean_abs_dev;
    double gt_at_max;
    std::vector<ValidityReport> validity;  // one entry per lobe 1..nu_max
    // Deviations after substituting quadrature lobes, when requested.
    bool quadrature_used;
    double max_abs_dev_quad;
    double gt_at_max_quad;
};

CompareReport run_compare(const RunConfig& config);
void print_compare_report(std::ostream& out, const CompareReport& report);

struct DesignOutput {
    DesignResult result;
    ScanTable forward_scan;  // purity over [0, 2 g_tf] showing the engineered peak
};

DesignOutput run_design(const RunConfig& config);

struct DisentangleReport {
    double fidelity_value;
    double purity_at_t0;
    double t0;
    double n_bar;
    Complex atom_plus;
    Complex atom_minus;
};

DisentangleReport run_disentangle(const RunConfig& config);
void print_disentangle_report(std::ostream& out, const DisentangleReport& report);

}  // namespace jc
