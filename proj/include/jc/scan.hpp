#pragma once

#include <optional>
#include <vector>

#include "jc/dynamics.hpp"
#include "jc/resummation.hpp"

namespace jc {

struct ScanRow {
    double gt;
    double purity_exact;
    std::optional<double> purity_resummed;
    double p_plus;
    double abs_c;
    double entropy;
    double cs_gap;
    unsigned validity_flags;  // bit nu set when lobe nu fails the peakedness window
};

struct ScanRequest {
    JointState state0;
    double gt_min;
    double gt_max;
    int steps;  // >= 2, grid endpoints included
    std::optional<ResumModel> resum;
    std::vector<int> quad_nus;  // lobes evaluated by quadrature instead of stationary phase
};

/// One fully evaluated grid point; rows are independent of each other.
ScanRow scan_point(const ScanRequest& request, double gt);

/// Serial reference evaluation of the grid, kept alongside the parallel
/// version for testing and benchmarking; both produce identical rows.
std::vector<ScanRow> scan_serial(const ScanRequest& request);

/// OpenMP evaluation of the same grid. Rows land at their grid index, so the
/// output order never depends on scheduling.
std::vector<ScanRow> scan_parallel(const ScanRequest& request);

}  // namespace jc
