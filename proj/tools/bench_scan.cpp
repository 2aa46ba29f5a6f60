// Times the serial reference scan against the OpenMP scan on an identical
// grid and checks that the rows agree bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "jc/scan.hpp"

namespace {

double now_seconds() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

template <typename F>
double best_of(int reps, const F& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        double t0 = now_seconds();
        f();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    double nbar = argc > 1 ? std::atof(argv[1]) : 100.0;
    int steps = argc > 2 ? std::atoi(argv[2]) : 20000;
    int reps = argc > 3 ? std::atoi(argv[3]) : 3;

    const double gt_max = 2.2 * 2.0 * std::numbers::pi * std::sqrt(nbar);
    jc::FieldState field = jc::coherent_state(nbar, 0.0);
    jc::JointState state0 =
        jc::initial_joint(jc::AtomAmplitudes{}, field, field, 1.0, nbar);
    jc::ResumModel model = jc::model_from_state(
        field, jc::ContinuationFamily::PoissonSpecialized,
        jc::default_nu_max(nbar, gt_max), 1.0);
    jc::ScanRequest request{std::move(state0), 0.0, gt_max, steps, model, {}};

    std::vector<jc::ScanRow> serial_rows;
    std::vector<jc::ScanRow> parallel_rows;
    double t_serial = best_of(reps, [&] { serial_rows = jc::scan_serial(request); });
    double t_parallel = best_of(reps, [&] { parallel_rows = jc::scan_parallel(request); });

    int mismatches = 0;
    for (std::size_t i = 0; i < serial_rows.size(); ++i) {
        if (serial_rows[i].purity_exact != parallel_rows[i].purity_exact ||
            serial_rows[i].purity_resummed != parallel_rows[i].purity_resummed ||
            serial_rows[i].p_plus != parallel_rows[i].p_plus)
            ++mismatches;
    }

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp single
    threads = omp_get_num_threads();
#endif

    std::printf("scan benchmark: nbar = %g, %d grid points, best of %d\n", nbar, steps,
                reps);
    std::printf("  serial reference : %8.1f ms\n", 1e3 * t_serial);
    std::printf("  openmp (%2d thr)  : %8.1f ms\n", threads, 1e3 * t_parallel);
    std::printf("  speedup          : %8.2fx\n", t_serial / t_parallel);
    std::printf("  row mismatches   : %d\n", mismatches);
    return mismatches == 0 ? 0 : 1;
}
