#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "jc/commands.hpp"
#include "jc/csv.hpp"
#include "jc/errors.hpp"
#include "jc/run_config.hpp"
#include "jc/scan.hpp"

using namespace jc;

namespace {

ScanRequest small_request(bool with_resum) {
    FieldState f = coherent_state(16.0, 0.0);
    JointState s0 = initial_joint(AtomAmplitudes{}, f, f, 1.0, 16.0);
    std::optional<ResumModel> model;
    if (with_resum)
        model = model_from_state(f, ContinuationFamily::PoissonSpecialized, 3, 1.0);
    return ScanRequest{std::move(s0), 0.0, 30.0, 121, model, {}};
}

}  // namespace

TEST_CASE("scan: parallel evaluation reproduces the serial reference exactly") {
    ScanRequest request = small_request(true);
    std::vector<ScanRow> serial = scan_serial(request);
    std::vector<ScanRow> parallel = scan_parallel(request);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].gt == parallel[i].gt);
        CHECK(serial[i].purity_exact == parallel[i].purity_exact);
        CHECK(serial[i].purity_resummed == parallel[i].purity_resummed);
        CHECK(serial[i].p_plus == parallel[i].p_plus);
        CHECK(serial[i].abs_c == parallel[i].abs_c);
        CHECK(serial[i].entropy == parallel[i].entropy);
        CHECK(serial[i].cs_gap == parallel[i].cs_gap);
        CHECK(serial[i].validity_flags == parallel[i].validity_flags);
    }
}

TEST_CASE("scan: repeated runs are deterministic") {
    ScanRequest request = small_request(false);
    std::vector<ScanRow> a = scan_parallel(request);
    std::vector<ScanRow> b = scan_parallel(request);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].purity_exact == b[i].purity_exact);
}

TEST_CASE("scan: purity columns stay inside the qubit bounds") {
    for (const ScanRow& row : scan_parallel(small_request(true))) {
        CHECK(row.purity_exact >= 0.5 - 1e-9);
        CHECK(row.purity_exact <= 1.0 + 1e-9);
        REQUIRE(row.purity_resummed.has_value());
        CHECK(*row.purity_resummed >= 0.5 - 1e-9);
        CHECK(*row.purity_resummed <= 1.0 + 1e-9);
        CHECK(row.cs_gap >= -1e-12);
    }
}

TEST_CASE("scan: out-of-window states keep exact bounds, resummed reported as-is") {
    // A narrow squeezed distribution fails the lobe-1 peakedness window; its
    // early-time resummed column can overshoot 1 by ~1e-2 and is reported
    // rather than clamped, with the validity flag set on every row.
    FieldState f = squeezed_coherent_state(0.75, 14.72);
    JointState s0 = initial_joint(AtomAmplitudes{}, f, f, 1.0, 49.0);
    ResumModel m = model_from_state(f, ContinuationFamily::GaussianContinuation, 4, 1.0);
    ScanRequest request{std::move(s0), 0.0, 50.0, 500, m, {}};
    double worst_over = 0.0;
    for (const ScanRow& row : scan_parallel(request)) {
        CHECK(row.purity_exact >= 0.5 - 1e-9);
        CHECK(row.purity_exact <= 1.0 + 1e-9);
        CHECK(row.cs_gap >= -1e-12);
        CHECK((row.validity_flags & 2u) != 0);  // lobe 1 flagged
        worst_over = std::max(worst_over, *row.purity_resummed - 1.0);
    }
    CHECK(worst_over < 0.02);
}

TEST_CASE("scan: grid validation") {
    ScanRequest bad = small_request(false);
    bad.steps = 1;
    CHECK_THROWS_AS(scan_parallel(bad), ConfigError);
    bad.steps = 100;
    bad.gt_max = bad.gt_min;
    CHECK_THROWS_AS(scan_parallel(bad), ConfigError);
}

TEST_CASE("csv: write/read round-trip is byte identical") {
    ScanTable table;
    table.metadata = {"jcpurity scan v1", "state=coherent", "nbar=16"};
    table.rows = scan_parallel(small_request(true));

    std::stringstream first;
    write_scan_csv(first, table);
    ScanTable reread = read_scan_csv(first);
    std::stringstream second;
    write_scan_csv(second, reread);
    CHECK(first.str() == second.str());
    CHECK(reread.metadata == table.metadata);
    REQUIRE(reread.rows.size() == table.rows.size());
    CHECK(reread.rows[7].purity_exact == table.rows[7].purity_exact);
}

TEST_CASE("csv: empty resummed column survives the round trip") {
    ScanTable table;
    table.rows = scan_parallel(small_request(false));
    std::stringstream out;
    write_scan_csv(out, table);
    ScanTable back = read_scan_csv(out);
    CHECK_FALSE(back.rows.at(3).purity_resummed.has_value());
}

TEST_CASE("csv: malformed input is rejected") {
    std::stringstream missing_header("1,2,3\n");
    CHECK_THROWS_AS(read_scan_csv(missing_header), ConfigError);
}

TEST_CASE("config: file parsing, overrides, and validation") {
    std::stringstream file(
        "# comment line\n"
        "state = coherent\n"
        "nbar = 25\n"
        "gt_max=40   # trailing comment\n"
        "resum=1\n");
    KeyValues values = parse_config_file(file);
    CHECK(values.at("state") == "coherent");
    CHECK(values.at("nbar") == "25");
    CHECK(values.at("gt_max") == "40");

    values["nbar"] = "36";  // flag-style override wins
    RunConfig config = config_from_map(values);
    CHECK(config.state.nbar == 36.0);
    CHECK(config.resum);
    CHECK(config.gt_max == 40.0);

    CHECK_THROWS_AS(config_from_map({{"state", "nosuch"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"bogus_key", "1"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"gt_steps", "1"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"nbar", "abc"}}), ConfigError);
}

TEST_CASE("config: entangled field specs use prefixed keys") {
    RunConfig config = config_from_map({{"a_re", "0.70710678118654752"},
                                        {"b_re", "0.70710678118654752"},
                                        {"plus_state", "coherent"},
                                        {"plus_nbar", "49"},
                                        {"minus_state", "coherent"},
                                        {"minus_nbar", "49"},
                                        {"minus_phase", "0.1"}});
    REQUIRE(config.atom.field_plus.has_value());
    REQUIRE(config.atom.field_minus.has_value());
    CHECK(config.atom.field_minus->phase == 0.1);
    JointState joint = build_joint(config);
    CHECK(std::abs(joint.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("commands: scan emits rows with metadata") {
    RunConfig config = config_from_map(
        {{"nbar", "16"}, {"gt_max", "20"}, {"gt_steps", "101"}, {"resum", "1"}});
    ScanTable table = run_scan(config);
    CHECK(table.rows.size() == 101);
    bool saw_state = false;
    for (const std::string& line : table.metadata)
        if (line == "state=coherent") saw_state = true;
    CHECK(saw_state);
}

TEST_CASE("commands: compare reports figure-level agreement for a coherent field") {
    RunConfig config = config_from_map(
        {{"nbar", "49"}, {"gt_max", "50"}, {"gt_steps", "501"}});
    CompareReport report = run_compare(config);
    CHECK(report.max_abs_dev < 0.02);
    CHECK(report.mean_abs_dev < report.max_abs_dev);
    REQUIRE_FALSE(report.validity.empty());
    CHECK_FALSE(report.validity.front().ok);  // nbar = 49 sits below the window

    std::stringstream text;
    print_compare_report(text, report);
    CHECK(text.str().find("max |exact - resummed|") != std::string::npos);
}

TEST_CASE("commands: compare flags a too-wide distribution on every lobe") {
    // upper peakedness bound fails when sigma2 = nbar^2 / 2
    RunConfig config = config_from_map({{"state", "gaussian"},
                                        {"nbar", "20"},
                                        {"sigma2", "200"},
                                        {"gt_min", "0"},
                                        {"gt_max", "30"},
                                        {"gt_steps", "31"}});
    CompareReport report = run_compare(config);
    for (const ValidityReport& v : report.validity) {
        // fitted moments of the n >= 0 truncation keep the ratio far under 10
        CHECK(v.upper_ratio < 4.0);
        CHECK_FALSE(v.ok);
    }
}

TEST_CASE("scan: point failures carry the offending grid point") {
    // Hand-built state with mass parked on the top doublet fails in evolve;
    // the scan must say where.
    std::vector<Complex> plus(4, Complex{});
    std::vector<Complex> minus(5, Complex{});
    plus[3] = 1.0;
    ScanRequest bad{JointState(std::move(plus), std::move(minus), 1.0, 1.0),
                    0.0, 2.0, 5, std::nullopt, {}};
    try {
        scan_parallel(bad);
        FAIL("expected the scan to fail");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("gt = ") != std::string::npos);
    }
}

TEST_CASE("commands: design output carries the forward scan") {
    RunConfig config = config_from_map({{"gtf", "3.3"}, {"gt_steps", "101"}});
    DesignOutput output = run_design(config);
    CHECK(output.result.achieved_purity > 0.999);
    CHECK(output.forward_scan.rows.size() == 101);
    CHECK(output.forward_scan.rows.back().gt == doctest::Approx(6.6));
}

TEST_CASE("commands: disentangle reports fidelity and purity at t0") {
    RunConfig config = config_from_map({{"a_re", "0.70710678118654752"},
                                        {"b_re", "0.70710678118654752"},
                                        {"nbar", "49"}});
    DisentangleReport report = run_disentangle(config);
    CHECK(report.fidelity_value > 0.95);
    CHECK(report.purity_at_t0 > 0.95);
    CHECK(report.t0 == doctest::Approx(22.2144).epsilon(1e-3));
}

TEST_CASE("commands: disentangle reduces to the product scenario for a = 1") {
    RunConfig config = config_from_map({{"nbar", "49"}});
    DisentangleReport report = run_disentangle(config);
    CHECK(report.fidelity_value > 0.95);
}

TEST_CASE("commands: disentangle propagates the peak guard") {
    RunConfig config = config_from_map({{"a_re", "0.70710678118654752"},
                                        {"b_re", "0.70710678118654752"},
                                        {"plus_state", "coherent"},
                                        {"plus_nbar", "49"},
                                        {"minus_state", "coherent"},
                                        {"minus_nbar", "100"}});
    CHECK_THROWS_AS(run_disentangle(config), PeakMismatch);
}

TEST_CASE("plot script references the csv") {
    std::stringstream out;
    write_plot_script(out, "run.csv");
    CHECK(out.str().find("run.csv") != std::string::npos);
    CHECK(out.str().find("plot") != std::string::npos);
}
