#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "jc/commands.hpp"
#include "jc/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// Options shared by the subcommands; only flags the user actually passed
/// override the config file.
struct Cli {
    std::string config_path;
    std::map<std::string, std::string> overrides;

    void add_common(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key=value config file");
        add_kv(cmd, "--state", "state", "coherent|cat|squeezed|gaussian|fock|custom");
        add_kv(cmd, "--nbar", "nbar", "mean photon number");
        add_kv(cmd, "--phase", "phase", "coherent phase slope");
        add_kv(cmd, "--phi", "phi", "cat relative phase");
        add_kv(cmd, "--r", "r", "squeezing parameter");
        add_kv(cmd, "--alpha", "alpha", "squeezed displacement");
        add_kv(cmd, "--sigma2", "sigma2", "gaussian variance");
        add_kv(cmd, "--slope", "slope", "gaussian phase slope");
        add_kv(cmd, "--fock-n", "fock_n", "fock index");
        add_kv(cmd, "--custom-path", "custom_path", "custom state table");
        add_kv(cmd, "--a-re", "a_re", "atom amplitude a, real part");
        add_kv(cmd, "--a-im", "a_im", "atom amplitude a, imaginary part");
        add_kv(cmd, "--b-re", "b_re", "atom amplitude b, real part");
        add_kv(cmd, "--b-im", "b_im", "atom amplitude b, imaginary part");
        add_kv(cmd, "--g", "g", "coupling constant");
        add_kv(cmd, "--omega", "omega", "mode frequency");
        add_kv(cmd, "--gt-min", "gt_min", "grid start (dimensionless gt)");
        add_kv(cmd, "--gt-max", "gt_max", "grid end");
        add_kv(cmd, "--gt-steps", "gt_steps", "grid points");
        add_kv(cmd, "--eps-trunc", "eps_trunc", "truncation tolerance");
        add_kv(cmd, "--nu-max", "nu_max", "revival lobes kept (0 = auto)");
        add_kv(cmd, "--family", "family", "poisson|gaussian continuation");
        add_kv(cmd, "--quadrature-nu", "quadrature_nu", "comma list of quadrature lobes");
        add_kv(cmd, "--out", "out", "output path");
        add_kv(cmd, "--seed", "seed", "RNG seed");
        cmd->add_flag_callback("--resum", [this] { overrides["resum"] = "1"; },
                               "tabulate the resummed purity as well");
        cmd->add_flag_callback("--no-resum", [this] { overrides["resum"] = "0"; },
                               "disable the resummed column");
        cmd->add_flag_callback("--plot", [this] { overrides["plot"] = "1"; },
                               "emit a gnuplot script next to the CSV");
    }

    void add_design(CLI::App* cmd) {
        add_kv(cmd, "--gtf", "gtf", "target time g t_f");
        add_kv(cmd, "--beta2", "beta2", "recursion weight |beta|^2");
        add_kv(cmd, "--design-n-max", "design_n_max", "recursion length");
        add_kv(cmd, "--cos-floor", "cos_floor", "pole threshold on |cos|");
    }

    jc::RunConfig materialize() const {
        jc::KeyValues values;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw jc::ConfigError("cannot open config file " + config_path);
            values = jc::parse_config_file(in);
        }
        for (const auto& [key, value] : overrides) values[key] = value;
        return jc::config_from_map(values);
    }

private:
    void add_kv(CLI::App* cmd, const std::string& flag, std::string key,
                const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { overrides[key] = v; }, help);
    }
};

void write_file(const std::string& path, const auto& writer) {
    std::ofstream out(path);
    if (!out) throw jc::ConfigError("cannot open output file " + path);
    writer(out);
}

std::string default_out(const std::string& given, const char* fallback) {
    return given.empty() ? fallback : given;
}

int dispatch(const std::string& command, const jc::RunConfig& config) {
    if (command == "scan") {
        jc::ScanTable table = jc::run_scan(config);
        std::string path = default_out(config.out_path, "scan.csv");
        write_file(path, [&](std::ostream& o) { jc::write_scan_csv(o, table); });
        if (config.emit_plot)
            write_file(path + ".gp",
                       [&](std::ostream& o) { jc::write_plot_script(o, path); });
        std::cout << "wrote " << table.rows.size() << " rows to " << path << '\n';
        return 0;
    }
    if (command == "compare") {
        jc::CompareReport report = jc::run_compare(config);
        jc::print_compare_report(std::cout, report);
        return 0;
    }
    if (command == "design") {
        jc::DesignOutput output = jc::run_design(config);
        std::string path = default_out(config.out_path, "design.csv");
        write_file(path, [&](std::ostream& o) {
            jc::write_state_table(o, output.result.state);
        });
        std::string scan_path = path + ".scan.csv";
        write_file(scan_path, [&](std::ostream& o) {
            jc::write_scan_csv(o, output.forward_scan);
        });
        std::cout << "achieved purity at g t_f = " << jc::format_double(output.result.t_f)
                  << ": " << jc::format_double(output.result.achieved_purity) << '\n';
        if (!output.result.rejected_indices.empty()) {
            std::cout << "recursion poles at n =";
            for (int n : output.result.rejected_indices) std::cout << ' ' << n;
            std::cout << " (distribution truncated below the first pole)\n";
        }
        std::cout << "wrote distribution to " << path << " and forward scan to "
                  << scan_path << '\n';
        return 0;
    }
    if (command == "disentangle") {
        jc::DisentangleReport report = jc::run_disentangle(config);
        jc::print_disentangle_report(std::cout, report);
        return 0;
    }
    if (command == "state") {
        jc::FieldState state = jc::build_state(config.state, config.eps_trunc);
        std::string path = default_out(config.out_path, "state.csv");
        write_file(path, [&](std::ostream& o) { jc::write_state_table(o, state); });
        jc::FieldStats s = jc::stats(state);
        std::cout << "n_max = " << state.n_max() << ", mean = " << jc::format_double(s.mean)
                  << ", variance = " << jc::format_double(s.variance)
                  << ", wrote table to " << path << '\n';
        return 0;
    }
    throw jc::ConfigError("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jaynes-Cummings purity dynamics"};
    app.require_subcommand(1);

    Cli cli;
    std::string command;
    for (const char* name : {"scan", "compare", "design", "disentangle", "state"}) {
        CLI::App* cmd = app.add_subcommand(name);
        cli.add_common(cmd);
        if (std::string(name) == "design") cli.add_design(cmd);
        cmd->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        return dispatch(command, cli.materialize());
    } catch (const jc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const jc::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
