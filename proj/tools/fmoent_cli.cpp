// fmoent: exciton tables, parameter scans and oracle checks from the shell.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fmoent/fmo_model.hpp"
#include "fmoent/reservoir.hpp"
#include "fmoent/scan.hpp"
#include "fmoent/version.hpp"

namespace {

using namespace fmoent;

// Flags that mirror config keys; empty strings mean "not given".
struct FlagSettings {
    std::map<std::string, std::string> values;

    void add(CLI::App* cmd, const std::string& key, const std::string& help) {
        std::string names = "--" + key;
        if (key.find('_') != std::string::npos) {
            std::string dashed = key;
            for (char& c : dashed)
                if (c == '_') c = '-';
            names += ",--" + dashed;
        }
        cmd->add_option(names, values[key], help);
    }

    // Config values first, then every flag that was actually given.
    Settings merged(const std::string& config_path) const {
        Settings s;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open config file " + config_path);
            s = read_settings(in, config_path);
        }
        for (const auto& [k, v] : values)
            if (!v.empty()) s[k] = v;
        return s;
    }
};

int run_check(double t_max, double step, const std::string& kernel_name) {
    OracleOptions options;
    options.max_step_ps = step;
    if (kernel_name == "gamma_b")
        options.kernel = OracleKernel::gamma_b;
    else if (kernel_name != "consistent")
        throw std::invalid_argument("--kernel: expected 'consistent' or 'gamma_b'");

    const auto n = static_cast<std::size_t>(std::llround(t_max / step));
    std::vector<double> grid(n + 1);
    for (std::size_t k = 0; k <= n; ++k) grid[k] = t_max * static_cast<double>(k) / static_cast<double>(n);

    constexpr double kTolerance = 1e-6;
    double worst = 0.0;
    std::printf("gamma0_cm1,half_width_cm1,delta_cm1,max_abs_error\n");
    for (double g : {10.0, 1000.0})
        for (double hw : {20.0, 40.0})
            for (double d : {0.0, 100.0}) {
                const auto p = ReservoirParams::from_half_width(g, hw, d);
                const auto ode = amplitude_ode_oracle(p, grid, options);
                double err = 0.0;
                for (std::size_t k = 0; k < grid.size(); ++k)
                    err = std::max(err, std::abs(amplitude(p, grid[k]) - ode[k]));
                worst = std::max(worst, err);
                std::printf("%s,%s,%s,%.3e\n", format_number(g).c_str(), format_number(hw).c_str(),
                            format_number(d).c_str(), err);
            }
    std::printf("# max error %.3e (tolerance %.0e): %s\n", worst, kTolerance,
                worst < kTolerance ? "PASS" : "FAIL");
    return worst < kTolerance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement and fidelity dynamics of FMO excitonic qubits"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "Print version and physical constants");

    auto* table = app.add_subcommand("table", "Exciton energies and site amplitudes (CSV)");
    std::string table_dataset = "reng";
    std::string table_output = "-";
    table->add_option("--dataset", table_dataset,
                      "reng, lorenExpt, wend, or a site-energy file");
    table->add_option("--output,-o", table_output, "CSV destination, '-' for stdout");

    auto* scan = app.add_subcommand("scan", "Evaluate an observable on a parameter grid (CSV)");
    FlagSettings flags;
    std::string config_path;
    unsigned jobs = 1;
    scan->add_option("--config", config_path, "key = value config file; flags override it");
    flags.add(scan, "observable", "Observable to evaluate");
    flags.add(scan, "axis1", "Outer axis name:min:max:steps");
    flags.add(scan, "axis2", "Inner axis name:min:max:steps");
    flags.add(scan, "t", "Time (ps)");
    flags.add(scan, "gamma0", "Coupling strength (cm^-1)");
    flags.add(scan, "half_width", "Lorentzian half width (cm^-1)");
    flags.add(scan, "delta", "Detuning (cm^-1)");
    flags.add(scan, "a", "X-state coefficient a");
    flags.add(scan, "b", "X-state coefficient b");
    flags.add(scan, "n", "Qubit / party count");
    flags.add(scan, "dataset", "Site-energy dataset");
    flags.add(scan, "output", "CSV destination, '-' for stdout");
    flags.add(scan, "unit_conversion", "rad/ps per cm^-1");
    scan->add_option("--jobs,-j", jobs, "Worker threads (0 = hardware concurrency)");

    auto* check = app.add_subcommand("check", "Compare the closed-form amplitude with the ODE oracle");
    double t_max = 2.0, step = 1e-4;
    std::string kernel = "consistent";
    check->add_option("--t-max", t_max, "Upper end of the time grid (ps)");
    check->add_option("--step", step, "Grid spacing and maximum RK4 step (ps)");
    check->add_option("--kernel", kernel, "Oracle memory kernel: consistent | gamma_b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (show_version) {
            std::printf("fmoent %s\n", kVersion);
            std::printf("unit_conversion %.11g rad/ps per cm^-1 (2*pi*c, c = 0.0299792458 cm/ps)\n",
                        UnitSystem::kDefaultAngularConversion);
            return 0;
        }
        if (*table) {
            ScanSpec spec;
            spec.observable = Observable::exciton_table;
            spec.fixed.dataset = table_dataset;
            emit_csv(run_scan(spec), table_output);
            return 0;
        }
        if (*scan) {
            const ScanSpec spec = make_scan_spec(flags.merged(config_path));
            const unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
            emit_csv(run_scan(spec, workers), spec.output);
            return 0;
        }
        if (*check) return run_check(t_max, step, kernel);
        std::cout << app.help();
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fmoent: error: %s\n", e.what());
        return 1;
    }
}
