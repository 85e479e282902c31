#pragma once

// Parameter scans over the library observables, their plain-text
// configuration format and CSV emission.
//
// Config files hold one `key = value` per line; `#` starts a comment. Keys:
//   observable  one of the Observable names below (required)
//   axis1/axis2 name:min:max:steps, name in {t, gamma0, half_width, delta, b, n}
//   t gamma0 half_width delta a b n unit_conversion   fixed parameter values
//   dataset     reng | lorenExpt | wend | path to a site-energy file
//   output      CSV destination ("-" for standard output)

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmoent/reservoir.hpp"

namespace fmoent {

enum class Observable {
    delta_p,
    e_exciton,
    e_reservoir,
    q_closed,
    q_numeric,
    f_ghz_tele,
    f_w_tele,
    f_ghz_split,
    f_w_split,
    exciton_table,
    u_amplitude,
};

enum class Axis { t, gamma0, half_width, delta, b, n };

std::string_view to_string(Observable o);
std::string_view to_string(Axis a);
std::optional<Observable> parse_observable(std::string_view name);
std::optional<Axis> parse_axis(std::string_view name);

struct AxisRange {
    Axis axis = Axis::t;
    double min = 0.0;
    double max = 0.0;
    std::size_t steps = 2;

    // Evenly spaced, both endpoints included.
    std::vector<double> values() const;
};

struct ScanParams {
    double t = 0.0;            // ps
    double gamma0 = 1000.0;    // cm^-1
    double half_width = 40.0;  // cm^-1
    double delta = 0.0;        // cm^-1
    std::optional<double> a;   // defaults to sqrt(1 - b^2)
    double b = 1.0;
    double n = 4.0;
    std::string dataset = "reng";
    UnitSystem units;
};

struct ScanSpec {
    Observable observable = Observable::u_amplitude;
    std::vector<AxisRange> axes;  // at most two, outer first
    ScanParams fixed;
    std::string output = "-";
};

struct ScanResult {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Raw key/value settings, as read from a config file or command-line flags.
using Settings = std::map<std::string, std::string>;

inline constexpr std::string_view kRequiredKeys[] = {"observable"};
inline constexpr std::string_view kKnownKeys[] = {
    "observable", "axis1", "axis2", "t",       "gamma0", "half_width",      "delta",
    "a",          "b",     "n",     "dataset", "output", "unit_conversion",
};

// Parses config text; errors carry `source:line:` prefixes.
Settings read_settings(std::istream& in, std::string_view source);

// Validates settings and builds a spec; errors name the offending key.
ScanSpec make_scan_spec(const Settings& settings);

ScanSpec load_config(const std::filesystem::path& path);

// Evaluates the observable on the grid (outer axis slowest). `workers` > 1
// evaluates grid points on a thread pool; the result does not depend on it.
ScanResult run_scan(const ScanSpec& spec, unsigned workers = 1);

// 12 significant digits.
std::string format_number(double x);

void emit_csv(const ScanResult& result, std::ostream& out);
// "-" writes to standard output. Throws std::runtime_error when the file
// cannot be written.
void emit_csv(const ScanResult& result, const std::string& destination);

ScanResult parse_csv(std::istream& in);

}  // namespace fmoent
