#include "fmoent/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fmoent/entanglement.hpp"
#include "fmoent/fidelity.hpp"
#include "fmoent/fmo_model.hpp"

namespace fmoent {

namespace {

constexpr std::pair<Observable, std::string_view> kObservableNames[] = {
    {Observable::delta_p, "delta_p"},         {Observable::e_exciton, "e_exciton"},
    {Observable::e_reservoir, "e_reservoir"}, {Observable::q_closed, "q_closed"},
    {Observable::q_numeric, "q_numeric"},     {Observable::f_ghz_tele, "f_ghz_tele"},
    {Observable::f_w_tele, "f_w_tele"},       {Observable::f_ghz_split, "f_ghz_split"},
    {Observable::f_w_split, "f_w_split"},     {Observable::exciton_table, "exciton_table"},
    {Observable::u_amplitude, "u_amplitude"},
};

constexpr std::pair<Axis, std::string_view> kAxisNames[] = {
    {Axis::t, "t"},         {Axis::gamma0, "gamma0"}, {Axis::half_width, "half_width"},
    {Axis::delta, "delta"}, {Axis::b, "b"},           {Axis::n, "n"},
};

std::string_view axis_column(Axis a) {
    switch (a) {
        case Axis::t: return "t_ps";
        case Axis::gamma0: return "gamma0_cm1";
        case Axis::half_width: return "half_width_cm1";
        case Axis::delta: return "delta_cm1";
        case Axis::b: return "b";
        case Axis::n: return "n";
    }
    return "?";
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(std::string_view key, const std::string& message) {
    throw std::invalid_argument(std::string(key) + ": " + message);
}

double parse_double(std::string_view key, const std::string& text) {
    const std::string s = trim(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        fail(key, "expected a finite number, got '" + std::string(text) + "'");
    return v;
}

AxisRange parse_axis_range(std::string_view key, const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
    if (parts.size() != 4) fail(key, "expected name:min:max:steps, got '" + text + "'");
    const auto axis = parse_axis(parts[0]);
    if (!axis) fail(key, "unknown axis '" + parts[0] + "' (t, gamma0, half_width, delta, b, n)");
    AxisRange r;
    r.axis = *axis;
    r.min = parse_double(key, parts[1]);
    r.max = parse_double(key, parts[2]);
    const double steps = parse_double(key, parts[3]);
    if (steps != std::floor(steps) || steps < 2.0)
        fail(key, "steps must be an integer >= 2, got '" + parts[3] + "'");
    r.steps = static_cast<std::size_t>(steps);
    if (!(r.max > r.min)) fail(key, "max must exceed min");
    return r;
}

SiteDataset resolve_dataset(const std::string& name) {
    for (auto& d : builtin_datasets())
        if (d.name == name) return d;
    return load_site_dataset(std::filesystem::path(name));
}

unsigned integral_count(double n, std::string_view key, unsigned lo, unsigned hi) {
    if (n != std::round(n) || n < lo || n > hi)
        fail(key, "n must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi) +
                      ", got " + format_number(n));
    return static_cast<unsigned>(n);
}

double resolved_a(const ScanParams& p, bool b_swept) {
    if (p.a && !b_swept) return *p.a;
    if (std::abs(p.b) > 1.0) fail("b", "|b| must not exceed 1, got " + format_number(p.b));
    return std::sqrt(1.0 - p.b * p.b);
}

std::vector<std::string> value_columns(Observable o) {
    switch (o) {
        case Observable::u_amplitude: return {"u_re", "u_im", "u_abs2"};
        case Observable::f_ghz_tele:
        case Observable::f_w_tele:
        case Observable::f_ghz_split:
        case Observable::f_w_split: return {"p_damp", std::string(to_string(o))};
        default: return {std::string(to_string(o))};
    }
}

std::vector<double> evaluate(Observable o, const ScanParams& p, bool b_swept) {
    const auto res = ReservoirParams::from_half_width(p.gamma0, p.half_width, p.delta);
    switch (o) {
        case Observable::u_amplitude: {
            const cplx u = amplitude(res, p.t, p.units);
            return {u.real(), u.imag(), std::norm(u)};
        }
        case Observable::delta_p: return {population_difference(res, p.t, p.units)};
        case Observable::e_exciton:
        case Observable::e_reservoir: {
            const WStateParams w{integral_count(p.n, "n", 2, 10), amplitude(res, p.t, p.units)};
            const CMatrix rho =
                o == Observable::e_exciton ? w_state_exciton_rho(w) : w_state_reservoir_rho(w);
            return {global_entanglement(rho, w.n_qubits)};
        }
        case Observable::q_closed:
            return {meyer_wallach_closed(resolved_a(p, b_swept), p.b, amplitude(res, p.t, p.units))};
        case Observable::q_numeric: {
            const cplx u = amplitude(res, p.t, p.units);
            return {meyer_wallach_numeric(x_state_global({resolved_a(p, b_swept), p.b, u, u}))};
        }
        case Observable::f_ghz_tele:
        case Observable::f_w_tele:
        case Observable::f_ghz_split:
        case Observable::f_w_split: {
            const Protocol proto = o == Observable::f_ghz_tele    ? Protocol::ghz_teleport
                                   : o == Observable::f_w_tele    ? Protocol::w_teleport
                                   : o == Observable::f_ghz_split ? Protocol::ghz_split
                                                                  : Protocol::w_split;
            const double damp = damping(res, p.t, p.units);
            return {damp, fidelity(proto, damp, integral_count(p.n, "n", 2, 1u << 20))};
        }
        case Observable::exciton_table: break;
    }
    throw std::logic_error("evaluate: unexpected observable");
}

void set_axis(ScanParams& p, Axis a, double v) {
    switch (a) {
        case Axis::t: p.t = v; break;
        case Axis::gamma0: p.gamma0 = v; break;
        case Axis::half_width: p.half_width = v; break;
        case Axis::delta: p.delta = v; break;
        case Axis::b: p.b = v; break;
        case Axis::n: p.n = v; break;
    }
}

std::string quote_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                fields.back() += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace

std::string_view to_string(Observable o) {
    for (const auto& [value, name] : kObservableNames)
        if (value == o) return name;
    return "?";
}

std::string_view to_string(Axis a) {
    for (const auto& [value, name] : kAxisNames)
        if (value == a) return name;
    return "?";
}

std::optional<Observable> parse_observable(std::string_view name) {
    for (const auto& [value, n] : kObservableNames)
        if (n == name) return value;
    return std::nullopt;
}

std::optional<Axis> parse_axis(std::string_view name) {
    for (const auto& [value, n] : kAxisNames)
        if (n == name) return value;
    return std::nullopt;
}

std::vector<double> AxisRange::values() const {
    std::vector<double> v(steps);
    for (std::size_t k = 0; k < steps; ++k)
        v[k] = k + 1 == steps ? max
                              : min + (max - min) * static_cast<double>(k) /
                                          static_cast<double>(steps - 1);
    return v;
}

Settings read_settings(std::istream& in, std::string_view source) {
    Settings settings;
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys))
            throw std::invalid_argument(where + "unknown key '" + key + "'");
        if (value.empty()) throw std::invalid_argument(where + "empty value for '" + key + "'");
        if (!settings.emplace(key, value).second)
            throw std::invalid_argument(where + "duplicate key '" + key + "'");
    }
    return settings;
}

ScanSpec make_scan_spec(const Settings& settings) {
    for (std::string_view key : kRequiredKeys)
        if (!settings.contains(std::string(key))) fail(key, "required key is missing");
    for (const auto& [key, value] : settings)
        if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys))
            fail(key, "unknown key");

    ScanSpec spec;
    const std::string& obs = settings.at("observable");
    const auto parsed = parse_observable(obs);
    if (!parsed) fail("observable", "unknown observable '" + obs + "'");
    spec.observable = *parsed;

    for (const char* key : {"axis1", "axis2"})
        if (auto it = settings.find(key); it != settings.end())
            spec.axes.push_back(parse_axis_range(key, it->second));
    if (settings.contains("axis2") && !settings.contains("axis1"))
        fail("axis2", "axis2 given without axis1");
    if (spec.axes.size() == 2 && spec.axes[0].axis == spec.axes[1].axis)
        fail("axis2", "both axes sweep '" + std::string(to_string(spec.axes[0].axis)) + "'");

    auto number = [&](const char* key, double& target) {
        if (auto it = settings.find(key); it != settings.end())
            target = parse_double(key, it->second);
    };
    ScanParams& f = spec.fixed;
    number("t", f.t);
    number("gamma0", f.gamma0);
    number("half_width", f.half_width);
    number("delta", f.delta);
    number("b", f.b);
    number("n", f.n);
    if (auto it = settings.find("a"); it != settings.end()) f.a = parse_double("a", it->second);
    number("unit_conversion", f.units.angular_conversion);
    if (auto it = settings.find("dataset"); it != settings.end()) f.dataset = it->second;
    if (auto it = settings.find("output"); it != settings.end()) spec.output = it->second;

    if (f.t < 0.0) fail("t", "time must be >= 0");
    if (f.gamma0 < 0.0) fail("gamma0", "must be >= 0");
    if (!(f.half_width > 0.0)) fail("half_width", "must be > 0");
    if (!(f.units.angular_conversion > 0.0)) fail("unit_conversion", "must be > 0");
    for (const auto& ax : spec.axes) {
        const char* key = &ax == &spec.axes[0] ? "axis1" : "axis2";
        switch (ax.axis) {
            case Axis::t:
                if (ax.min < 0.0) fail(key, "time must be >= 0");
                break;
            case Axis::gamma0:
                if (ax.min < 0.0) fail(key, "gamma0 must be >= 0");
                break;
            case Axis::half_width:
                if (!(ax.min > 0.0)) fail(key, "half_width must be > 0");
                break;
            case Axis::b:
                if (ax.min < -1.0 || ax.max > 1.0) fail(key, "b must lie in [-1, 1]");
                break;
            case Axis::n:
                for (double v : ax.values())
                    if (v != std::round(v)) fail(key, "n axis must produce integer values");
                break;
            case Axis::delta: break;
        }
    }
    if (spec.observable == Observable::exciton_table && !spec.axes.empty())
        fail("axis1", "exciton_table does not take axes");
    const bool b_swept = std::any_of(spec.axes.begin(), spec.axes.end(),
                                     [](const AxisRange& r) { return r.axis == Axis::b; });
    if (f.a && !b_swept && std::abs(*f.a * *f.a + f.b * f.b - 1.0) > 1e-12)
        fail("a", "a^2 + b^2 must equal 1");
    return spec;
}

ScanSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    return make_scan_spec(read_settings(in, path.string()));
}

ScanResult run_scan(const ScanSpec& spec, unsigned workers) {
    ScanResult result;
    if (spec.observable == Observable::exciton_table) {
        const auto table = exciton_table(build_hamiltonian(resolve_dataset(spec.fixed.dataset)));
        result.header = {"exciton", "energy_cm1"};
        for (std::size_t s = 0; s < kSites; ++s)
            result.header.push_back("bchl" + std::to_string(s + 1));
        for (std::size_t k = 0; k < kSites; ++k) {
            std::vector<double> row = {static_cast<double>(k + 1), table.energies[k]};
            for (std::size_t s = 0; s < kSites; ++s) row.push_back(table.amplitudes[s][k]);
            result.rows.push_back(std::move(row));
        }
        return result;
    }
    if (spec.axes.size() > 2) fail("axis", "at most two axes may be swept");

    std::vector<std::vector<double>> grids;
    std::size_t count = 1;
    for (const auto& ax : spec.axes) {
        result.header.emplace_back(axis_column(ax.axis));
        grids.push_back(ax.values());
        count *= ax.steps;
    }
    for (auto& c : value_columns(spec.observable)) result.header.push_back(std::move(c));
    const bool b_swept = std::any_of(spec.axes.begin(), spec.axes.end(),
                                     [](const AxisRange& r) { return r.axis == Axis::b; });

    result.rows.resize(count);
    auto compute = [&](std::size_t index) {
        ScanParams p = spec.fixed;
        std::vector<double> row;
        // outer axis varies slowest
        std::size_t rem = index;
        std::vector<double> coords(grids.size());
        for (std::size_t d = grids.size(); d-- > 0;) {
            coords[d] = grids[d][rem % grids[d].size()];
            rem /= grids[d].size();
        }
        for (std::size_t d = 0; d < grids.size(); ++d) {
            set_axis(p, spec.axes[d].axis, coords[d]);
            row.push_back(coords[d]);
        }
        for (double v : evaluate(spec.observable, p, b_swept)) row.push_back(v);
        result.rows[index] = std::move(row);
    };

    const unsigned n_workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (n_workers == 1) {
        for (std::size_t k = 0; k < count; ++k) compute(k);
        return result;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w)
        pool.emplace_back([&] {
            try {
                for (std::size_t k; !failed && (k = next.fetch_add(1)) < count;) compute(k);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return result;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void emit_csv(const ScanResult& result, std::ostream& out) {
    for (std::size_t k = 0; k < result.header.size(); ++k)
        out << (k ? "," : "") << quote_field(result.header[k]);
    out << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
        out << '\n';
    }
}

void emit_csv(const ScanResult& result, const std::string& destination) {
    if (destination == "-") {
        emit_csv(result, std::cout);
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("failed writing CSV to standard output");
        return;
    }
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + destination + "' for writing");
    emit_csv(result, out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing CSV to '" + destination + "'");
}

ScanResult parse_csv(std::istream& in) {
    ScanResult result;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: missing header");
    result.header = split_csv_line(line);
    for (int line_no = 2; std::getline(in, line); ++line_no) {
        const auto fields = split_csv_line(line);
        if (fields.size() != result.header.size())
            throw std::invalid_argument("parse_csv: line " + std::to_string(line_no) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(result.header.size()));
        std::vector<double> row;
        for (const auto& f : fields) row.push_back(parse_double("csv", f));
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace fmoent
