#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fmoent/entanglement.hpp"
#include "fmoent/fidelity.hpp"
#include "fmoent/reservoir.hpp"
#include "fmoent/scan.hpp"

using namespace fmoent;

namespace {

Settings parse(const std::string& text) {
    std::istringstream in(text);
    return read_settings(in, "test.cfg");
}

std::string csv_of(const ScanResult& r) {
    std::ostringstream out;
    emit_csv(r, out);
    return out.str();
}

std::size_t line_count(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("config parsing") {
    const Settings s = parse("# demo\nobservable = delta_p  # trailing\n\n gamma0=500\n");
    CHECK(s.size() == 2);
    CHECK(s.at("gamma0") == "500");
    const ScanSpec spec = make_scan_spec(s);
    CHECK(spec.observable == Observable::delta_p);
    CHECK(spec.fixed.gamma0 == 500.0);
    CHECK(spec.fixed.half_width == 40.0);
    CHECK(spec.output == "-");

    CHECK_THROWS_WITH_AS(make_scan_spec(parse("gamma0 = 1\n")), "observable: required key is missing",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("observable = delta_p\ngama0 = 1\n"), "test.cfg:2: unknown key 'gama0'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t = 1\nt = 2\n"), "test.cfg:2: duplicate key 't'", std::invalid_argument);
    CHECK_THROWS_AS(parse("observable\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("observable =\n"), std::invalid_argument);

    auto spec_error = [](const std::string& text) {
        try {
            make_scan_spec(parse(text));
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(spec_error("observable = entropy\n").rfind("observable:", 0) == 0);
    CHECK(spec_error("observable = delta_p\naxis1 = t:0:1\n").rfind("axis1:", 0) == 0);
    CHECK(spec_error("observable = delta_p\naxis1 = x:0:1:5\n").rfind("axis1:", 0) == 0);
    CHECK(spec_error("observable = delta_p\naxis1 = t:0:1:1\n").rfind("axis1:", 0) == 0);
    CHECK(spec_error("observable = delta_p\naxis1 = t:0:1:5\naxis2 = t:0:1:5\n").rfind("axis2:", 0) == 0);
    CHECK(spec_error("observable = delta_p\naxis2 = t:0:1:5\n").rfind("axis2:", 0) == 0);
    CHECK(spec_error("observable = delta_p\ngamma0 = fast\n").rfind("gamma0:", 0) == 0);
    CHECK(spec_error("observable = delta_p\nhalf_width = 0\n").rfind("half_width:", 0) == 0);
    CHECK(spec_error("observable = q_closed\na = 0.5\nb = 0.5\n").rfind("a:", 0) == 0);
    CHECK(spec_error("observable = exciton_table\naxis1 = t:0:1:5\n").rfind("axis1:", 0) == 0);
    CHECK_THROWS_AS(load_config("/nonexistent/scan.cfg"), std::runtime_error);
}

TEST_CASE("axis grids") {
    const AxisRange r{Axis::t, 0.0, 1.0, 11};
    const auto v = r.values();
    REQUIRE(v.size() == 11);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 1.0);
    CHECK(v[5] == doctest::Approx(0.5));
}

TEST_CASE("run_scan") {
    SUBCASE("scalar point") {
        const auto r = run_scan(make_scan_spec(parse("observable = u_amplitude\nt = 0\n")));
        CHECK(r.header == std::vector<std::string>{"u_re", "u_im", "u_abs2"});
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0] == std::vector<double>{1.0, 0.0, 1.0});
        CHECK(line_count(csv_of(r)) == 2);
    }

    SUBCASE("two axes, outer slowest") {
        const auto spec = make_scan_spec(
            parse("observable = e_exciton\naxis1 = gamma0:10:1000:51\naxis2 = t:0:1:40\n"));
        const auto r = run_scan(spec);
        CHECK(r.header == std::vector<std::string>{"gamma0_cm1", "t_ps", "e_exciton"});
        REQUIRE(r.rows.size() == 51 * 40);
        CHECK(line_count(csv_of(r)) == 2041);
        CHECK(r.rows[0][0] == 10.0);
        CHECK(r.rows[1][0] == 10.0);
        CHECK(r.rows[1][1] == doctest::Approx(1.0 / 39.0));
        CHECK(r.rows[40][0] == doctest::Approx(10.0 + 990.0 / 50.0));
        const auto& last = r.rows.back();
        CHECK(last[0] == 1000.0);
        CHECK(last[1] == 1.0);
        const auto res = ReservoirParams::from_half_width(1000.0, 40.0);
        CHECK(last[2] == doctest::Approx(global_entanglement(w_state_exciton_rho({4, amplitude(res, 1.0)}), 4))
                             .epsilon(1e-12));

        SUBCASE("parallel evaluation matches serial") {
            CHECK(csv_of(run_scan(spec, 4)) == csv_of(r));
            CHECK(csv_of(run_scan(spec, 1)) == csv_of(r));
        }
    }

    SUBCASE("fidelity columns") {
        const auto r = run_scan(make_scan_spec(parse("observable = f_w_tele\naxis1 = t:0:0.5:6\n")));
        CHECK(r.header == std::vector<std::string>{"t_ps", "p_damp", "f_w_tele"});
        for (const auto& row : r.rows) CHECK(row[2] == doctest::Approx(f_w_teleport(row[1])));
    }

    SUBCASE("b sweep picks a from the normalization") {
        const auto r =
            run_scan(make_scan_spec(parse("observable = q_closed\nt = 0.1\naxis1 = b:0:1:5\n")));
        const cplx u = amplitude(ReservoirParams::from_half_width(1000.0, 40.0), 0.1);
        for (const auto& row : r.rows)
            CHECK(row[1] == doctest::Approx(meyer_wallach_closed(std::sqrt(1 - row[0] * row[0]), row[0], u)));
    }

    SUBCASE("n sweep") {
        const auto r = run_scan(make_scan_spec(parse("observable = f_ghz_tele\nt = 0.2\naxis1 = n:2:6:5\n")));
        REQUIRE(r.rows.size() == 5);
        CHECK(r.rows[2][0] == 4.0);
        CHECK_THROWS_AS(run_scan(make_scan_spec(parse("observable = e_exciton\nn = 11\n"))),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_scan_spec(parse("observable = e_exciton\naxis1 = n:2:3:3\n")),
                        std::invalid_argument);
    }

    SUBCASE("exciton table") {
        const auto r = run_scan(make_scan_spec(parse("observable = exciton_table\n")));
        REQUIRE(r.rows.size() == 7);
        CHECK(r.header.size() == 9);
        CHECK(r.header[2] == "bchl1");
        CHECK(std::abs(r.rows[0][1] - -24.0) < 1.0);
        CHECK_THROWS(run_scan(make_scan_spec(parse("observable = exciton_table\ndataset = nowhere.txt\n"))));
    }
}

TEST_CASE("CSV output") {
    const auto spec = make_scan_spec(parse("observable = u_amplitude\naxis1 = t:0:2:101\ndelta = 30\n"));
    const auto r = run_scan(spec);
    const std::string text = csv_of(r);
    CHECK(text == csv_of(run_scan(spec)));

    std::istringstream in(text);
    const auto back = parse_csv(in);
    CHECK(back.header == r.header);
    REQUIRE(back.rows.size() == r.rows.size());
    for (std::size_t k = 0; k < r.rows.size(); ++k)
        for (std::size_t c = 0; c < r.rows[k].size(); ++c)
            CHECK(std::abs(back.rows[k][c] - r.rows[k][c]) <= 1e-11 * std::max(1.0, std::abs(r.rows[k][c])));

    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");

    ScanResult quoted{{"a,b", "say \"hi\""}, {{1.0, 2.0}}};
    std::istringstream qin(csv_of(quoted));
    CHECK(parse_csv(qin).header == quoted.header);

    const auto path = std::filesystem::temp_directory_path() / "fmoent_scan_test.csv";
    emit_csv(r, path.string());
    std::ifstream file(path, std::ios::binary);
    std::stringstream content;
    content << file.rdbuf();
    CHECK(content.str() == text);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(emit_csv(r, std::string("/nonexistent/dir/out.csv")), std::runtime_error);
}
