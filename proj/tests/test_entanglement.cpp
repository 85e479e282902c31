#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "fmoent/entanglement.hpp"
#include "fmoent/reservoir.hpp"
#include "oracles.hpp"

using namespace fmoent;

namespace {

constexpr double kPureW4 = 0.59967936855888596;  // (sqrt3/2 + 1/3)/2

cplx random_amplitude(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(0.0, 1.0), phi(0.0, 2.0 * std::numbers::pi);
    return std::polar(std::sqrt(r(rng)), phi(rng));
}

void check_density(const CMatrix& rho) {
    CHECK(rho.hermiticity_error() <= 1e-12);
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
    CHECK(oracle::eigvalsh(rho).front() >= -1e-10);
}

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("enumerate_bipartitions") {
    const auto four = enumerate_bipartitions(4);
    CHECK(four.of_size(1).size() == 4);
    CHECK(four.of_size(2).size() == 3);
    CHECK(four.total() == 7);
    for (const auto& s : four.of_size(2)) CHECK(s.front() == 0);

    CHECK(enumerate_bipartitions(2).total() == 1);
    const auto six = enumerate_bipartitions(6);
    CHECK(six.of_size(1).size() == 6);
    CHECK(six.of_size(2).size() == 15);
    CHECK(six.of_size(3).size() == 10);
    CHECK(six.total() == 31);

    for (std::size_t n = 2; n <= kMaxBipartitionQubits; ++n) {
        const auto set = enumerate_bipartitions(n);
        CHECK(set.total() == (std::size_t{1} << (n - 1)) - 1);
        for (std::size_t m = 1; m <= n / 2; ++m)
            CHECK(set.of_size(m).size() == (2 * m == n ? binomial(n, m) / 2 : binomial(n, m)));
    }

    CHECK_THROWS_AS(enumerate_bipartitions(1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_bipartitions(13), std::invalid_argument);
    CHECK_THROWS_AS(four.of_size(3), std::out_of_range);
}

TEST_CASE("normalized_negativity") {
    const CMatrix vacuum = StateVector::basis(4, 0).density();
    CHECK(normalized_negativity(vacuum, 4, {0}) == 0.0);
    CHECK(normalized_negativity(vacuum, 4, {0, 1}) == 0.0);

    const CMatrix w = w_state(4).density();
    CHECK(normalized_negativity(w, 4, {2}) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    CHECK(normalized_negativity(w, 4, {0, 3}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    SUBCASE("side independent on random states") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix rho = oracle::random_density(4, rng);
            CHECK(std::abs(normalized_negativity(rho, 4, {1}) -
                           normalized_negativity(rho, 4, {0, 2, 3})) < 1e-10);
            CHECK(std::abs(normalized_negativity(rho, 4, {0, 2}) -
                           normalized_negativity(rho, 4, {1, 3})) < 1e-10);
        }
    }

    SUBCASE("rejects invalid input") {
        CHECK_THROWS_AS(normalized_negativity(w * cplx{2.0}, 4, {0}), std::invalid_argument);
        CMatrix skew = w;
        skew(0, 1) = 0.1;
        CHECK_THROWS_AS(normalized_negativity(skew, 4, {0}), std::invalid_argument);
        CHECK_THROWS_AS(normalized_negativity(w, 4, {}), std::invalid_argument);
        CHECK_THROWS_AS(normalized_negativity(w, 4, {0, 1, 2, 3}), std::invalid_argument);
        CHECK_THROWS_AS(normalized_negativity(w, 4, {4}), std::invalid_argument);
        CHECK_THROWS_AS(normalized_negativity(w, 3, {0}), std::invalid_argument);
    }
}

TEST_CASE("global_entanglement") {
    CHECK(global_entanglement(StateVector::basis(4, 0).density(), 4) == 0.0);

    const CMatrix w = w_state(4).density();
    const double oracle_w = oracle::global_negativity(w, 4);
    CHECK(oracle_w == doctest::Approx(kPureW4).epsilon(1e-12));
    CHECK(global_entanglement(w, 4) == doctest::Approx(oracle_w).epsilon(1e-10));

    const double s = 1.0 / std::sqrt(2.0);
    const CMatrix ghz = ghz_state(4, s, s).density();
    // every cut of a GHZ state has a single -1/2 eigenvalue: (1 + 1/3)/2
    CHECK(oracle::global_negativity(ghz, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(global_entanglement(ghz, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

    SUBCASE("matches the brute-force average on mixed W states") {
        std::mt19937_64 rng(17);
        for (std::size_t n : {2u, 3u, 4u, 5u})
            for (int trial = 0; trial < 4; ++trial) {
                const CMatrix rho = w_state_exciton_rho({n, random_amplitude(rng)});
                CHECK(std::abs(global_entanglement(rho, n) - oracle::global_negativity(rho, n)) < 1e-10);
            }
        const CMatrix rho = oracle::random_density(4, rng);
        CHECK(std::abs(global_entanglement(rho, 4) - oracle::global_negativity(rho, 4)) < 1e-10);
    }
}

TEST_CASE("W-state reductions") {
    const CMatrix w = w_state(4).density();
    const CMatrix vac = StateVector::basis(4, 0).density();
    CHECK(max_abs_diff(w_state_exciton_rho({4, 1.0}), w) < 1e-15);
    CHECK(max_abs_diff(w_state_exciton_rho({4, 0.0}), vac) == 0.0);
    CHECK(global_entanglement(w_state_exciton_rho({4, 0.0}), 4) == 0.0);
    CHECK(max_abs_diff(w_state_reservoir_rho({4, 1.0}), vac) == 0.0);
    CHECK(global_entanglement(w_state_reservoir_rho({4, 1.0}), 4) == 0.0);
    CHECK(max_abs_diff(w_state_reservoir_rho({4, 0.0}), w) < 1e-15);
    CHECK_THROWS_AS(w_state_exciton_rho({4, 1.1}), std::invalid_argument);

    SUBCASE("closed form equals the traced register") {
        std::mt19937_64 rng(23);
        for (std::size_t n : {2u, 3u, 4u, 5u})
            for (int trial = 0; trial < 5; ++trial) {
                const cplx u = random_amplitude(rng);
                const cplx v = std::sqrt(1.0 - std::norm(u)) * std::polar(1.0, double(trial));
                const CMatrix full = CMatrix::outer(oracle::w_register(n, u, v));
                std::vector<std::size_t> ex(n), res(n);
                std::iota(ex.begin(), ex.end(), 0);
                std::iota(res.begin(), res.end(), n);
                CHECK(max_abs_diff(w_state_exciton_rho({n, u}), oracle::partial_trace(full, 2 * n, ex)) < 1e-12);
                CHECK(max_abs_diff(w_state_reservoir_rho({n, u}), oracle::partial_trace(full, 2 * n, res)) < 1e-12);
            }
    }

    SUBCASE("exchange symmetry and phase independence") {
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 10; ++trial) {
            const cplx u = random_amplitude(rng);
            const double v = std::sqrt(1.0 - std::norm(u));
            const double ee = global_entanglement(w_state_exciton_rho({4, u}), 4);
            CHECK(std::abs(global_entanglement(w_state_reservoir_rho({4, u}), 4) -
                           global_entanglement(w_state_exciton_rho({4, v}), 4)) < 1e-12);
            CHECK(std::abs(global_entanglement(w_state_exciton_rho({4, std::abs(u)}), 4) - ee) < 1e-12);
        }
    }
}

TEST_CASE("x_state_rho") {
    const double a = 0.6, b = 0.8;
    const CMatrix r0 = x_state_rho({a, b, 1.0, 1.0});
    CHECK(r0(0, 0).real() == doctest::Approx(a * a));
    CHECK(r0(3, 3).real() == doctest::Approx(b * b));
    CHECK(r0(0, 3).real() == doctest::Approx(a * b));
    CHECK(r0(1, 1) == cplx{0.0});
    CHECK(r0(2, 2) == cplx{0.0});
    const std::vector<cplx> psi0 = {a, 0.0, 0.0, b};
    CHECK(max_abs_diff(r0, CMatrix::outer(psi0)) < 1e-15);

    CHECK_THROWS_AS(x_state_rho({0.5, 0.5, 1.0, 1.0}), std::invalid_argument);

    std::mt19937_64 rng(31);
    const auto p = ReservoirParams::from_half_width(1000.0, 40.0, 35.0);
    for (int trial = 0; trial < 20; ++trial) {
        const XStateParams xp{a, b, random_amplitude(rng), random_amplitude(rng)};
        const CMatrix rho = x_state_rho(xp);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-15);
        check_density(rho);
        const CMatrix global = x_state_global(xp).density();
        const std::size_t keep[] = {0, 1};
        CHECK(max_abs_diff(rho, oracle::partial_trace(global, 4, {0, 1})) < 1e-14);
        CHECK(max_abs_diff(rho, partial_trace(global, 4, keep)) < 1e-14);

        const cplx u = amplitude(p, 0.01 * trial);
        const CMatrix evolved = x_state_rho({a, b, u, u});
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (r != c && !(r + c == 3)) CHECK(evolved(r, c) == cplx{0.0});
    }
}

TEST_CASE("Meyer-Wallach") {
    CHECK(meyer_wallach_numeric(StateVector::basis(4, 0)) == 0.0);
    CHECK(meyer_wallach_numeric(kron(StateVector::basis(2, 1), StateVector::basis(1, 1))) == 0.0);
    for (std::size_t n : {2u, 3u, 5u}) {
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(meyer_wallach_numeric(ghz_state(n, s, s)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(meyer_wallach_numeric(x_state_global({0.0, 1.0, s, s})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(meyer_wallach_closed(0.0, 1.0, s) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(meyer_wallach_closed(1.0, 0.0, 0.3) == 0.0);
    CHECK(meyer_wallach_closed(0.6, 0.8, 1.0) == doctest::Approx(2 * 0.36 * 0.64));
    CHECK(meyer_wallach_closed(0.6, 0.8, std::polar(1.0, 0.4)) == doctest::Approx(2 * 0.36 * 0.64));

    CHECK_THROWS_AS(meyer_wallach_numeric(StateVector(1, {1.0, 1.0})), std::invalid_argument);

    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx u = random_amplitude(rng);
        CHECK(std::abs(meyer_wallach_numeric(x_state_global({0.0, 1.0, u, u})) -
                       meyer_wallach_closed(0.0, 1.0, u)) < 1e-12);
        std::uniform_real_distribution<double> ang(0.0, std::numbers::pi / 2);
        const double th = ang(rng);
        const double a = std::cos(th), b = std::sin(th);
        CHECK(std::abs(meyer_wallach_numeric(x_state_global({a, b, u, u})) -
                       meyer_wallach_direct(a, b, u)) < 1e-12);
        // the phase of u drops out of every measure
        CHECK(std::abs(meyer_wallach_numeric(x_state_global({a, b, std::abs(u), std::abs(u)})) -
                       meyer_wallach_numeric(x_state_global({a, b, u, u}))) < 1e-12);
    }
}
