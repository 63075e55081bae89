#include "wqed/core.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace wqed;

TEST_CASE("make_grid produces endpoints plus midpoint")
{
    const FrequencyGrid grid = make_grid(0.0, 5.0, 3);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0] == -5.0);
    CHECK(grid[1] == 0.0);
    CHECK(grid[2] == 5.0);
    CHECK(grid.uniform());
}

TEST_CASE("make_grid spans the detuning axis of a scattering figure")
{
    const FrequencyGrid grid = make_grid(0.0, 10.0, 1001);
    REQUIRE(grid.size() == 1001);
    CHECK(grid.front() == -10.0);
    CHECK(grid.back() == 10.0);
    CHECK(grid[500] == 0.0);
}

TEST_CASE("make_grid covers a full lattice band")
{
    const double omega_c = 7.5;
    const double xi = 0.75;
    const FrequencyGrid grid = make_grid(omega_c, 2.0 * xi, 101, Frame::Absolute);
    CHECK(grid.front() == doctest::Approx(omega_c - 2.0 * xi));
    CHECK(grid.back() == doctest::Approx(omega_c + 2.0 * xi));
    CHECK(grid.frame() == Frame::Absolute);
}

TEST_CASE("make_grid rejects bad input")
{
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, -1.0, 10), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(make_grid(nan, 1.0, 10), std::invalid_argument);
}

TEST_CASE("grids are strictly increasing")
{
    const FrequencyGrid grid = make_grid(3.0, 2.0, 57);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    {
        CHECK(grid[i] < grid[i + 1]);
    }
    CHECK_THROWS_AS(FrequencyGrid({1.0, 1.0, 2.0}, Frame::Absolute), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid({2.0, 1.0}, Frame::Absolute), std::invalid_argument);
}

TEST_CASE("validate accepts a symmetric lossless emitter")
{
    EmitterWaveguideParams params;
    params.gamma_right = 1.0;
    params.gamma_left = 1.0;
    CHECK(!validate(params));
}

TEST_CASE("validate reports the offending field first")
{
    EmitterWaveguideParams params;
    params.gamma_right = -1.0;
    const auto violation = validate(params);
    REQUIRE(violation.has_value());
    CHECK(violation->field == "gamma_right");
    CHECK(violation->message == "gamma_right negative");
}

TEST_CASE("validate rejects a hopping-free lattice")
{
    CrwParams params;
    params.xi = 0.0;
    const auto violation = validate(params);
    REQUIRE(violation.has_value());
    CHECK(violation->field == "xi");
    CHECK(violation->message == "xi must be positive");
}

TEST_CASE("validate rejects non-finite cavity rates")
{
    CavityParams params;
    params.g = std::numeric_limits<double>::infinity();
    const auto violation = validate(params);
    REQUIRE(violation.has_value());
    CHECK(violation->field == "g");
}

TEST_CASE("spectral response sanity bound")
{
    const FrequencyGrid grid = make_grid(0.0, 1.0, 2);
    SpectralResponse ok{grid, {Complex{0.6, 0.0}, Complex{1.0, 0.0}},
                        {Complex{0.8, 0.0}, Complex{0.0, 0.0}}};
    CHECK(!validate(ok));

    SpectralResponse bad{grid, {Complex{1.0, 0.0}, Complex{1.0, 0.0}},
                         {Complex{0.1, 0.0}, Complex{0.0, 0.0}}};
    const auto violation = validate(bad);
    REQUIRE(violation.has_value());
}

TEST_CASE("frame names round-trip")
{
    for (Frame frame : {Frame::Absolute, Frame::DetuningFromEmitter, Frame::DetuningFromCavity})
    {
        const auto parsed = frame_from_string(to_string(frame));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == frame);
    }
    CHECK(!frame_from_string("rotating"));
}
