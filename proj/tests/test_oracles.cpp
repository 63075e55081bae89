#include "wqed/oracles.hpp"

#include "wqed/crw.hpp"

#include <doctest.h>

#include <cmath>

using namespace wqed;
using namespace wqed::oracle;

namespace
{

constexpr double kPi = 3.14159265358979323846;

CrwParams lattice(double g, double omega_e = 0.0)
{
    CrwParams params;
    params.omega_c = 0.0;
    params.xi = 1.0;
    params.g = g;
    params.omega_e = omega_e;
    return params;
}

} // namespace

TEST_CASE("resonant emitter blocks the chain completely")
{
    FiniteChainProblem problem;
    problem.n_sites = 401;
    problem.params = lattice(0.3);
    problem.k_in = kPi / 2.0;
    const ChainSolution sol = finite_chain_solve(problem);
    CHECK(std::abs(sol.t) < 1e-10);
    CHECK(std::abs(sol.r - Complex{-1.0, 0.0}) < 1e-10);
}

TEST_CASE("decoupled chain transmits with unit magnitude")
{
    FiniteChainProblem problem;
    problem.n_sites = 401;
    problem.params = lattice(0.0);
    problem.k_in = 1.1;
    const ChainSolution sol = finite_chain_solve(problem);
    CHECK(std::abs(std::abs(sol.t) - 1.0) < 1e-12);
    CHECK(std::abs(sol.r) < 1e-12);
}

TEST_CASE("chain solve matches the closed form across the band")
{
    const CrwParams params = lattice(0.35, 0.2);
    double max_dt = 0.0;
    double max_dr = 0.0;
    for (int i = 0; i < 21; ++i)
    {
        const double k = 0.05 * kPi + 0.90 * kPi * static_cast<double>(i) / 20.0;
        FiniteChainProblem problem;
        problem.n_sites = 401;
        problem.params = params;
        problem.k_in = k;
        const ChainSolution sol = finite_chain_solve(problem);
        const Amplitudes closed = crw::amplitudes(params, k);
        max_dt = std::max(max_dt, std::abs(sol.t - closed.t));
        max_dr = std::max(max_dr, std::abs(sol.r - closed.r));
    }
    CHECK(max_dt < 1e-8);
    CHECK(max_dr < 1e-8);
}

TEST_CASE("two-emitter chain regression values")
{
    // Two identical emitters (g = 0.3, omega_e - omega_c = 0.3) ten sites
    // apart, probed at k = pi/2. Recorded from the first build; the solve
    // lands on the exact rationals t = (100 + 30i)/109, r = (-9 + 30i)/109.
    FiniteChainProblem problem;
    problem.n_sites = 401;
    problem.params = lattice(0.3, 0.3);
    problem.attachments = {{0, 0.3, 0.3}, {10, 0.3, 0.3}};
    problem.k_in = kPi / 2.0;
    const ChainSolution sol = finite_chain_solve(problem);
    CHECK(std::abs(sol.t - Complex{0.91743119266055373, 0.27522935779814112}) < 1e-10);
    CHECK(std::abs(sol.r - Complex{-0.082568807339442954, 0.27522935779816549}) < 1e-10);
    CHECK(std::abs(std::norm(sol.t) + std::norm(sol.r) - 1.0) < 1e-12);

    // Resonant pair: total reflection.
    problem.params = lattice(0.3, 0.0);
    problem.attachments = {{0, 0.3, 0.0}, {10, 0.3, 0.0}};
    const ChainSolution resonant = finite_chain_solve(problem);
    CHECK(std::abs(resonant.t) < 1e-10);
    CHECK(std::abs(resonant.r - Complex{-1.0, 0.0}) < 1e-10);
}

TEST_CASE("chain answers are length independent")
{
    // The plane-wave boundary rows make the discretization exact, so the
    // {101, 201, 401, 801} ladder agrees to roundoff rather than converging.
    const CrwParams params = lattice(0.35, 0.2);
    Complex previous{};
    bool first = true;
    for (int n : {101, 201, 401, 801})
    {
        FiniteChainProblem problem;
        problem.n_sites = n;
        problem.params = params;
        problem.k_in = 1.1;
        const ChainSolution sol = finite_chain_solve(problem);
        if (!first)
        {
            CHECK(std::abs(sol.t - previous) < 1e-12);
        }
        previous = sol.t;
        first = false;
    }
}

TEST_CASE("chain problem validation")
{
    FiniteChainProblem problem;
    problem.params = lattice(0.3);

    problem.n_sites = 40;
    CHECK_THROWS_AS(finite_chain_solve(problem), std::invalid_argument);
    problem.n_sites = 39;
    CHECK_THROWS_AS(finite_chain_solve(problem), std::invalid_argument);

    problem.n_sites = 401;
    problem.k_in = 0.0;
    CHECK_THROWS_AS(finite_chain_solve(problem), OutsideBandError);
    problem.k_in = kPi;
    CHECK_THROWS_AS(finite_chain_solve(problem), OutsideBandError);

    problem.k_in = 1.0;
    problem.attachments = {{195, 0.3, 0.0}};
    CHECK_THROWS_AS(finite_chain_solve(problem), std::invalid_argument);
}

TEST_CASE("free packet is fully transmitted")
{
    PropagationSpec spec;
    spec.n_sites = 801;
    spec.params = lattice(0.0);
    spec.packet = {-150.0, 20.0, kPi / 2.0};
    const PropagationResult result = propagate_packet(spec);
    CHECK(std::abs(result.transmitted - 1.0) < 1e-8);
    CHECK(result.reflected < 1e-8);
    CHECK(result.norm_drift < 1e-8);
}

TEST_CASE("resonant narrow packet reflects in the continuum limit")
{
    // g = 0.2 xi, sigma_omega = Gamma'/10 with Gamma' = g^2/(2 xi).
    // sigma_omega = xi/sigma_x fixes sigma_x = 500 sites; the chain is
    // sized so the scattered tails never reach the ends.
    PropagationSpec spec;
    spec.n_sites = 18001;
    spec.params = lattice(0.2);
    spec.attachments = {{0, 0.2, 0.0}};
    spec.packet = {-2300.0, 500.0, kPi / 2.0};
    const PropagationResult result = propagate_packet(spec);
    CHECK(std::abs(result.reflected - 1.0) <= 0.02);
    CHECK(result.norm_drift < 1e-8);
}

TEST_CASE("detuned carrier reproduces the half-reflection point")
{
    // Delta = Gamma' sits at the half maximum of the continuum Lorentzian.
    const double xi = 1.0;
    const double g = 0.5;
    const double gamma_eff = g * g / (2.0 * xi);
    const double k0 = std::acos(-gamma_eff / (2.0 * xi));
    PropagationSpec spec;
    spec.n_sites = 4001;
    spec.params = lattice(g);
    spec.attachments = {{0, g, 0.0}};
    spec.packet = {-500.0, 80.0, k0};
    const PropagationResult result = propagate_packet(spec);
    CHECK(std::abs(result.reflected - 0.5) <= 0.02);
    CHECK(result.norm_drift < 1e-8);

    // Steady-state agreement at the carrier.
    const double closed = std::norm(crw::amplitudes(spec.params, k0).r);
    CHECK(std::abs(result.reflected - closed) <= 0.02);
}

TEST_CASE("packet runs record trajectories when asked")
{
    PropagationSpec spec;
    spec.n_sites = 801;
    spec.params = lattice(0.0);
    spec.packet = {-150.0, 20.0, kPi / 2.0};
    spec.sample_stride = 200;
    spec.site_stride = 50;
    const PropagationResult result = propagate_packet(spec);
    CHECK(!result.trajectory.empty());
    double mass = 0.0;
    for (const auto &sample : result.trajectory)
    {
        CHECK(sample.probability >= 0.0);
        mass += sample.probability;
    }
    CHECK(mass > 0.0);
}

TEST_CASE("packet touching the boundary invalidates the run")
{
    PropagationSpec spec;
    spec.n_sites = 401;
    spec.params = lattice(0.0);
    // Packet starts far left and is too wide for the box.
    spec.packet = {-150.0, 40.0, kPi / 2.0};
    CHECK_THROWS_AS(propagate_packet(spec), PacketBoundaryError);
}

TEST_CASE("carrier detuning from the dispersion relation")
{
    const CrwParams params = lattice(0.25);
    CHECK(carrier_to_detuning(kPi / 2.0, params) == doctest::Approx(0.0).epsilon(1e-14));

    // cos k0 = -1/2 puts the carrier xi above the emitter.
    CHECK(carrier_to_detuning(std::acos(-0.5), params) == doctest::Approx(1.0).epsilon(1e-12));

    CrwParams scaled = lattice(0.25);
    scaled.xi = 2.0 * scaled.g; // xi = 2g = 0.5
    CHECK(carrier_to_detuning(kPi / 3.0, scaled) ==
          doctest::Approx(-2.0 * scaled.g).epsilon(1e-12));

    CHECK_THROWS_AS(carrier_to_detuning(0.0, params), OutsideBandError);
}
