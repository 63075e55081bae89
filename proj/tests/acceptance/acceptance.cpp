// Acceptance suite: end-to-end checks of the library's headline numbers,
// one line of output per criterion. Exits nonzero if any criterion fails.

#include "wqed/cascade.hpp"
#include "wqed/cavity.hpp"
#include "wqed/commands.hpp"
#include "wqed/continuum.hpp"
#include "wqed/crw.hpp"
#include "wqed/oracles.hpp"
#include "wqed/packet.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace wqed;

namespace
{

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void report(int criterion, const std::string &name, bool ok, const std::string &detail)
{
    std::printf("%s  criterion %2d  %-34s %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!ok)
    {
        ++failures;
    }
}

void run(int criterion, const std::string &name, const std::function<std::pair<bool, std::string>()> &body)
{
    try
    {
        const auto [ok, detail] = body();
        report(criterion, name, ok, detail);
    }
    catch (const std::exception &error)
    {
        report(criterion, name, false, std::string("exception: ") + error.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

EmitterWaveguideParams symmetric_emitter(double gamma, double loss = 0.0)
{
    EmitterWaveguideParams params;
    params.gamma_right = gamma;
    params.gamma_left = gamma;
    params.gamma_loss = loss;
    return params;
}

std::string fmt(const char *format, double a, double b = 0.0, double c = 0.0)
{
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), format, a, b, c);
    return buffer;
}

} // namespace

int main()
{
    // 1. Lorentzian reproduction: R(0) = 1 and T(0) = 0 exactly,
    //    FWHM = 2 Gamma within 1e-6 Gamma, 10^4-point sweep under 1 s.
    run(1, "lorentzian reproduction", [] {
        const EmitterWaveguideParams params = symmetric_emitter(1.0);
        const auto start = std::chrono::steady_clock::now();
        const FrequencyGrid grid = make_grid(0.0, 10.0, 10001);
        const DetuningSweepResult sweep = continuum::sweep(params, grid);
        const double elapsed = seconds_since(start);

        const std::size_t center = grid.size() / 2;
        const bool resonance_exact =
            grid[center] == 0.0 && std::norm(sweep.response.r[center]) == 1.0 &&
            std::norm(sweep.response.t[center]) == 0.0;
        const double fwhm = continuum::fwhm_reflection(params);
        const bool fwhm_ok = std::abs(fwhm - 2.0) <= 1e-6;
        const bool fast = elapsed < 1.0;
        return std::make_pair(resonance_exact && fwhm_ok && fast,
                              fmt("R(0)=1,T(0)=0 exact; FWHM=%.9f; %.3fs", fwhm, elapsed));
    });

    // 2. Loss figure: gamma = (2/9) Gamma gives T(0) = 0.01, R(0) = 0.81,
    //    beta = 0.9, all within 1e-12.
    run(2, "loss figure", [] {
        const EmitterWaveguideParams params = symmetric_emitter(1.0, 2.0 / 9.0);
        const auto p = continuum::probabilities(params, 0.0);
        const double beta = continuum::beta_factor(params);
        const bool ok = std::abs(p.transmission - 0.01) <= 1e-12 &&
                        std::abs(p.reflection - 0.81) <= 1e-12 && std::abs(beta - 0.9) <= 1e-12;
        return std::make_pair(ok, fmt("T(0)=%.14f R(0)=%.14f beta=%.14f", p.transmission,
                                      p.reflection, beta));
    });

    // 3. Detuning switch: shift 2 Gamma drops R from 1 to 0.2 (1e-12);
    //    shift 10 Gamma drops it to 1/101 < 0.01.
    run(3, "detuning switch", [] {
        const EmitterWaveguideParams params = symmetric_emitter(1.0);
        const auto one = continuum::detuning_switch_contrast(params, 2.0, 0.0);
        const auto five = continuum::detuning_switch_contrast(params, 10.0, 0.0);
        const bool ok = one.r_before == 1.0 && std::abs(one.r_after - 0.2) <= 1e-12 &&
                        five.r_before == 1.0 && std::abs(five.r_after - 1.0 / 101.0) <= 1e-12 &&
                        five.r_after < 0.01;
        return std::make_pair(ok, fmt("R: 1 -> %.12f (2G), 1 -> %.12f (10G)", one.r_after,
                                      five.r_after));
    });

    // 4. Chiral switch: (R_symmetric, R_chiral) = (1, 0) exactly on resonance.
    run(4, "chiral switch", [] {
        const auto pair = continuum::chiral_switch_contrast(1.0, 0.0);
        const bool ok = pair.r_symmetric == 1.0 && pair.r_chiral == 0.0;
        return std::make_pair(ok, fmt("R_symmetric=%.1f R_chiral=%.1f", pair.r_symmetric,
                                      pair.r_chiral));
    });

    // 5. CRW: R(0) = 1; R -> 1 toward the +/- 4g band edges; closed form vs
    //    finite-chain oracle (N = 401) below 1e-8 at 21 wave numbers; < 5 s.
    run(5, "crw lattice scattering", [] {
        const auto start = std::chrono::steady_clock::now();
        CrwParams params;
        params.omega_c = 0.0;
        params.xi = 2.0;
        params.g = 1.0;
        params.omega_e = 0.0;
        const auto center = crw::probabilities_resonant(params, 0.0);
        bool edges_ok = true;
        double previous = 0.0;
        for (double gap : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10})
        {
            const double reflection =
                crw::probabilities_resonant(params, 2.0 * params.xi * (1.0 - gap)).reflection;
            edges_ok = edges_ok && reflection > previous;
            previous = reflection;
        }
        edges_ok = edges_ok && previous > 0.999999;

        double max_diff = 0.0;
        for (int i = 0; i < 21; ++i)
        {
            const double k = 0.05 * kPi + 0.90 * kPi * static_cast<double>(i) / 20.0;
            oracle::FiniteChainProblem problem;
            problem.n_sites = 401;
            problem.params = params;
            problem.k_in = k;
            const oracle::ChainSolution solution = oracle::finite_chain_solve(problem);
            const Amplitudes closed = crw::amplitudes(params, k);
            max_diff = std::max(max_diff, std::abs(solution.t - closed.t));
            max_diff = std::max(max_diff, std::abs(solution.r - closed.r));
        }
        const double elapsed = seconds_since(start);
        const bool ok = center.reflection == 1.0 && center.transmission == 0.0 && edges_ok &&
                        max_diff < 1e-8 && elapsed < 5.0;
        return std::make_pair(ok, fmt("R(0)=1; edge R=%.7f; oracle max diff=%.2e; %.2fs",
                                      previous, max_diff, elapsed));
    });

    // 6. Rabi-splitting switch: lossless resonant cavity with g = 5 Gamma;
    //    R maxima at omega_c +/- g within one step of a 4001-point sweep and
    //    R(omega_c) = 0 within 1e-12.
    run(6, "rabi-splitting switch", [] {
        CavityParams params;
        params.g = 5.0;
        params.gamma_right = 1.0;
        params.gamma_left = 1.0;
        const FrequencyGrid grid = make_grid(0.0, 10.0, 4001, Frame::DetuningFromCavity);
        const DetuningSweepResult sweep = cavity::sweep(params, grid);
        std::size_t best_left = 0;
        std::size_t best_right = 0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double reflection = std::norm(sweep.response.r[i]);
            if (grid[i] < 0.0 && reflection > std::norm(sweep.response.r[best_left]))
            {
                best_left = i;
            }
            if (grid[i] > 0.0 && reflection > std::norm(sweep.response.r[best_right]))
            {
                best_right = i;
            }
        }
        const double center_reflection = std::norm(sweep.response.r[grid.size() / 2]);
        const bool ok = std::abs(grid[best_left] + params.g) <= grid.spacing() &&
                        std::abs(grid[best_right] - params.g) <= grid.spacing() &&
                        center_reflection <= 1e-12;
        return std::make_pair(ok, fmt("maxima at %+.4f, %+.4f; R(omega_c)=%.2e",
                                      grid[best_left], grid[best_right], center_reflection));
    });

    // 7. Cascade unitarity and bandwidth: N in {1, 2, 4} quarter-wave-spaced
    //    identical emitters; |t|^2 + |r|^2 = 1 within 1e-10 across the sweep;
    //    bandwidth(R >= 0.99) strictly increasing, matching the recorded
    //    first-build constants 0.201005, 0.895253, 1.679365.
    run(7, "cascade unitarity and bandwidth", [] {
        const FrequencyGrid grid = make_grid(100.0, 10.0, 20001, Frame::Absolute);
        EmitterWaveguideParams emitter = symmetric_emitter(1.0);
        emitter.omega_e = 100.0;
        const double gap = kPi / 200.0; // k d = pi/2 at resonance with v_g = 1
        double widths[3] = {0.0, 0.0, 0.0};
        double worst_unitarity = 0.0;
        const int counts[3] = {1, 2, 4};
        for (int c = 0; c < 3; ++c)
        {
            cascade::CascadeLayout layout;
            for (int i = 0; i < counts[c]; ++i)
            {
                layout.sites.emplace_back(emitter);
            }
            for (int i = 0; i + 1 < counts[c]; ++i)
            {
                layout.separations.push_back(gap);
            }
            const cascade::CascadeSweepResult result =
                cascade::cascade_amplitudes(layout, grid, cascade::LinearDispersion{});
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                if (result.total_reflection[i])
                {
                    continue;
                }
                worst_unitarity = std::max(
                    worst_unitarity, std::abs(std::norm(result.response.t[i]) +
                                              std::norm(result.response.r[i]) - 1.0));
            }
            widths[c] = cascade::reflection_bandwidth(result.response, 0.99);
        }
        const double expected[3] = {0.201005, 0.895253, 1.679365};
        bool widths_ok = widths[0] < widths[1] && widths[1] < widths[2];
        for (int c = 0; c < 3; ++c)
        {
            widths_ok = widths_ok && std::abs(widths[c] - expected[c]) <= 1e-3 * expected[c];
        }
        const bool ok = worst_unitarity <= 1e-10 && widths_ok;
        return std::make_pair(ok, fmt("widths 0.99: %.6f < %.6f < %.6f", widths[0], widths[1],
                                      widths[2]) +
                                      fmt("; unitarity %.1e", worst_unitarity));
    });

    // 8. Time-domain oracle at N = 4001 sites: carrier at Delta = Gamma'
    //    gives R within 0.02 of 1/2; resonant carrier gives R within 0.02 of
    //    1; norm drift <= 1e-8; each run under 60 s.
    run(8, "time-domain oracle", [] {
        const double xi = 1.0;
        const double g = 0.5;
        const double gamma_eff = g * g / (2.0 * xi);
        CrwParams params;
        params.omega_c = 0.0;
        params.xi = xi;
        params.g = g;
        params.omega_e = 0.0;

        oracle::PropagationSpec spec;
        spec.n_sites = 4001;
        spec.params = params;
        spec.attachments = {{0, g, 0.0}};

        auto start = std::chrono::steady_clock::now();
        spec.packet = {-500.0, 80.0, kPi / 2.0};
        const oracle::PropagationResult resonant = oracle::propagate_packet(spec);
        const double resonant_time = seconds_since(start);

        start = std::chrono::steady_clock::now();
        spec.packet.k0 = std::acos(-gamma_eff / (2.0 * xi));
        const oracle::PropagationResult detuned = oracle::propagate_packet(spec);
        const double detuned_time = seconds_since(start);

        const bool ok = std::abs(resonant.reflected - 1.0) <= 0.02 &&
                        std::abs(detuned.reflected - 0.5) <= 0.02 &&
                        resonant.norm_drift <= 1e-8 && detuned.norm_drift <= 1e-8 &&
                        resonant_time < 60.0 && detuned_time < 60.0;
        return std::make_pair(
            ok, fmt("R(0)=%.4f R(G')=%.4f", resonant.reflected, detuned.reflected) +
                    fmt("; drift %.1e; %.1fs+%.1fs", std::max(resonant.norm_drift, detuned.norm_drift),
                        resonant_time, detuned_time));
    });

    // 9. Packet metrics: sigma = Gamma/100 packet centered on resonance has
    //    e_r, f_r >= 0.999; doubling the quadrature grid moves every metric
    //    by less than 1e-7.
    run(9, "packet metrics", [] {
        const EmitterWaveguideParams params = symmetric_emitter(1.0);
        const FrequencyGrid grid = make_grid(0.0, 0.5, 8001);
        const DetuningSweepResult sweep = continuum::sweep(params, grid);
        const packet::WavePacket pulse = packet::gaussian_packet(0.0, 0.01, grid);
        const packet::Efficiency eff = packet::efficiency(sweep.response, pulse);
        const packet::Fidelity fid = packet::fidelity(sweep.response, pulse);

        const FrequencyGrid doubled = make_grid(0.0, 0.5, 16001);
        const DetuningSweepResult sweep2 = continuum::sweep(params, doubled);
        const packet::WavePacket pulse2 = packet::gaussian_packet(0.0, 0.01, doubled);
        const packet::Efficiency eff2 = packet::efficiency(sweep2.response, pulse2);
        const packet::Fidelity fid2 = packet::fidelity(sweep2.response, pulse2);

        const double drift = std::max({std::abs(eff.e_t - eff2.e_t), std::abs(eff.e_r - eff2.e_r),
                                       std::abs(eff.p_t - eff2.p_t), std::abs(eff.p_r - eff2.p_r),
                                       std::abs(fid.f_t - fid2.f_t), std::abs(fid.f_r - fid2.f_r)});
        const bool ok = eff.e_r >= 0.999 && fid.f_r >= 0.999 && drift < 1e-7;
        return std::make_pair(ok, fmt("e_r=%.6f f_r=%.6f; doubling drift %.1e", eff.e_r, fid.f_r,
                                      drift));
    });

    // 10. Determinism: repeated figure invocations produce byte-identical CSV.
    run(10, "figure determinism", [] {
        bool ok = true;
        for (const char *id : {"lorentzian", "lorentzian-loss", "crw-band", "crw-scatter",
                               "detuning-switch", "chiral-switch", "rabi-switch"})
        {
            std::ostringstream first;
            std::ostringstream second;
            std::ostringstream diag;
            ok = ok && cli::cmd_figure(id, first, diag) == cli::kExitOk;
            ok = ok && cli::cmd_figure(id, second, diag) == cli::kExitOk;
            ok = ok && first.str() == second.str() && !first.str().empty();
        }
        return std::make_pair(ok, std::string("7 figure datasets byte-identical"));
    });

    if (failures > 0)
    {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
