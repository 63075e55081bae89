#include "wqed/cavity.hpp"

#include "wqed/continuum.hpp"

#include <cmath>

namespace wqed::cavity
{

namespace
{

constexpr Complex kImag{0.0, 1.0};

double omega_for_point(const FrequencyGrid &grid, std::size_t i, const CavityParams &params)
{
    switch (grid.frame())
    {
    case Frame::Absolute:
        return grid[i];
    case Frame::DetuningFromEmitter:
        return params.omega_e + grid[i];
    case Frame::DetuningFromCavity:
        return params.omega_c + grid[i];
    }
    return grid[i];
}

} // namespace

JcLevel jc_energies(int n, double omega_c, double g)
{
    if (n < 1)
    {
        throw std::invalid_argument("the vacuum has no doublet; n must be >= 1");
    }
    if (!std::isfinite(omega_c) || !std::isfinite(g) || g < 0.0)
    {
        throw std::invalid_argument("omega_c and g must be finite, g >= 0");
    }
    const double split = std::sqrt(static_cast<double>(n)) * g;
    const double base = static_cast<double>(n) * omega_c;
    return JcLevel{n, base + split, base - split};
}

Amplitudes amplitudes(const CavityParams &params, double omega)
{
    require_valid(params);
    if (!std::isfinite(omega))
    {
        throw std::invalid_argument("omega not finite");
    }
    if (params.g == 0.0)
    {
        // Decoupled emitter: the empty cavity is the bare two-level form
        // in the cavity detuning. Evaluating the cancelled form directly
        // avoids 0/0 when omega also hits omega_e.
        EmitterWaveguideParams bare;
        bare.gamma_right = params.gamma_right;
        bare.gamma_left = params.gamma_left;
        bare.gamma_loss = params.kappa;
        return continuum::amplitudes(bare, omega - params.omega_c);
    }
    const double total = params.gamma_right + params.gamma_left;
    if (total == 0.0)
    {
        return Amplitudes{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    }
    const Complex delta_e = (omega - params.omega_e) + kImag * (params.gamma_loss / 2.0);
    const Complex delta_c = (omega - params.omega_c) + kImag * (params.kappa / 2.0);
    const Complex core = delta_c * delta_e - params.g * params.g;
    const Complex denom = core + kImag * delta_e * (total / 2.0);
    const Complex t = (core - kImag * delta_e * ((params.gamma_right - params.gamma_left) / 2.0)) / denom;
    const Complex r = -kImag * std::sqrt(params.gamma_left * params.gamma_right) * delta_e / denom;
    return Amplitudes{t, r};
}

RabiSwitchResult rabi_switch_contrast(const CavityParams &weak, const CavityParams &strong,
                                      double probe)
{
    if (weak.kappa != strong.kappa || weak.gamma_loss != strong.gamma_loss ||
        weak.omega_c != strong.omega_c || weak.omega_e != strong.omega_e ||
        weak.gamma_right != strong.gamma_right || weak.gamma_left != strong.gamma_left)
    {
        throw std::invalid_argument("switch parameter sets may differ only in g");
    }
    return RabiSwitchResult{std::norm(amplitudes(weak, probe).r),
                            std::norm(amplitudes(strong, probe).r)};
}

double gamma_from_q(double omega_c, double q)
{
    if (!std::isfinite(omega_c) || !std::isfinite(q) || q <= 0.0)
    {
        throw std::invalid_argument("quality factor must be finite and positive");
    }
    return omega_c / (2.0 * q);
}

bool strong_coupling(const CavityParams &params)
{
    return params.g > std::max(params.kappa, params.gamma_loss);
}

DetuningSweepResult sweep(const CavityParams &params, const FrequencyGrid &grid)
{
    require_valid(params);
    const std::size_t n = grid.size();
    SpectralResponse response{grid, std::vector<Complex>(n), std::vector<Complex>(n)};
    std::vector<double> loss(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const Amplitudes a = amplitudes(params, omega_for_point(grid, i, params));
        response.t[i] = a.t;
        response.r[i] = a.r;
        loss[i] = 1.0 - std::norm(a.t) - std::norm(a.r);
    }
    return DetuningSweepResult{std::move(response), std::move(loss)};
}

} // namespace wqed::cavity
