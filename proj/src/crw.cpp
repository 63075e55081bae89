#include "wqed/crw.hpp"

#include <cmath>

namespace wqed::crw
{

namespace
{

constexpr Complex kImag{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

double omega_for_point(const FrequencyGrid &grid, std::size_t i, const CrwParams &params)
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

double dispersion(const CrwParams &params, double k)
{
    require_valid(params);
    if (!std::isfinite(k))
    {
        throw std::invalid_argument("k not finite");
    }
    return params.omega_c - 2.0 * params.xi * std::cos(k);
}

BandPoint band_point(const CrwParams &params, double k)
{
    return BandPoint{k, dispersion(params, k)};
}

double inverse_dispersion(const CrwParams &params, double omega)
{
    require_valid(params);
    if (!std::isfinite(omega))
    {
        throw std::invalid_argument("omega not finite");
    }
    const double cos_k = (params.omega_c - omega) / (2.0 * params.xi);
    if (!(std::abs(cos_k) < 1.0))
    {
        throw OutsideBandError("frequency outside the propagating band");
    }
    return std::acos(cos_k);
}

Amplitudes amplitudes(const CrwParams &params, double k)
{
    require_valid(params);
    if (!std::isfinite(k))
    {
        throw std::invalid_argument("k not finite");
    }
    if (!(k > 0.0 && k < kPi))
    {
        throw OutsideBandError("k must lie strictly inside (0, pi); "
                               "the band-edge limit is t = 0, r = -1");
    }
    if (params.g == 0.0)
    {
        return Amplitudes{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    }
    const Complex omega_e = params.omega_e - kImag * (params.gamma_loss / 2.0);
    const Complex detuning = params.omega_c - 2.0 * params.xi * std::cos(k) - omega_e;
    const double g2 = params.g * params.g;
    const Complex d = 2.0 * kImag * params.xi * std::sin(k) * detuning - g2;
    return Amplitudes{(d + g2) / d, g2 / d};
}

Probabilities probabilities_resonant(const CrwParams &params, double delta)
{
    require_valid(params);
    if (params.omega_e != params.omega_c)
    {
        throw std::invalid_argument("resonant form requires omega_e = omega_c");
    }
    if (!std::isfinite(delta))
    {
        throw std::invalid_argument("delta not finite");
    }
    const double band = 2.0 * params.xi;
    if (!(std::abs(delta) < band))
    {
        throw OutsideBandError("detuning outside the propagating band");
    }
    const double g4 = params.g * params.g * params.g * params.g;
    const double flux = delta * delta * (band * band - delta * delta);
    return Probabilities{flux / (flux + g4), g4 / (flux + g4)};
}

double clamped_wavenumber(const CrwParams &params, double omega)
{
    require_valid(params);
    if (!std::isfinite(omega))
    {
        throw std::invalid_argument("omega not finite");
    }
    double cos_k = (params.omega_c - omega) / (2.0 * params.xi);
    // Points at (or within rounding of) the band edge clamp into the
    // open interval; anything further out cannot propagate.
    if (std::abs(cos_k) >= 1.0)
    {
        if (std::abs(cos_k) > 1.0 + 1e-12)
        {
            throw OutsideBandError("frequency outside the propagating band");
        }
        cos_k = cos_k > 0.0 ? 1.0 : -1.0;
    }
    const double k = std::acos(cos_k);
    return std::min(std::max(k, kBandEdgeClamp), kPi - kBandEdgeClamp);
}

DetuningSweepResult sweep(const CrwParams &params, const FrequencyGrid &grid)
{
    require_valid(params);
    const std::size_t n = grid.size();
    SpectralResponse response{grid, std::vector<Complex>(n), std::vector<Complex>(n)};
    std::vector<double> loss(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double k = clamped_wavenumber(params, omega_for_point(grid, i, params));
        const Amplitudes a = amplitudes(params, k);
        response.t[i] = a.t;
        response.r[i] = a.r;
        loss[i] = 1.0 - std::norm(a.t) - std::norm(a.r);
    }
    return DetuningSweepResult{std::move(response), std::move(loss)};
}

} // namespace wqed::crw
