#include "wqed/continuum.hpp"

#include <cmath>

namespace wqed::continuum
{

namespace
{

constexpr Complex kImag{0.0, 1.0};

double delta_for_point(const FrequencyGrid &grid, std::size_t i,
                       const EmitterWaveguideParams &params)
{
    switch (grid.frame())
    {
    case Frame::Absolute:
        return grid[i] - params.omega_e;
    case Frame::DetuningFromEmitter:
        return grid[i];
    case Frame::DetuningFromCavity:
        throw std::invalid_argument("detuning-from-cavity grid has no meaning for a bare emitter");
    }
    return grid[i];
}

} // namespace

Amplitudes amplitudes(const EmitterWaveguideParams &params, double delta)
{
    require_valid(params);
    if (!std::isfinite(delta))
    {
        throw std::invalid_argument("delta not finite");
    }
    const double total = params.gamma_right + params.gamma_left;
    if (total == 0.0)
    {
        // No guided coupling: free propagation regardless of loss rate.
        return Amplitudes{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    }
    const Complex shifted = delta + kImag * (params.gamma_loss / 2.0);
    const Complex denom = shifted + kImag * (total / 2.0);
    const Complex t = (shifted - kImag * ((params.gamma_right - params.gamma_left) / 2.0)) / denom;
    const Complex r = -kImag * std::sqrt(params.gamma_left * params.gamma_right) / denom;
    return Amplitudes{t, r};
}

Probabilities probabilities(const EmitterWaveguideParams &params, double delta)
{
    const Amplitudes a = amplitudes(params, delta);
    const double transmission = std::norm(a.t);
    const double reflection = std::norm(a.r);
    return Probabilities{transmission, reflection, 1.0 - transmission - reflection};
}

double beta_factor(const EmitterWaveguideParams &params)
{
    require_valid(params);
    const double guided = params.gamma_right + params.gamma_left;
    const double total = guided + params.gamma_loss;
    if (total == 0.0)
    {
        throw std::invalid_argument("beta factor undefined when all rates are zero");
    }
    return guided / total;
}

double fwhm_reflection(const EmitterWaveguideParams &params)
{
    require_valid(params);
    if (params.gamma_right == 0.0 || params.gamma_left == 0.0)
    {
        throw std::invalid_argument("reflection is identically zero; FWHM undefined");
    }
    const double r_max = probabilities(params, 0.0).reflection;
    const double half = r_max / 2.0;
    // Analytic half-max crossing: (gamma_right + gamma_left)/2 + gamma_loss/2.
    const double seed = (params.gamma_right + params.gamma_left) / 2.0 + params.gamma_loss / 2.0;

    double lo = seed * 0.5;
    double hi = seed * 1.5;
    while (probabilities(params, lo).reflection < half)
    {
        lo *= 0.5;
    }
    while (probabilities(params, hi).reflection > half)
    {
        hi *= 2.0;
    }
    while ((hi - lo) > 1e-10 * hi)
    {
        const double mid = 0.5 * (lo + hi);
        if (probabilities(params, mid).reflection > half)
        {
            lo = mid;
        }
        else
        {
            hi = mid;
        }
    }
    return lo + hi; // 2 * crossing, the spectrum is even in delta
}

DetuningSwitchResult detuning_switch_contrast(const EmitterWaveguideParams &params,
                                              double shift, double probe)
{
    if (!std::isfinite(shift))
    {
        throw std::invalid_argument("shift not finite");
    }
    const double before = probabilities(params, probe).reflection;
    // The probe frequency is fixed; shifting the emitter up by `shift`
    // moves the detuning down by the same amount.
    const double after = probabilities(params, probe - shift).reflection;
    return DetuningSwitchResult{before, after};
}

ChiralSwitchResult chiral_switch_contrast(double gamma_total, double probe)
{
    EmitterWaveguideParams symmetric;
    symmetric.gamma_right = gamma_total;
    symmetric.gamma_left = gamma_total;
    EmitterWaveguideParams chiral;
    chiral.gamma_left = gamma_total;
    return ChiralSwitchResult{probabilities(symmetric, probe).reflection,
                              probabilities(chiral, probe).reflection};
}

Complex s_matrix_element(Direction out, Direction in,
                         const EmitterWaveguideParams &params, double delta)
{
    require_valid(params);
    if (!std::isfinite(delta))
    {
        throw std::invalid_argument("delta not finite");
    }
    const double total = params.gamma_right + params.gamma_left;
    const double gamma_out = out == Direction::Right ? params.gamma_right : params.gamma_left;
    const double gamma_in = in == Direction::Right ? params.gamma_right : params.gamma_left;
    const Complex kronecker = out == in ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    if (total == 0.0)
    {
        return kronecker;
    }
    const Complex denom = delta + kImag * (params.gamma_loss / 2.0) + kImag * (total / 2.0);
    return kronecker - kImag * std::sqrt(gamma_out * gamma_in) / denom;
}

DetuningSweepResult sweep(const EmitterWaveguideParams &params, const FrequencyGrid &grid)
{
    require_valid(params);
    const std::size_t n = grid.size();
    SpectralResponse response{grid, std::vector<Complex>(n), std::vector<Complex>(n)};
    std::vector<double> loss(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const Amplitudes a = amplitudes(params, delta_for_point(grid, i, params));
        response.t[i] = a.t;
        response.r[i] = a.r;
        loss[i] = 1.0 - std::norm(a.t) - std::norm(a.r);
    }
    return DetuningSweepResult{std::move(response), std::move(loss)};
}

} // namespace wqed::continuum
