#pragma once

#include "wqed/core.hpp"

#include <span>

namespace wqed::packet
{

// Spectral envelope f(omega) on a grid, normalized so that the quadrature
// of |f|^2 over the grid is 1. Gaussian-generated packets remember their
// shape so resampling can regenerate them analytically.
struct WavePacket
{
    FrequencyGrid grid;
    std::vector<Complex> f;
    double center = 0.0;
    double width = 0.0; // sigma of |f|^2 for Gaussian packets
    bool gaussian = false;
};

// Composite quadrature over the grid: Simpson on uniform grids (with a 3/8
// tail when the interval count is odd), trapezoid otherwise.
double integrate(const FrequencyGrid &grid, std::span<const double> values);

// Real positive Gaussian amplitude whose intensity |f|^2 is a normal
// density of standard deviation sigma, renormalized on the grid.
// The grid must span at least center +/- 8 sigma so that the intensity
// mass outside the grid is < 1e-8.
WavePacket gaussian_packet(double center, double sigma, const FrequencyGrid &grid);

// Moves a packet onto another grid. Gaussian packets are regenerated from
// their parameters; general envelopes are interpolated with a cubic
// Catmull-Rom rule (no renormalization).
WavePacket resample(const WavePacket &packet, const FrequencyGrid &grid);

struct Efficiency
{
    // e uses the squared-overlap convention |integral |t|^2 |f|^2 domega|^2;
    // p is the un-squared routing probability integral, so e = p^2.
    double e_t;
    double e_r;
    double p_t;
    double p_r;
};

Efficiency efficiency(const SpectralResponse &response, const WavePacket &packet);

struct Fidelity
{
    double f_t; // |integral t |f|^2 domega|^2, phase-sensitive
    double f_r;
};

Fidelity fidelity(const SpectralResponse &response, const WavePacket &packet);

// Switch figures of merit. Efficiencies/fidelities/probabilities refer to
// the on state; contrast = p_r(on) - p_r(off); the extinction ratio is
// 10 log10(p_t(off) / p_t(on)) with p_t(on) floored at 1e-15.
struct SwitchReport
{
    double e_t, e_r;
    double f_t, f_r;
    double p_t, p_r;
    double contrast;
    double extinction_db;
};

SwitchReport switch_report(const SpectralResponse &on, const SpectralResponse &off,
                           const WavePacket &packet);

} // namespace wqed::packet
