#pragma once

#include "wqed/core.hpp"

namespace wqed::crw
{

// A point on the single tight-binding band omega_k = omega_c - 2 xi cos(k).
struct BandPoint
{
    double k = 0.0;     // wave number in [-pi, pi], lattice constant 1
    double omega = 0.0; // omega_c - 2 xi cos(k)
};

double dispersion(const CrwParams &params, double k);

BandPoint band_point(const CrwParams &params, double k);

// Positive branch k = arccos((omega_c - omega) / 2 xi) in (0, pi).
// Throws OutsideBandError when |omega - omega_c| >= 2 xi: such photons
// cannot propagate.
double inverse_dispersion(const CrwParams &params, double omega);

// Sweep utilities clamp wave numbers to the open interval by this margin;
// the closed-form evaluation rejects the edges themselves.
inline constexpr double kBandEdgeClamp = 1e-9 * 3.14159265358979323846;

// Closed-form amplitudes for in-band k,
//
//   D = 2 i xi sin(k) [omega_c - 2 xi cos(k) - omega_e] - g^2
//   t = (D + g^2) / D,   r = g^2 / D,
//
// where a nonzero gamma_loss enters through omega_e -> omega_e - i gamma/2
// (experimental; the lossless formulas are the established ones).
// k in {0, pi} is rejected: the propagating ansatz degenerates there, and
// the limiting values are t = 0, r = -1.
Amplitudes amplitudes(const CrwParams &params, double k);

struct Probabilities
{
    double transmission;
    double reflection;
};

// Wave number for a frequency, clamped into the open interval
// [kBandEdgeClamp, pi - kBandEdgeClamp]. Frequencies at the band edge (up
// to rounding) are pulled inside; anything further out throws.
double clamped_wavenumber(const CrwParams &params, double omega);

// Resonant (omega_e = omega_c) probabilities as a function of the shared
// detuning delta = omega - omega_c, for |delta| < 2 xi:
//
//   T = delta^2 (4 xi^2 - delta^2) / (delta^2 (4 xi^2 - delta^2) + g^4)
//   R = g^4                        / (delta^2 (4 xi^2 - delta^2) + g^4)
Probabilities probabilities_resonant(const CrwParams &params, double delta);

// Evaluates amplitudes over a frequency grid (points mapped to k via the
// inverse dispersion). Every point must lie strictly inside the band.
DetuningSweepResult sweep(const CrwParams &params, const FrequencyGrid &grid);

} // namespace wqed::crw
