#pragma once

#include "wqed/core.hpp"

namespace wqed::continuum
{

// Waveguide propagation direction, used to address S-matrix elements.
enum class Direction
{
    Right,
    Left,
};

// Closed-form single-photon amplitudes for a right-moving input photon,
//
//   t = (D' - i (G_R - G_L)/2) / (D' + i (G_R + G_L)/2)
//   r = -i sqrt(G_L G_R)      / (D' + i (G_R + G_L)/2)
//
// with D' = delta + i gamma_loss/2. Rates are restricted to real
// non-negative values. With no guided coupling at all the photon
// propagates freely and (t, r) = (1, 0).
Amplitudes amplitudes(const EmitterWaveguideParams &params, double delta);

struct Probabilities
{
    double transmission; // |t|^2
    double reflection;   // |r|^2
    double loss;         // 1 - T - R
};

Probabilities probabilities(const EmitterWaveguideParams &params, double delta);

// Fraction of emission into the guided modes,
// (G_R + G_L) / (G_R + G_L + gamma_loss). Requires at least one nonzero rate.
double beta_factor(const EmitterWaveguideParams &params);

// Full width at half of max reflection, located numerically by bisection
// on the half-max crossing (relative tolerance 1e-10) and seeded by the
// analytic value (gamma_right + gamma_left)/2 + gamma_loss/2 per side.
// Requires a nonzero reflection spectrum (both guided rates > 0).
double fwhm_reflection(const EmitterWaveguideParams &params);

struct DetuningSwitchResult
{
    double r_before; // reflection at the probe before the shift
    double r_after;  // reflection at the probe after omega_e -> omega_e + shift
};

DetuningSwitchResult detuning_switch_contrast(const EmitterWaveguideParams &params,
                                              double shift, double probe);

struct ChiralSwitchResult
{
    double r_symmetric; // gamma_right = gamma_left = gamma_total
    double r_chiral;    // gamma_right = 0, gamma_left = gamma_total
};

// Lossless comparison of symmetric vs fully chiral coupling at a fixed probe.
ChiralSwitchResult chiral_switch_contrast(double gamma_total, double probe);

// Single-photon scattering matrix element S^{out,in} at detuning delta,
//
//   S = delta_{out,in} - i sqrt(G_out G_in) / (delta' + i (G_R + G_L)/2),
//
// an independent algebraic route to the same amplitudes:
// S^{RR} = t and S^{LR} = r for a right-moving input.
Complex s_matrix_element(Direction out, Direction in,
                         const EmitterWaveguideParams &params, double delta);

// Evaluates amplitudes over a grid. Absolute-frame grids are shifted by
// omega_e; detuning-from-emitter grids are used as-is.
DetuningSweepResult sweep(const EmitterWaveguideParams &params, const FrequencyGrid &grid);

} // namespace wqed::continuum
