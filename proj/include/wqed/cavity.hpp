#pragma once

#include "wqed/core.hpp"

namespace wqed::cavity
{

// One rung of the Jaynes-Cummings ladder for a resonant emitter-cavity
// pair: e_plus - e_minus = 2 sqrt(n) g and e_plus + e_minus = 2 n omega_c.
struct JcLevel
{
    int n = 1;
    double e_plus = 0.0;
    double e_minus = 0.0;
};

// E_n(+/-) = n omega_c +/- sqrt(n) g, for n >= 1 and real g >= 0.
JcLevel jc_energies(int n, double omega_c, double g);

// Single-photon amplitudes for the side-coupled emitter-cavity system,
// written pole-free in the emitter detuning:
//
//   t = (Dc De - g^2 - i De (G_R - G_L)/2) / (Dc De - g^2 + i De (G_R + G_L)/2)
//   r = -i sqrt(G_L G_R) De             / (Dc De - g^2 + i De (G_R + G_L)/2)
//
// with De = omega - omega_e + i gamma_loss/2 and Dc = omega - omega_c + i kappa/2.
// At omega = omega_e with g > 0 and no loss this gives t = 1, r = 0 exactly.
// The directly-coupled (transmission) geometry is not modeled; its spectra
// are the side-coupled ones with t and r swapped.
Amplitudes amplitudes(const CavityParams &params, double omega);

struct RabiSwitchResult
{
    double r_weak;   // reflection probability for the weak-coupling parameters
    double r_strong; // reflection probability for the strong-coupling parameters
};

// Reflection at a fixed probe for two parameter sets that differ only in g.
RabiSwitchResult rabi_switch_contrast(const CavityParams &weak, const CavityParams &strong,
                                      double probe);

// Cavity-waveguide decay rate from a quality factor, omega_c / (2 Q),
// the symmetric-coupling convention.
double gamma_from_q(double omega_c, double q);

// Diagnostic label only; no behavior branches on it.
bool strong_coupling(const CavityParams &params);

// Evaluates amplitudes over a grid; the grid frame decides how points map
// to absolute frequencies.
DetuningSweepResult sweep(const CavityParams &params, const FrequencyGrid &grid);

} // namespace wqed::cavity
