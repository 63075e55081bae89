#pragma once

#include "wqed/core.hpp"

#include <vector>

namespace wqed::oracle
{

// One emitter attached to a lattice site. Sites are indexed symmetrically,
// -M..M for a chain of 2M+1 sites.
struct EmitterAttachment
{
    int site = 0;
    double g = 0.0;
    double omega_e = 0.0;
};

// Steady-state scattering problem on a finite chain. When attachments is
// empty, a single emitter (params.g, params.omega_e) sits at site 0.
struct FiniteChainProblem
{
    int n_sites = 401; // odd, >= 41
    CrwParams params;
    std::vector<EmitterAttachment> attachments;
    double k_in = 1.5707963267948966;
};

struct ChainSolution
{
    Complex t;
    Complex r;
    // max/min pivot magnitude of the eliminated tridiagonal system; a
    // cheap proxy, not a true condition number.
    double condition_estimate = 0.0;
};

class SingularSystemError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Solves the single-excitation scattering equations on the finite chain.
// Emitter amplitudes are eliminated analytically (u_e = g* u_site / De),
// leaving a complex tridiagonal system whose first and last rows encode
// the plane-wave boundary forms u_j = e^{ikj} + r e^{-ikj} (left) and
// u_j = t e^{ikj} (right). An emitter exactly on resonance with the
// incoming photon pins its site amplitude to zero instead.
ChainSolution finite_chain_solve(const FiniteChainProblem &problem);

// Spatial Gaussian with carrier k0: u_j ~ exp(-(j - center)^2 / 4 sigma^2) e^{i k0 j}.
// sigma is the standard deviation of |u_j|^2.
struct SpatialPacket
{
    double center_site = 0.0;
    double sigma_sites = 10.0;
    double k0 = 1.5707963267948966;
};

struct PropagationSpec
{
    int n_sites = 1001; // odd; sites -M..M
    CrwParams params;   // omega_c and xi; emitters come from attachments
    std::vector<EmitterAttachment> attachments;
    SpatialPacket packet;
    double dt = 0.0;           // default 0.05 / xi
    double t_max = 0.0;        // default 2 n_sites / v_g; run fails if the stop rule never fires
    int sample_stride = 0;     // record |u|^2 rows every this many steps (0: none)
    int site_stride = 8;       // spatial downsampling of recorded rows
};

struct TrajectorySample
{
    double time;
    int site;
    double probability;
};

struct PropagationResult
{
    double transmitted; // sum of |u_j|^2 right of the reference site
    double reflected;   // sum of |u_j|^2 left of the reference site
    double emitter_population;
    double norm_drift; // |sum |u|^2 - 1| at measurement time
    double measured_at;
    std::vector<TrajectorySample> trajectory;
};

class PacketBoundaryError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class NormDriftError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Integrates the single-excitation Schrodinger equation with a classical
// fixed-step 4th-order scheme, in the frame rotating at omega_c. Stops at
// the first checkpoint where every emitter population is below 1e-6, the
// mean distance of the photon density from the reference site exceeds
// 5 packet widths (FWHM of |u|^2), and the packet has had time to reach
// the scatterer.
// Fails if the packet touches the chain ends or the norm drifts by > 1e-6.
PropagationResult propagate_packet(const PropagationSpec &spec);

// Detuning of the carrier from the emitter: omega_k0 - omega_e.
double carrier_to_detuning(double k0, const CrwParams &params);

} // namespace wqed::oracle
