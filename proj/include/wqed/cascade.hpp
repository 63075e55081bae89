#pragma once

#include "wqed/core.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace wqed::cascade
{

// Single-site amplitudes at one frequency, from any backend. Sites are
// assumed symmetric (same t, r seen from either side), which holds for
// every closed form in this library.
struct SiteScatterer
{
    Complex t;
    Complex r;
};

// A perfectly reflecting site (t = 0) has no finite transfer matrix.
class NearTotalReflectionError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// 2x2 complex field-matching matrix acting on (forward, backward)
// amplitude pairs: (right of element) = M * (left of element).
struct TransferMatrix
{
    Complex m11, m12, m21, m22;

    TransferMatrix operator*(const TransferMatrix &rhs) const;
    Complex determinant() const { return m11 * m22 - m12 * m21; }
};

TransferMatrix identity_matrix();

// M = [[(t^2 - r^2)/t, r/t], [-r/t, 1/t]], fixed by the requirement that a
// one-site cascade reproduces (t, r). Throws NearTotalReflectionError when
// |t| <= 1e-12.
TransferMatrix site_matrix(const SiteScatterer &site);

// Plane-wave phase across a gap of length d: diag(e^{ikd}, e^{-ikd}).
TransferMatrix propagation_matrix(double k, double d);

// Inverts the site_matrix parameterization: t = 1/m22, r = -m21/m22.
// Valid because every matrix composed here has unit determinant.
SiteScatterer extract(const TransferMatrix &m);

// One scatterer in a cascade: the backend is identified by the parameter type.
using SiteParams = std::variant<EmitterWaveguideParams, CavityParams, CrwParams>;

// Ordered scatterers separated by free propagation. separations[i] is the
// distance between sites i and i+1 (units of inverse wave number).
struct CascadeLayout
{
    std::vector<SiteParams> sites;
    std::vector<double> separations;
};

std::optional<Violation> validate(const CascadeLayout &layout);

// Maps absolute frequency to wave number. For continuum backends this is
// k = k0 + (omega - omega0)/v_g; CRW backends use the inverse dispersion.
using DispersionMap = std::function<double(double)>;

struct LinearDispersion
{
    double v_g = 1.0;
    double k0 = 0.0;
    double omega0 = 0.0;

    double operator()(double omega) const { return k0 + (omega - omega0) / v_g; }
};

struct CascadeSweepResult
{
    SpectralResponse response;
    // Points where some site was perfectly reflecting; recorded as
    // t = 0, r = -1 instead of failing the sweep.
    std::vector<bool> total_reflection;
    std::size_t total_reflection_count = 0;
};

// Composes the full transfer matrix at every grid point (sites and gaps in
// spatial order) and extracts (t_N, r_N). The grid must be absolute-frame.
// Note the local-basis convention: t_N carries the free propagation phase
// e^{ik sum(d)} accumulated over the gaps.
CascadeSweepResult cascade_amplitudes(const CascadeLayout &layout, const FrequencyGrid &grid,
                                      const DispersionMap &k_of_omega);

// Width of the maximal contiguous interval containing the global maximum
// of R = |r|^2 where R >= threshold, with linear interpolation at the
// crossings. Zero when the maximum itself is below threshold.
double reflection_bandwidth(const SpectralResponse &response, double threshold);

} // namespace wqed::cascade
