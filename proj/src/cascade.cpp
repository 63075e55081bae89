#include "wqed/cascade.hpp"

#include "wqed/cavity.hpp"
#include "wqed/continuum.hpp"
#include "wqed/crw.hpp"

#include <cmath>

namespace wqed::cascade
{

namespace
{

Amplitudes site_amplitudes(const SiteParams &site, double omega, double k)
{
    if (const auto *emitter = std::get_if<EmitterWaveguideParams>(&site))
    {
        return continuum::amplitudes(*emitter, omega - emitter->omega_e);
    }
    if (const auto *cav = std::get_if<CavityParams>(&site))
    {
        return cavity::amplitudes(*cav, omega);
    }
    return crw::amplitudes(std::get<CrwParams>(site), k);
}

} // namespace

TransferMatrix TransferMatrix::operator*(const TransferMatrix &rhs) const
{
    return TransferMatrix{
        m11 * rhs.m11 + m12 * rhs.m21,
        m11 * rhs.m12 + m12 * rhs.m22,
        m21 * rhs.m11 + m22 * rhs.m21,
        m21 * rhs.m12 + m22 * rhs.m22,
    };
}

TransferMatrix identity_matrix()
{
    return TransferMatrix{Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0},
                          Complex{1.0, 0.0}};
}

TransferMatrix site_matrix(const SiteScatterer &site)
{
    if (std::abs(site.t) <= 1e-12)
    {
        throw NearTotalReflectionError("site transmission vanishes; no finite transfer matrix");
    }
    return TransferMatrix{
        (site.t * site.t - site.r * site.r) / site.t,
        site.r / site.t,
        -site.r / site.t,
        Complex{1.0, 0.0} / site.t,
    };
}

TransferMatrix propagation_matrix(double k, double d)
{
    if (!std::isfinite(k) || !std::isfinite(d) || d <= 0.0)
    {
        throw std::invalid_argument("propagation needs finite k and positive d");
    }
    const Complex forward = std::polar(1.0, k * d);
    return TransferMatrix{forward, Complex{0.0, 0.0}, Complex{0.0, 0.0}, std::conj(forward)};
}

SiteScatterer extract(const TransferMatrix &m)
{
    return SiteScatterer{Complex{1.0, 0.0} / m.m22, -m.m21 / m.m22};
}

std::optional<Violation> validate(const CascadeLayout &layout)
{
    if (layout.sites.empty())
    {
        return Violation{"sites", "cascade needs at least one site"};
    }
    if (layout.separations.size() + 1 != layout.sites.size())
    {
        return Violation{"separations", "separations must have exactly sites - 1 entries"};
    }
    for (double d : layout.separations)
    {
        if (!std::isfinite(d) || d <= 0.0)
        {
            return Violation{"separations", "separations must be positive"};
        }
    }
    for (const auto &site : layout.sites)
    {
        std::optional<Violation> v =
            std::visit([](const auto &params) { return wqed::validate(params); }, site);
        if (v)
        {
            return v;
        }
    }
    return std::nullopt;
}

CascadeSweepResult cascade_amplitudes(const CascadeLayout &layout, const FrequencyGrid &grid,
                                      const DispersionMap &k_of_omega)
{
    if (auto v = validate(layout))
    {
        throw std::invalid_argument(v->message);
    }
    if (grid.frame() != Frame::Absolute)
    {
        throw std::invalid_argument("cascade sweeps need an absolute-frame grid");
    }
    const std::size_t n = grid.size();
    CascadeSweepResult result{SpectralResponse{grid, std::vector<Complex>(n), std::vector<Complex>(n)},
                              std::vector<bool>(n, false), 0};
    for (std::size_t i = 0; i < n; ++i)
    {
        const double omega = grid[i];
        const double k = k_of_omega(omega);
        try
        {
            const Amplitudes first = site_amplitudes(layout.sites[0], omega, k);
            TransferMatrix total = site_matrix(SiteScatterer{first.t, first.r});
            for (std::size_t s = 1; s < layout.sites.size(); ++s)
            {
                const Amplitudes a = site_amplitudes(layout.sites[s], omega, k);
                total = site_matrix(SiteScatterer{a.t, a.r}) *
                        (propagation_matrix(k, layout.separations[s - 1]) * total);
            }
            const SiteScatterer out = extract(total);
            result.response.t[i] = out.t;
            result.response.r[i] = out.r;
        }
        catch (const NearTotalReflectionError &)
        {
            result.response.t[i] = Complex{0.0, 0.0};
            result.response.r[i] = Complex{-1.0, 0.0};
            result.total_reflection[i] = true;
            ++result.total_reflection_count;
        }
    }
    return result;
}

double reflection_bandwidth(const SpectralResponse &response, double threshold)
{
    if (!(threshold > 0.0 && threshold <= 1.0))
    {
        throw std::invalid_argument("threshold must lie in (0, 1]");
    }
    const std::size_t n = response.grid.size();
    std::vector<double> reflection(n);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        reflection[i] = std::norm(response.r[i]);
        if (reflection[i] > reflection[peak])
        {
            peak = i;
        }
    }
    if (reflection[peak] < threshold)
    {
        return 0.0;
    }

    std::size_t lo = peak;
    while (lo > 0 && reflection[lo - 1] >= threshold)
    {
        --lo;
    }
    std::size_t hi = peak;
    while (hi + 1 < n && reflection[hi + 1] >= threshold)
    {
        ++hi;
    }

    double left = response.grid[lo];
    if (lo > 0)
    {
        const double r_in = reflection[lo];
        const double r_out = reflection[lo - 1];
        left = response.grid[lo] -
               (response.grid[lo] - response.grid[lo - 1]) * (r_in - threshold) / (r_in - r_out);
    }
    double right = response.grid[hi];
    if (hi + 1 < n)
    {
        const double r_in = reflection[hi];
        const double r_out = reflection[hi + 1];
        right = response.grid[hi] +
                (response.grid[hi + 1] - response.grid[hi]) * (r_in - threshold) / (r_in - r_out);
    }
    return right - left;
}

} // namespace wqed::cascade
