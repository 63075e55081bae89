#include "wqed/packet.hpp"

#include <algorithm>
#include <cmath>

namespace wqed::packet
{

namespace
{

double simpson_uniform(double h, std::span<const double> values)
{
    const std::size_t n = values.size();
    const std::size_t intervals = n - 1;
    double sum = 0.0;
    std::size_t start = 0;
    if (intervals % 2 != 0)
    {
        // Odd interval count: 3/8 rule on the first three intervals keeps
        // the composite scheme O(h^4) without a trapezoid tail.
        if (n >= 4)
        {
            sum += 3.0 * h / 8.0 * (values[0] + 3.0 * values[1] + 3.0 * values[2] + values[3]);
            start = 3;
        }
        else
        {
            return h / 2.0 * (values[0] + values[1]);
        }
    }
    for (std::size_t i = start; i + 2 <= n - 1; i += 2)
    {
        sum += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
    }
    return sum;
}

double trapezoid(const FrequencyGrid &grid, std::span<const double> values)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
    {
        sum += 0.5 * (grid[i + 1] - grid[i]) * (values[i] + values[i + 1]);
    }
    return sum;
}

void check_shared_grid(const SpectralResponse &response, const WavePacket &packet)
{
    if (!response.grid.same_as(packet.grid))
    {
        throw std::invalid_argument(
            "response and packet grids differ; resample the packet first");
    }
}

std::vector<double> intensity(const WavePacket &packet)
{
    std::vector<double> out(packet.f.size());
    for (std::size_t i = 0; i < packet.f.size(); ++i)
    {
        out[i] = std::norm(packet.f[i]);
    }
    return out;
}

} // namespace

double integrate(const FrequencyGrid &grid, std::span<const double> values)
{
    if (values.size() != grid.size())
    {
        throw std::invalid_argument("integrand size must match grid size");
    }
    if (grid.uniform())
    {
        return simpson_uniform(grid.spacing(), values);
    }
    return trapezoid(grid, values);
}

WavePacket gaussian_packet(double center, double sigma, const FrequencyGrid &grid)
{
    if (!std::isfinite(center) || !std::isfinite(sigma) || sigma <= 0.0)
    {
        throw std::invalid_argument("packet needs finite center and positive sigma");
    }
    if (grid.front() > center - 8.0 * sigma || grid.back() < center + 8.0 * sigma)
    {
        throw std::invalid_argument("grid too narrow: must span center +/- 8 sigma");
    }
    WavePacket packet{grid, std::vector<Complex>(grid.size()), center, sigma, true};
    std::vector<double> density(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double x = (grid[i] - center) / sigma;
        density[i] = std::exp(-0.5 * x * x);
    }
    const double mass = integrate(grid, density);
    const double scale = 1.0 / std::sqrt(mass);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        packet.f[i] = Complex{std::sqrt(density[i]) * scale, 0.0};
    }
    return packet;
}

WavePacket resample(const WavePacket &packet, const FrequencyGrid &grid)
{
    if (packet.gaussian)
    {
        return gaussian_packet(packet.center, packet.width, grid);
    }
    // Catmull-Rom interpolation of the complex envelope, clamped to zero
    // outside the source grid.
    const auto &xs = packet.grid.points();
    WavePacket out{grid, std::vector<Complex>(grid.size()), packet.center, packet.width, false};
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double x = grid[i];
        if (x < xs.front() || x > xs.back())
        {
            out.f[i] = Complex{0.0, 0.0};
            continue;
        }
        const auto upper = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t j = upper == xs.begin() ? 0 : static_cast<std::size_t>(upper - xs.begin()) - 1;
        j = std::min(j, xs.size() - 2);
        const double h = xs[j + 1] - xs[j];
        const double s = (x - xs[j]) / h;
        const Complex p1 = packet.f[j];
        const Complex p2 = packet.f[j + 1];
        const Complex m1 = j > 0 ? (p2 - packet.f[j - 1]) * 0.5 : p2 - p1;
        const Complex m2 = j + 2 < xs.size() ? (packet.f[j + 2] - p1) * 0.5 : p2 - p1;
        const double s2 = s * s;
        const double s3 = s2 * s;
        out.f[i] = (2.0 * s3 - 3.0 * s2 + 1.0) * p1 + (s3 - 2.0 * s2 + s) * m1 +
                   (-2.0 * s3 + 3.0 * s2) * p2 + (s3 - s2) * m2;
    }
    return out;
}

Efficiency efficiency(const SpectralResponse &response, const WavePacket &packet)
{
    check_shared_grid(response, packet);
    const std::vector<double> density = intensity(packet);
    std::vector<double> weighted_t(density.size());
    std::vector<double> weighted_r(density.size());
    for (std::size_t i = 0; i < density.size(); ++i)
    {
        weighted_t[i] = std::norm(response.t[i]) * density[i];
        weighted_r[i] = std::norm(response.r[i]) * density[i];
    }
    const double p_t = integrate(response.grid, weighted_t);
    const double p_r = integrate(response.grid, weighted_r);
    return Efficiency{p_t * p_t, p_r * p_r, p_t, p_r};
}

Fidelity fidelity(const SpectralResponse &response, const WavePacket &packet)
{
    check_shared_grid(response, packet);
    const std::vector<double> density = intensity(packet);
    std::vector<double> t_re(density.size()), t_im(density.size());
    std::vector<double> r_re(density.size()), r_im(density.size());
    for (std::size_t i = 0; i < density.size(); ++i)
    {
        t_re[i] = response.t[i].real() * density[i];
        t_im[i] = response.t[i].imag() * density[i];
        r_re[i] = response.r[i].real() * density[i];
        r_im[i] = response.r[i].imag() * density[i];
    }
    const Complex overlap_t{integrate(response.grid, t_re), integrate(response.grid, t_im)};
    const Complex overlap_r{integrate(response.grid, r_re), integrate(response.grid, r_im)};
    return Fidelity{std::norm(overlap_t), std::norm(overlap_r)};
}

SwitchReport switch_report(const SpectralResponse &on, const SpectralResponse &off,
                           const WavePacket &packet)
{
    if (!on.grid.same_as(off.grid))
    {
        throw std::invalid_argument("on and off responses must share a grid");
    }
    const Efficiency eff_on = efficiency(on, packet);
    const Efficiency eff_off = efficiency(off, packet);
    const Fidelity fid_on = fidelity(on, packet);
    const double floored_on = std::max(eff_on.p_t, 1e-15);
    return SwitchReport{
        eff_on.e_t,
        eff_on.e_r,
        fid_on.f_t,
        fid_on.f_r,
        eff_on.p_t,
        eff_on.p_r,
        eff_on.p_r - eff_off.p_r,
        10.0 * std::log10(eff_off.p_t / floored_on),
    };
}

} // namespace wqed::packet
