#include "wqed/core.hpp"

#include <cmath>
#include <cstddef>

namespace wqed
{

namespace
{

bool finite(double x)
{
    return std::isfinite(x);
}

std::optional<Violation> check_rate(double value, const char *field)
{
    if (!finite(value))
    {
        return Violation{field, std::string(field) + " not finite"};
    }
    if (value < 0.0)
    {
        return Violation{field, std::string(field) + " negative"};
    }
    return std::nullopt;
}

std::optional<Violation> check_frequency(double value, const char *field)
{
    if (!finite(value))
    {
        return Violation{field, std::string(field) + " not finite"};
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(Frame frame)
{
    switch (frame)
    {
    case Frame::Absolute:
        return "absolute";
    case Frame::DetuningFromEmitter:
        return "detuning-from-emitter";
    case Frame::DetuningFromCavity:
        return "detuning-from-cavity";
    }
    return "absolute";
}

std::optional<Frame> frame_from_string(std::string_view name)
{
    if (name == "absolute")
    {
        return Frame::Absolute;
    }
    if (name == "detuning-from-emitter")
    {
        return Frame::DetuningFromEmitter;
    }
    if (name == "detuning-from-cavity")
    {
        return Frame::DetuningFromCavity;
    }
    return std::nullopt;
}

std::optional<Violation> validate(const EmitterWaveguideParams &params)
{
    if (auto v = check_rate(params.gamma_right, "gamma_right"))
    {
        return v;
    }
    if (auto v = check_rate(params.gamma_left, "gamma_left"))
    {
        return v;
    }
    if (auto v = check_rate(params.gamma_loss, "gamma_loss"))
    {
        return v;
    }
    return check_frequency(params.omega_e, "omega_e");
}

std::optional<Violation> validate(const CavityParams &params)
{
    if (auto v = check_rate(params.g, "g"))
    {
        return v;
    }
    if (auto v = check_rate(params.kappa, "kappa"))
    {
        return v;
    }
    if (auto v = check_rate(params.gamma_loss, "gamma_loss"))
    {
        return v;
    }
    if (auto v = check_frequency(params.omega_c, "omega_c"))
    {
        return v;
    }
    if (auto v = check_frequency(params.omega_e, "omega_e"))
    {
        return v;
    }
    if (auto v = check_rate(params.gamma_right, "gamma_right"))
    {
        return v;
    }
    return check_rate(params.gamma_left, "gamma_left");
}

std::optional<Violation> validate(const CrwParams &params)
{
    if (auto v = check_frequency(params.omega_c, "omega_c"))
    {
        return v;
    }
    if (!finite(params.xi) || params.xi <= 0.0)
    {
        return Violation{"xi", "xi must be positive"};
    }
    if (auto v = check_rate(params.g, "g"))
    {
        return v;
    }
    if (auto v = check_frequency(params.omega_e, "omega_e"))
    {
        return v;
    }
    return check_rate(params.gamma_loss, "gamma_loss");
}

namespace
{

template <typename Params> void require_valid_impl(const Params &params)
{
    if (auto v = validate(params))
    {
        throw std::invalid_argument(v->message);
    }
}

} // namespace

void require_valid(const EmitterWaveguideParams &params)
{
    require_valid_impl(params);
}

void require_valid(const CavityParams &params)
{
    require_valid_impl(params);
}

void require_valid(const CrwParams &params)
{
    require_valid_impl(params);
}

FrequencyGrid::FrequencyGrid(std::vector<double> points, Frame frame)
    : points_(std::move(points)), frame_(frame), uniform_(true)
{
    if (points_.size() < 2)
    {
        throw std::invalid_argument("grid needs at least 2 points");
    }
    for (double x : points_)
    {
        if (!std::isfinite(x))
        {
            throw std::invalid_argument("grid point not finite");
        }
    }
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    {
        if (!(points_[i] < points_[i + 1]))
        {
            throw std::invalid_argument("grid points must be strictly increasing");
        }
    }
    const double h0 = points_[1] - points_[0];
    for (std::size_t i = 1; i + 1 < points_.size(); ++i)
    {
        const double h = points_[i + 1] - points_[i];
        if (std::abs(h - h0) > 1e-9 * std::max(std::abs(h0), std::abs(h)))
        {
            uniform_ = false;
            break;
        }
    }
}

double FrequencyGrid::spacing() const
{
    return (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
}

bool FrequencyGrid::same_as(const FrequencyGrid &other) const
{
    return frame_ == other.frame_ && points_ == other.points_;
}

FrequencyGrid make_grid(double center, double half_width, std::size_t n, Frame frame)
{
    if (!std::isfinite(center) || !std::isfinite(half_width))
    {
        throw std::invalid_argument("grid bounds not finite");
    }
    if (half_width <= 0.0)
    {
        throw std::invalid_argument("half_width must be positive");
    }
    if (n < 2)
    {
        throw std::invalid_argument("grid needs at least 2 points");
    }
    std::vector<double> points(n);
    const double m = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
    {
        // 2i/(n-1) - 1 is exactly 0 at the midpoint of an odd-sized grid.
        points[i] = center + half_width * (2.0 * static_cast<double>(i) / m - 1.0);
    }
    return FrequencyGrid(std::move(points), frame);
}

std::optional<Violation> validate(const SpectralResponse &response)
{
    if (response.t.size() != response.grid.size() || response.r.size() != response.grid.size())
    {
        return Violation{"t", "amplitude arrays must match grid size"};
    }
    for (std::size_t i = 0; i < response.grid.size(); ++i)
    {
        const double total = std::norm(response.t[i]) + std::norm(response.r[i]);
        if (!(total <= 1.0 + 1e-12))
        {
            return Violation{"t", "|t|^2 + |r|^2 exceeds 1 at grid point " + std::to_string(i)};
        }
    }
    return std::nullopt;
}

namespace detail
{

bool all_finite(std::initializer_list<double> values)
{
    for (double v : values)
    {
        if (!std::isfinite(v))
        {
            return false;
        }
    }
    return true;
}

} // namespace detail

} // namespace wqed
