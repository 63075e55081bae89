#include "wqed/oracles.hpp"

#include "wqed/crw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wqed::oracle
{

namespace
{

constexpr Complex kImag{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
// Packet width for the stopping rule, measured as the FWHM of |u|^2.
constexpr double kFwhmPerSigma = 2.3548200450309493; // 2 sqrt(2 ln 2)

// Tridiagonal elimination with partial pivoting. The scattering rows are
// not diagonally dominant (plain Thomas pivots can pass arbitrarily close
// to zero along the free chain), so row interchanges and one extra
// superdiagonal of fill-in are required. Solves in place into rhs and
// returns max|pivot| / min|pivot| as a cheap conditioning proxy.
// Layout: row i reads  sub[i-1] x_{i-1} + diag[i] x_i + super[i] x_{i+1}.
double solve_tridiagonal(std::vector<Complex> &sub, std::vector<Complex> &diag,
                         std::vector<Complex> &super, std::vector<Complex> &rhs)
{
    const std::size_t n = diag.size();
    std::vector<Complex> fill(n >= 2 ? n - 2 : 0, Complex{0.0, 0.0});
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        if (std::abs(diag[i]) >= std::abs(sub[i]))
        {
            if (diag[i] == Complex{0.0, 0.0})
            {
                throw SingularSystemError("singular chain system: zero pivot at row " +
                                          std::to_string(i));
            }
            const Complex factor = sub[i] / diag[i];
            diag[i + 1] -= factor * super[i];
            rhs[i + 1] -= factor * rhs[i];
        }
        else
        {
            // Interchange rows i and i+1.
            const Complex factor = diag[i] / sub[i];
            diag[i] = sub[i];
            const Complex temp = diag[i + 1];
            diag[i + 1] = super[i] - factor * temp;
            if (i + 2 < n)
            {
                fill[i] = super[i + 1];
                super[i + 1] = -factor * fill[i];
            }
            super[i] = temp;
            std::swap(rhs[i], rhs[i + 1]);
            rhs[i + 1] -= factor * rhs[i];
        }
    }
    double max_pivot = 0.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
    {
        const double pivot = std::abs(diag[i]);
        max_pivot = std::max(max_pivot, pivot);
        min_pivot = std::min(min_pivot, pivot);
    }
    if (min_pivot == 0.0)
    {
        throw SingularSystemError("singular chain system: zero pivot, ratio " +
                                  std::to_string(max_pivot / 1e-300));
    }

    rhs[n - 1] /= diag[n - 1];
    if (n > 1)
    {
        rhs[n - 2] = (rhs[n - 2] - super[n - 2] * rhs[n - 1]) / diag[n - 2];
    }
    for (std::size_t i = n - 2; i-- > 0;)
    {
        rhs[i] = (rhs[i] - super[i] * rhs[i + 1] - fill[i] * rhs[i + 2]) / diag[i];
    }
    return max_pivot / min_pivot;
}

std::vector<EmitterAttachment> resolve_attachments(const CrwParams &params,
                                                   const std::vector<EmitterAttachment> &given)
{
    if (!given.empty())
    {
        return given;
    }
    return {EmitterAttachment{0, params.g, params.omega_e}};
}

} // namespace

ChainSolution finite_chain_solve(const FiniteChainProblem &problem)
{
    require_valid(problem.params);
    if (problem.n_sites < 41 || problem.n_sites % 2 == 0)
    {
        throw std::invalid_argument("chain must have an odd number of sites, at least 41");
    }
    if (!(problem.k_in > 0.0 && problem.k_in < kPi))
    {
        throw OutsideBandError("k_in must lie strictly inside (0, pi)");
    }
    const int half = problem.n_sites / 2;
    const auto attachments = resolve_attachments(problem.params, problem.attachments);
    for (const auto &attachment : attachments)
    {
        if (attachment.site < -half + 10 || attachment.site > half - 10)
        {
            throw std::invalid_argument("emitter sites must sit at least 10 sites from the ends");
        }
        if (!std::isfinite(attachment.g) || attachment.g < 0.0 ||
            !std::isfinite(attachment.omega_e))
        {
            throw std::invalid_argument("invalid emitter attachment");
        }
    }

    const double k = problem.k_in;
    const double xi = problem.params.xi;
    const double omega_k = problem.params.omega_c - 2.0 * xi * std::cos(k);
    const std::size_t n = static_cast<std::size_t>(problem.n_sites);

    // Bulk rows: 2 xi cos(k) u_j - xi (u_{j-1} + u_{j+1}) + (g^2/De) u_j = 0.
    // sub[i] couples row i+1 to column i.
    std::vector<Complex> sub(n - 1, Complex{-xi, 0.0});
    std::vector<Complex> diag(n, Complex{2.0 * xi * std::cos(k), 0.0});
    std::vector<Complex> super(n - 1, Complex{-xi, 0.0});
    std::vector<Complex> rhs(n, Complex{0.0, 0.0});

    for (const auto &attachment : attachments)
    {
        const std::size_t row = static_cast<std::size_t>(attachment.site + half);
        const double delta_e = omega_k - attachment.omega_e;
        if (delta_e == 0.0)
        {
            // Resonant emitter: u_e De = g u_site forces u_site = 0 when g > 0.
            if (attachment.g > 0.0)
            {
                sub[row - 1] = Complex{0.0, 0.0};
                diag[row] = Complex{1.0, 0.0};
                super[row] = Complex{0.0, 0.0};
                rhs[row] = Complex{0.0, 0.0};
            }
        }
        else
        {
            diag[row] += attachment.g * attachment.g / delta_e;
        }
    }

    // Boundary rows eliminate r and t from the plane-wave forms on the two
    // outermost sites:
    //   u_{-M+1} - e^{-ik} u_{-M} = 2 i sin(k) e^{-ikM}
    //   u_{M} - e^{ik} u_{M-1}   = 0
    const Complex phase = std::polar(1.0, k);
    const Complex edge = std::polar(1.0, -k * static_cast<double>(half));
    diag[0] = -std::conj(phase);
    super[0] = Complex{1.0, 0.0};
    rhs[0] = 2.0 * kImag * std::sin(k) * edge;
    sub[n - 2] = -phase;
    diag[n - 1] = Complex{1.0, 0.0};
    rhs[n - 1] = Complex{0.0, 0.0};

    const double condition = solve_tridiagonal(sub, diag, super, rhs);

    const Complex u_left = rhs[0];
    const Complex u_right = rhs[n - 1];
    // u_{-M} = e^{-ikM} + r e^{ikM} and u_{M} = t e^{ikM}.
    const Complex r = (u_left - edge) * edge;
    const Complex t = u_right * edge;
    return ChainSolution{t, r, condition};
}

namespace
{

struct LatticeState
{
    std::vector<Complex> sites;
    std::vector<Complex> emitters;
};

// du/dt = -i H u in the frame rotating at omega_c.
void apply_hamiltonian(const PropagationSpec &spec, const std::vector<EmitterAttachment> &emitters,
                       int half, const LatticeState &in, LatticeState &out)
{
    const double xi = spec.params.xi;
    const std::size_t n = in.sites.size();
    out.sites.resize(n);
    out.emitters.resize(in.emitters.size());
    out.sites[0] = -xi * in.sites[1];
    for (std::size_t j = 1; j + 1 < n; ++j)
    {
        out.sites[j] = -xi * (in.sites[j - 1] + in.sites[j + 1]);
    }
    out.sites[n - 1] = -xi * in.sites[n - 2];
    for (std::size_t m = 0; m < emitters.size(); ++m)
    {
        const std::size_t row = static_cast<std::size_t>(emitters[m].site + half);
        out.sites[row] += emitters[m].g * in.emitters[m];
        out.emitters[m] =
            (emitters[m].omega_e - spec.params.omega_c) * in.emitters[m] + emitters[m].g * in.sites[row];
    }
    for (auto &v : out.sites)
    {
        v *= -kImag;
    }
    for (auto &v : out.emitters)
    {
        v *= -kImag;
    }
}

void axpy(LatticeState &y, double a, const LatticeState &x)
{
    for (std::size_t i = 0; i < y.sites.size(); ++i)
    {
        y.sites[i] += a * x.sites[i];
    }
    for (std::size_t i = 0; i < y.emitters.size(); ++i)
    {
        y.emitters[i] += a * x.emitters[i];
    }
}

double total_norm(const LatticeState &state)
{
    double sum = 0.0;
    for (const auto &v : state.sites)
    {
        sum += std::norm(v);
    }
    for (const auto &v : state.emitters)
    {
        sum += std::norm(v);
    }
    return sum;
}

} // namespace

PropagationResult propagate_packet(const PropagationSpec &spec)
{
    require_valid(spec.params);
    if (spec.n_sites < 41 || spec.n_sites % 2 == 0)
    {
        throw std::invalid_argument("lattice must have an odd number of sites, at least 41");
    }
    if (!(spec.packet.k0 > 0.0 && spec.packet.k0 < kPi))
    {
        throw OutsideBandError("carrier k0 must lie strictly inside (0, pi)");
    }
    if (spec.packet.sigma_sites <= 0.0)
    {
        throw std::invalid_argument("packet width must be positive");
    }
    const int half = spec.n_sites / 2;
    const auto emitters = spec.attachments;
    for (const auto &attachment : emitters)
    {
        if (attachment.site < -half + 10 || attachment.site > half - 10)
        {
            throw std::invalid_argument("emitter sites must sit at least 10 sites from the ends");
        }
    }
    const double reference =
        emitters.empty() ? 0.0 : static_cast<double>(emitters.front().site);

    const double v_g = 2.0 * spec.params.xi * std::sin(spec.packet.k0);
    const double dt = spec.dt > 0.0 ? spec.dt : 0.05 / spec.params.xi;
    const double t_max =
        spec.t_max > 0.0 ? spec.t_max : 2.0 * static_cast<double>(spec.n_sites) / v_g;
    const double arrival = std::abs(spec.packet.center_site - reference) / v_g;

    const std::size_t n = static_cast<std::size_t>(spec.n_sites);
    LatticeState state{std::vector<Complex>(n), std::vector<Complex>(emitters.size())};
    for (std::size_t j = 0; j < n; ++j)
    {
        const double x = static_cast<double>(static_cast<int>(j) - half);
        const double arg = (x - spec.packet.center_site) / (2.0 * spec.packet.sigma_sites);
        state.sites[j] = std::polar(std::exp(-arg * arg), spec.packet.k0 * x);
    }
    const double norm0 = std::sqrt(total_norm(state));
    for (auto &v : state.sites)
    {
        v /= norm0;
    }

    LatticeState k1, k2, k3, k4, work;
    PropagationResult result{};
    const int check_every = std::max(1, static_cast<int>(std::round(1.0 / (spec.params.xi * dt))));
    int step = 0;
    double time = 0.0;
    bool measured = false;
    while (time < t_max)
    {
        // Classical 4th-order step.
        apply_hamiltonian(spec, emitters, half, state, k1);
        work = state;
        axpy(work, 0.5 * dt, k1);
        apply_hamiltonian(spec, emitters, half, work, k2);
        work = state;
        axpy(work, 0.5 * dt, k2);
        apply_hamiltonian(spec, emitters, half, work, k3);
        work = state;
        axpy(work, dt, k3);
        apply_hamiltonian(spec, emitters, half, work, k4);
        axpy(state, dt / 6.0, k1);
        axpy(state, dt / 3.0, k2);
        axpy(state, dt / 3.0, k3);
        axpy(state, dt / 6.0, k4);
        time += dt;
        ++step;

        if (spec.sample_stride > 0 && step % spec.sample_stride == 0)
        {
            for (std::size_t j = 0; j < n; j += static_cast<std::size_t>(std::max(1, spec.site_stride)))
            {
                result.trajectory.push_back(
                    TrajectorySample{time, static_cast<int>(j) - half, std::norm(state.sites[j])});
            }
        }
        if (step % check_every != 0)
        {
            continue;
        }

        double edge_mass = 0.0;
        for (std::size_t j = 0; j < 3; ++j)
        {
            edge_mass += std::norm(state.sites[j]) + std::norm(state.sites[n - 1 - j]);
        }
        if (edge_mass > 1e-10)
        {
            throw PacketBoundaryError("packet touched boundary");
        }
        const double norm = total_norm(state);
        if (std::abs(norm - 1.0) > 1e-6)
        {
            throw NormDriftError("norm drift exceeded 1e-6; integrator failure");
        }

        double population = 0.0;
        for (const auto &v : state.emitters)
        {
            population = std::max(population, std::norm(v));
        }
        double spread = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            spread += std::norm(state.sites[j]) *
                      std::abs(static_cast<double>(static_cast<int>(j) - half) - reference);
        }
        if (time >= arrival && population < 1e-6 &&
            spread > 5.0 * kFwhmPerSigma * spec.packet.sigma_sites)
        {
            result.emitter_population = population;
            result.norm_drift = std::abs(norm - 1.0);
            result.measured_at = time;
            measured = true;
            break;
        }
    }
    if (!measured)
    {
        throw std::runtime_error("scattering did not complete before t_max; run invalid");
    }

    const std::size_t reference_row = static_cast<std::size_t>(static_cast<int>(reference) + half);
    double transmitted = 0.0;
    double reflected = 0.0;
    for (std::size_t j = 0; j < n; ++j)
    {
        if (j > reference_row)
        {
            transmitted += std::norm(state.sites[j]);
        }
        else if (j < reference_row)
        {
            reflected += std::norm(state.sites[j]);
        }
    }
    result.transmitted = transmitted;
    result.reflected = reflected;
    return result;
}

double carrier_to_detuning(double k0, const CrwParams &params)
{
    if (!(k0 > 0.0 && k0 < kPi))
    {
        throw OutsideBandError("carrier k0 must lie strictly inside (0, pi)");
    }
    return crw::dispersion(params, k0) - params.omega_e;
}

} // namespace wqed::oracle
