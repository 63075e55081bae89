#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wqed
{

using Complex = std::complex<double>;

// Reference frame of the frequencies stored on a grid.
enum class Frame
{
    Absolute,            // angular frequency omega
    DetuningFromEmitter, // omega - omega_e
    DetuningFromCavity,  // omega - omega_c
};

std::string_view to_string(Frame frame);
std::optional<Frame> frame_from_string(std::string_view name);

// Two-level emitter in a continuous waveguide. Frequencies live in the
// shifted frame where the linearization point has been absorbed into
// omega_e; only ratios of rates and detunings matter.
struct EmitterWaveguideParams
{
    double gamma_right = 0.0; // decay rate into the right-moving mode
    double gamma_left = 0.0;  // decay rate into the left-moving mode
    double gamma_loss = 0.0;  // decay rate into non-guided modes
    double omega_e = 0.0;     // emitter transition frequency
};

// Two-level emitter inside a single-mode cavity that is side coupled to
// a waveguide. gamma_right/gamma_left are the cavity-waveguide rates.
struct CavityParams
{
    double g = 0.0;           // emitter-cavity coupling rate
    double kappa = 0.0;       // cavity intrinsic loss rate
    double gamma_loss = 0.0;  // emitter non-guided loss rate
    double omega_c = 0.0;     // cavity resonance frequency
    double omega_e = 0.0;     // emitter transition frequency
    double gamma_right = 0.0; // cavity decay into the right-moving mode
    double gamma_left = 0.0;  // cavity decay into the left-moving mode
};

// Infinite chain of identical coupled resonators with one emitter
// attached to a single site. Lattice constant is fixed to 1, so wave
// numbers are dimensionless and the band is [omega_c - 2 xi, omega_c + 2 xi].
struct CrwParams
{
    double omega_c = 0.0;    // shared cavity resonance frequency
    double xi = 0.0;         // nearest-neighbor hopping rate, > 0
    double g = 0.0;          // emitter-cavity coupling rate
    double omega_e = 0.0;    // emitter transition frequency
    double gamma_loss = 0.0; // experimental: applied as omega_e -> omega_e - i gamma/2
};

// First violated invariant of a parameter set, with the offending field.
struct Violation
{
    std::string field;
    std::string message;
};

std::optional<Violation> validate(const EmitterWaveguideParams &params);
std::optional<Violation> validate(const CavityParams &params);
std::optional<Violation> validate(const CrwParams &params);

// Throws std::invalid_argument when validation fails.
void require_valid(const EmitterWaveguideParams &params);
void require_valid(const CavityParams &params);
void require_valid(const CrwParams &params);

// Strictly increasing list of frequencies (or detunings, per the frame tag).
class FrequencyGrid
{
public:
    FrequencyGrid(std::vector<double> points, Frame frame);

    const std::vector<double> &points() const { return points_; }
    Frame frame() const { return frame_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

    bool uniform() const { return uniform_; }
    // Mean spacing; exact spacing when uniform() is true.
    double spacing() const;

    // Same frame and pointwise-identical points.
    bool same_as(const FrequencyGrid &other) const;

private:
    std::vector<double> points_;
    Frame frame_;
    bool uniform_;
};

// Uniform grid of n >= 2 points on [center - half_width, center + half_width].
// For odd n the center is hit exactly.
FrequencyGrid make_grid(double center, double half_width, std::size_t n,
                        Frame frame = Frame::DetuningFromEmitter);

// Complex transmission/reflection pair at a single frequency.
struct Amplitudes
{
    Complex t;
    Complex r;
};

// Frequency grid paired with complex t(omega), r(omega) samples.
struct SpectralResponse
{
    FrequencyGrid grid;
    std::vector<Complex> t;
    std::vector<Complex> r;
};

// Checks the per-point bound |t|^2 + |r|^2 <= 1 + 1e-12.
std::optional<Violation> validate(const SpectralResponse &response);

// Sweep output shared by the closed-form backends: loss_per_point is
// 1 - |t|^2 - |r|^2, identically ~0 for lossless models.
struct DetuningSweepResult
{
    SpectralResponse response;
    std::vector<double> loss_per_point;
};

// Requested frequency lies outside the propagating band of a lattice model.
class OutsideBandError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

namespace detail
{
bool all_finite(std::initializer_list<double> values);
} // namespace detail

} // namespace wqed
