#pragma once

#include "wqed/core.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed::cli
{

// Input/validation failure carrying the offending field.
class ScenarioError : public std::runtime_error
{
public:
    ScenarioError(std::string field, const std::string &message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field))
    {
    }

    const std::string &field() const { return field_; }

private:
    std::string field_;
};

struct SweepSpec
{
    Frame frame = Frame::DetuningFromEmitter;
    double center = 0.0;
    double half_width = 10.0;
    int points = 1001;
};

struct PacketSpec
{
    double center = 0.0; // same frame as the sweep
    double sigma = 0.1;
};

struct CascadeSpec
{
    std::string backend = "continuum"; // continuum | crw
    int count = 1;
    std::vector<double> separations;
    // Linear dispersion k = k0 + (omega - omega0) / v_g for the continuum
    // backend; the crw backend inverts the lattice dispersion instead.
    double v_g = 1.0;
    double k0 = 0.0;
    double omega0 = 0.0;
    EmitterWaveguideParams site_emitter;
    CrwParams site_crw;
};

struct OptimizeParam
{
    std::string name; // e.g. "switch.omega_e", "packet.center", "cavity.g"
    double lo = 0.0;
    double hi = 0.0;
};

struct OptimizeSpec
{
    std::string objective; // contrast | e_r | f_t
    std::vector<OptimizeParam> params;
    int grid_points = 33; // per axis
};

struct OracleSpec
{
    std::string mode = "chain"; // chain | propagate
    int n_sites = 401;
    int k_count = 21;
    double tolerance = 1e-8;
    // propagate mode:
    double carrier_delta = 0.0;
    double sigma_sites = 80.0;
    double center_site = -500.0;
    double propagate_tolerance = 0.02;
    int sample_stride = 0;
    int site_stride = 8;
    std::string dump_path;
};

struct Scenario
{
    int schema = 1;
    std::string model; // continuum | cavity | crw | cascade
    EmitterWaveguideParams continuum;
    CavityParams cavity;
    CrwParams crw;
    CascadeSpec cascade;
    SweepSpec sweep;
    std::optional<PacketSpec> packet;
    std::map<std::string, double> switch_overrides; // off-state model fields
    std::optional<OptimizeSpec> optimize;
    std::optional<OracleSpec> oracle;
    std::string output_path;
    std::string raw_text; // original file contents, hashed into the output
};

// Parses the flat sectioned key = value format. Unknown keys, malformed
// numbers, and invariant violations raise ScenarioError.
Scenario parse_scenario(const std::string &text);

// Applies a value to a named parameter ("continuum.omega_e",
// "packet.sigma", "switch.g", ...). Used by the switch and optimizer paths.
void set_parameter(Scenario &scenario, const std::string &name, double value);

} // namespace wqed::cli
