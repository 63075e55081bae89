#include "wqed/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace wqed::cli
{

namespace
{

std::string trim(const std::string &s)
{
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
    {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
    {
        --end;
    }
    return s.substr(begin, end - begin);
}

double parse_number(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    double result = 0.0;
    const char *begin = t.data();
    const char *end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, result);
    if (ec != std::errc{} || ptr != end)
    {
        throw ScenarioError(key, "expected a number, got '" + t + "'");
    }
    return result;
}

// Sectioned key = value pairs flattened to "section.key".
class KeyReader
{
public:
    explicit KeyReader(const std::string &text)
    {
        std::istringstream stream(text);
        std::string line;
        std::string section;
        int line_number = 0;
        while (std::getline(stream, line))
        {
            ++line_number;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';')
            {
                continue;
            }
            if (stripped.front() == '[')
            {
                if (stripped.back() != ']')
                {
                    throw ScenarioError("", "line " + std::to_string(line_number) +
                                                ": unterminated section header");
                }
                section = trim(stripped.substr(1, stripped.size() - 2));
                continue;
            }
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos)
            {
                throw ScenarioError("", "line " + std::to_string(line_number) +
                                            ": expected key = value");
            }
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty())
            {
                throw ScenarioError("", "line " + std::to_string(line_number) + ": empty key");
            }
            const std::string full = section.empty() ? key : section + "." + key;
            if (!values_.emplace(full, value).second)
            {
                throw ScenarioError(full, "duplicate key");
            }
        }
    }

    bool has(const std::string &key) const { return values_.count(key) != 0; }

    bool has_section(const std::string &section) const
    {
        const std::string prefix = section + ".";
        auto it = values_.lower_bound(prefix);
        return it != values_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
    }

    std::optional<std::string> text(const std::string &key)
    {
        auto it = values_.find(key);
        if (it == values_.end())
        {
            return std::nullopt;
        }
        used_.insert(key);
        return it->second;
    }

    std::string required_text(const std::string &key)
    {
        auto value = text(key);
        if (!value)
        {
            throw ScenarioError(key, "missing required key");
        }
        return *value;
    }

    double number(const std::string &key, double fallback)
    {
        auto value = text(key);
        return value ? parse_number(key, *value) : fallback;
    }

    double required_number(const std::string &key)
    {
        return parse_number(key, required_text(key));
    }

    int integer(const std::string &key, int fallback)
    {
        auto value = text(key);
        if (!value)
        {
            return fallback;
        }
        const double parsed = parse_number(key, *value);
        const int result = static_cast<int>(parsed);
        if (static_cast<double>(result) != parsed)
        {
            throw ScenarioError(key, "expected an integer");
        }
        return result;
    }

    std::vector<double> number_list(const std::string &key)
    {
        std::vector<double> out;
        auto value = text(key);
        if (!value)
        {
            return out;
        }
        std::string item;
        std::istringstream stream(*value);
        while (std::getline(stream, item, ','))
        {
            out.push_back(parse_number(key, trim(item)));
        }
        return out;
    }

    // Every key must be consumed; typos fail loudly.
    void finish() const
    {
        for (const auto &[key, value] : values_)
        {
            if (!used_.count(key))
            {
                throw ScenarioError(key, "unknown key");
            }
        }
    }

    std::map<std::string, std::string> section_entries(const std::string &section)
    {
        std::map<std::string, std::string> out;
        const std::string prefix = section + ".";
        for (const auto &[key, value] : values_)
        {
            if (key.compare(0, prefix.size(), prefix) == 0)
            {
                out.emplace(key.substr(prefix.size()), value);
                used_.insert(key);
            }
        }
        return out;
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

void read_emitter(KeyReader &reader, const std::string &section, EmitterWaveguideParams &params)
{
    params.gamma_right = reader.number(section + ".gamma_right", params.gamma_right);
    params.gamma_left = reader.number(section + ".gamma_left", params.gamma_left);
    params.gamma_loss = reader.number(section + ".gamma_loss", params.gamma_loss);
    params.omega_e = reader.number(section + ".omega_e", params.omega_e);
}

void read_cavity(KeyReader &reader, const std::string &section, CavityParams &params)
{
    params.g = reader.number(section + ".g", params.g);
    params.kappa = reader.number(section + ".kappa", params.kappa);
    params.gamma_loss = reader.number(section + ".gamma_loss", params.gamma_loss);
    params.omega_c = reader.number(section + ".omega_c", params.omega_c);
    params.omega_e = reader.number(section + ".omega_e", params.omega_e);
    params.gamma_right = reader.number(section + ".gamma_right", params.gamma_right);
    params.gamma_left = reader.number(section + ".gamma_left", params.gamma_left);
}

void read_crw(KeyReader &reader, const std::string &section, CrwParams &params)
{
    params.omega_c = reader.number(section + ".omega_c", params.omega_c);
    params.xi = reader.number(section + ".xi", params.xi);
    params.g = reader.number(section + ".g", params.g);
    params.omega_e = reader.number(section + ".omega_e", params.omega_e);
    params.gamma_loss = reader.number(section + ".gamma_loss", params.gamma_loss);
}

template <typename Params>
void check_params(const Params &params, const std::string &section)
{
    if (auto violation = validate(params))
    {
        throw ScenarioError(section + "." + violation->field, violation->message);
    }
}

} // namespace

Scenario parse_scenario(const std::string &text)
{
    KeyReader reader(text);
    Scenario scenario;
    scenario.raw_text = text;

    scenario.schema = reader.integer("schema", 0);
    if (scenario.schema != 1)
    {
        throw ScenarioError("schema", "expected schema = 1");
    }
    scenario.model = reader.required_text("model");
    if (scenario.model != "continuum" && scenario.model != "cavity" && scenario.model != "crw" &&
        scenario.model != "cascade")
    {
        throw ScenarioError("model", "unknown model '" + scenario.model + "'");
    }

    read_emitter(reader, "continuum", scenario.continuum);
    read_cavity(reader, "cavity", scenario.cavity);
    if (reader.has("crw.xi") || scenario.model == "crw")
    {
        scenario.crw.xi = 1.0; // so an absent optional block stays valid
        read_crw(reader, "crw", scenario.crw);
    }

    if (scenario.model == "continuum")
    {
        check_params(scenario.continuum, "continuum");
    }
    else if (scenario.model == "cavity")
    {
        check_params(scenario.cavity, "cavity");
    }
    else if (scenario.model == "crw")
    {
        check_params(scenario.crw, "crw");
    }

    // Cascade block.
    if (scenario.model == "cascade")
    {
        scenario.cascade.backend = reader.text("cascade.backend").value_or("continuum");
        if (scenario.cascade.backend != "continuum" && scenario.cascade.backend != "crw")
        {
            throw ScenarioError("cascade.backend", "expected continuum or crw");
        }
        scenario.cascade.count = reader.integer("cascade.count", 1);
        if (scenario.cascade.count < 1)
        {
            throw ScenarioError("cascade.count", "need at least one site");
        }
        std::vector<double> separations = reader.number_list("cascade.separations");
        const double uniform = reader.number("cascade.separation", 0.0);
        if (separations.empty() && scenario.cascade.count > 1)
        {
            if (uniform <= 0.0)
            {
                throw ScenarioError("cascade.separation", "must be positive");
            }
            separations.assign(static_cast<std::size_t>(scenario.cascade.count) - 1, uniform);
        }
        if (separations.size() + 1 != static_cast<std::size_t>(scenario.cascade.count))
        {
            throw ScenarioError("cascade.separations", "need exactly count - 1 entries");
        }
        scenario.cascade.separations = std::move(separations);
        scenario.cascade.v_g = reader.number("cascade.v_g", 1.0);
        scenario.cascade.k0 = reader.number("cascade.k0", 0.0);
        scenario.cascade.omega0 = reader.number("cascade.omega0", 0.0);
        if (scenario.cascade.v_g <= 0.0)
        {
            throw ScenarioError("cascade.v_g", "must be positive");
        }
        if (scenario.cascade.backend == "continuum")
        {
            read_emitter(reader, "cascade.site", scenario.cascade.site_emitter);
            check_params(scenario.cascade.site_emitter, "cascade.site");
        }
        else
        {
            scenario.cascade.site_crw.xi = 1.0;
            read_crw(reader, "cascade.site", scenario.cascade.site_crw);
            check_params(scenario.cascade.site_crw, "cascade.site");
        }
    }

    // Sweep block.
    const std::string frame_name =
        reader.text("sweep.frame").value_or(std::string(to_string(scenario.sweep.frame)));
    const auto frame = frame_from_string(frame_name);
    if (!frame)
    {
        throw ScenarioError("sweep.frame", "unknown frame '" + frame_name + "'");
    }
    scenario.sweep.frame = *frame;
    scenario.sweep.center = reader.number("sweep.center", scenario.sweep.center);
    scenario.sweep.half_width = reader.number("sweep.half_width", scenario.sweep.half_width);
    scenario.sweep.points = reader.integer("sweep.points", scenario.sweep.points);
    if (scenario.sweep.points < 2)
    {
        throw ScenarioError("sweep.points", "need at least 2 grid points");
    }
    if (!(scenario.sweep.half_width > 0.0))
    {
        throw ScenarioError("sweep.half_width", "must be positive");
    }

    // Packet block.
    if (reader.has_section("packet"))
    {
        PacketSpec packet;
        packet.center = reader.number("packet.center", 0.0);
        packet.sigma = reader.required_number("packet.sigma");
        if (!(packet.sigma > 0.0))
        {
            throw ScenarioError("packet.sigma", "must be positive");
        }
        scenario.packet = packet;
    }

    // Switch block: numeric off-state overrides of the model block.
    for (const auto &[key, value] : reader.section_entries("switch"))
    {
        scenario.switch_overrides[key] = parse_number("switch." + key, value);
    }

    // Optimize block.
    if (reader.has_section("optimize"))
    {
        OptimizeSpec optimize;
        optimize.objective = reader.required_text("optimize.objective");
        if (optimize.objective != "contrast" && optimize.objective != "e_r" &&
            optimize.objective != "f_t")
        {
            throw ScenarioError("optimize.objective", "expected contrast, e_r, or f_t");
        }
        optimize.grid_points = reader.integer("optimize.grid_points", 33);
        if (optimize.grid_points < 2)
        {
            throw ScenarioError("optimize.grid_points", "need at least 2 points per axis");
        }
        for (int i = 1; i <= 3; ++i)
        {
            const std::string key = "optimize.param" + std::to_string(i);
            const auto spec = reader.text(key);
            if (!spec)
            {
                continue;
            }
            std::vector<std::string> parts;
            std::istringstream stream(*spec);
            std::string item;
            while (std::getline(stream, item, ','))
            {
                parts.push_back(trim(item));
            }
            if (parts.size() != 3)
            {
                throw ScenarioError(key, "expected 'name, lo, hi'");
            }
            OptimizeParam param;
            param.name = parts[0];
            param.lo = parse_number(key, parts[1]);
            param.hi = parse_number(key, parts[2]);
            if (!std::isfinite(param.lo) || !std::isfinite(param.hi))
            {
                throw ScenarioError(key, "bounds must be finite");
            }
            if (param.hi < param.lo)
            {
                throw ScenarioError(key, "upper bound below lower bound");
            }
            optimize.params.push_back(param);
        }
        if (optimize.params.empty())
        {
            throw ScenarioError("optimize.param1", "need 1 to 3 free parameters");
        }
        scenario.optimize = optimize;
    }

    // Oracle block.
    if (reader.has_section("oracle"))
    {
        OracleSpec oracle;
        oracle.mode = reader.text("oracle.mode").value_or("chain");
        if (oracle.mode != "chain" && oracle.mode != "propagate")
        {
            throw ScenarioError("oracle.mode", "expected chain or propagate");
        }
        oracle.n_sites = reader.integer("oracle.n_sites", oracle.mode == "chain" ? 401 : 4001);
        oracle.k_count = reader.integer("oracle.k_count", 21);
        oracle.tolerance = reader.number("oracle.tolerance", 1e-8);
        oracle.carrier_delta = reader.number("oracle.carrier_delta", 0.0);
        oracle.sigma_sites = reader.number("oracle.sigma_sites", 80.0);
        oracle.center_site = reader.number("oracle.center_site", -500.0);
        oracle.propagate_tolerance = reader.number("oracle.propagate_tolerance", 0.02);
        oracle.sample_stride = reader.integer("oracle.sample_stride", 0);
        oracle.site_stride = reader.integer("oracle.site_stride", 8);
        oracle.dump_path = reader.text("oracle.dump_path").value_or("");
        scenario.oracle = oracle;
    }

    scenario.output_path = reader.text("output.path").value_or("");

    reader.finish();
    return scenario;
}

void set_parameter(Scenario &scenario, const std::string &name, double value)
{
    const std::size_t dot = name.find('.');
    if (dot == std::string::npos)
    {
        throw ScenarioError(name, "parameter names look like block.field");
    }
    const std::string block = name.substr(0, dot);
    const std::string field = name.substr(dot + 1);

    auto set_emitter = [&](EmitterWaveguideParams &params) {
        if (field == "gamma_right")
        {
            params.gamma_right = value;
        }
        else if (field == "gamma_left")
        {
            params.gamma_left = value;
        }
        else if (field == "gamma_loss")
        {
            params.gamma_loss = value;
        }
        else if (field == "omega_e")
        {
            params.omega_e = value;
        }
        else
        {
            throw ScenarioError(name, "unknown emitter field");
        }
    };
    auto set_cavity = [&](CavityParams &params) {
        if (field == "g")
        {
            params.g = value;
        }
        else if (field == "kappa")
        {
            params.kappa = value;
        }
        else if (field == "gamma_loss")
        {
            params.gamma_loss = value;
        }
        else if (field == "omega_c")
        {
            params.omega_c = value;
        }
        else if (field == "omega_e")
        {
            params.omega_e = value;
        }
        else if (field == "gamma_right")
        {
            params.gamma_right = value;
        }
        else if (field == "gamma_left")
        {
            params.gamma_left = value;
        }
        else
        {
            throw ScenarioError(name, "unknown cavity field");
        }
    };
    auto set_crw = [&](CrwParams &params) {
        if (field == "omega_c")
        {
            params.omega_c = value;
        }
        else if (field == "xi")
        {
            params.xi = value;
        }
        else if (field == "g")
        {
            params.g = value;
        }
        else if (field == "omega_e")
        {
            params.omega_e = value;
        }
        else if (field == "gamma_loss")
        {
            params.gamma_loss = value;
        }
        else
        {
            throw ScenarioError(name, "unknown lattice field");
        }
    };

    if (block == "continuum")
    {
        set_emitter(scenario.continuum);
    }
    else if (block == "cavity")
    {
        set_cavity(scenario.cavity);
    }
    else if (block == "crw")
    {
        set_crw(scenario.crw);
    }
    else if (block == "packet")
    {
        if (!scenario.packet)
        {
            throw ScenarioError(name, "scenario has no packet block");
        }
        if (field == "center")
        {
            scenario.packet->center = value;
        }
        else if (field == "sigma")
        {
            scenario.packet->sigma = value;
        }
        else
        {
            throw ScenarioError(name, "unknown packet field");
        }
    }
    else if (block == "switch")
    {
        scenario.switch_overrides[field] = value;
    }
    else if (block == "site")
    {
        if (scenario.cascade.backend == "continuum")
        {
            set_emitter(scenario.cascade.site_emitter);
        }
        else
        {
            set_crw(scenario.cascade.site_crw);
        }
    }
    else
    {
        throw ScenarioError(name, "unknown parameter block");
    }
}

} // namespace wqed::cli
