#include "wqed/commands.hpp"

#include "wqed/csv.hpp"

#include "wqed/cascade.hpp"
#include "wqed/cavity.hpp"
#include "wqed/continuum.hpp"
#include "wqed/crw.hpp"
#include "wqed/oracles.hpp"
#include "wqed/packet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

namespace wqed::cli
{

namespace
{

constexpr double kPi = 3.14159265358979323846;

void write_provenance(std::ostream &out, std::string_view kind, std::string_view payload)
{
    out << "# " << kToolVersion << "\n";
    out << "# " << kind << " " << hash_hex(payload) << "\n";
}

struct PointResult
{
    Complex t;
    Complex r;
    bool flagged = false; // perfectly reflecting cascade site at this point
};

// Reference frequencies of the active model, used to map frame-tagged grid
// points onto one absolute axis.
struct FrameAnchors
{
    double omega_e = 0.0;
    bool has_cavity = false;
    double omega_c = 0.0;
};

FrameAnchors anchors_for(const Scenario &scenario)
{
    FrameAnchors anchors;
    if (scenario.model == "continuum")
    {
        anchors.omega_e = scenario.continuum.omega_e;
    }
    else if (scenario.model == "cavity")
    {
        anchors.omega_e = scenario.cavity.omega_e;
        anchors.has_cavity = true;
        anchors.omega_c = scenario.cavity.omega_c;
    }
    else if (scenario.model == "crw")
    {
        anchors.omega_e = scenario.crw.omega_e;
        anchors.has_cavity = true;
        anchors.omega_c = scenario.crw.omega_c;
    }
    else // cascade
    {
        if (scenario.cascade.backend == "continuum")
        {
            anchors.omega_e = scenario.cascade.site_emitter.omega_e;
        }
        else
        {
            anchors.omega_e = scenario.cascade.site_crw.omega_e;
            anchors.has_cavity = true;
            anchors.omega_c = scenario.cascade.site_crw.omega_c;
        }
    }
    return anchors;
}

double to_absolute(const FrameAnchors &anchors, Frame frame, double x)
{
    switch (frame)
    {
    case Frame::Absolute:
        return x;
    case Frame::DetuningFromEmitter:
        return anchors.omega_e + x;
    case Frame::DetuningFromCavity:
        if (!anchors.has_cavity)
        {
            throw ScenarioError("sweep.frame", "detuning-from-cavity needs a cavity model");
        }
        return anchors.omega_c + x;
    }
    return x;
}

FrequencyGrid scenario_grid(const Scenario &scenario)
{
    return make_grid(scenario.sweep.center, scenario.sweep.half_width,
                     static_cast<std::size_t>(scenario.sweep.points), scenario.sweep.frame);
}

cascade::CascadeLayout cascade_layout(const CascadeSpec &spec)
{
    cascade::CascadeLayout layout;
    for (int i = 0; i < spec.count; ++i)
    {
        if (spec.backend == "continuum")
        {
            layout.sites.emplace_back(spec.site_emitter);
        }
        else
        {
            layout.sites.emplace_back(spec.site_crw);
        }
    }
    layout.separations = spec.separations;
    return layout;
}

cascade::DispersionMap cascade_dispersion(const CascadeSpec &spec)
{
    if (spec.backend == "crw")
    {
        const CrwParams site = spec.site_crw;
        return [site](double omega) { return crw::inverse_dispersion(site, omega); };
    }
    return cascade::LinearDispersion{spec.v_g, spec.k0, spec.omega0};
}

// Point evaluator used by the spectrum sweep; pure per point, safe to call
// from several threads at once.
std::function<PointResult(double)> point_evaluator(const Scenario &scenario)
{
    const FrameAnchors anchors = anchors_for(scenario);
    const Frame frame = scenario.sweep.frame;
    if (scenario.model == "continuum")
    {
        if (frame == Frame::DetuningFromCavity)
        {
            throw ScenarioError("sweep.frame", "detuning-from-cavity needs a cavity model");
        }
        const EmitterWaveguideParams params = scenario.continuum;
        return [params, anchors, frame](double x) {
            const double delta = to_absolute(anchors, frame, x) - params.omega_e;
            const Amplitudes a = continuum::amplitudes(params, delta);
            return PointResult{a.t, a.r, false};
        };
    }
    if (scenario.model == "cavity")
    {
        const CavityParams params = scenario.cavity;
        return [params, anchors, frame](double x) {
            const Amplitudes a = cavity::amplitudes(params, to_absolute(anchors, frame, x));
            return PointResult{a.t, a.r, false};
        };
    }
    if (scenario.model == "crw")
    {
        const CrwParams params = scenario.crw;
        return [params, anchors, frame](double x) {
            const double k = crw::clamped_wavenumber(params, to_absolute(anchors, frame, x));
            const Amplitudes a = crw::amplitudes(params, k);
            return PointResult{a.t, a.r, false};
        };
    }
    // cascade
    const cascade::CascadeLayout layout = cascade_layout(scenario.cascade);
    if (auto violation = cascade::validate(layout))
    {
        throw ScenarioError("cascade." + violation->field, violation->message);
    }
    const cascade::DispersionMap dispersion = cascade_dispersion(scenario.cascade);
    return [layout, dispersion, anchors, frame](double x) {
        const double omega = to_absolute(anchors, frame, x);
        const double k = dispersion(omega);
        try
        {
            cascade::TransferMatrix total = cascade::identity_matrix();
            bool first = true;
            for (std::size_t s = 0; s < layout.sites.size(); ++s)
            {
                Amplitudes a{};
                if (const auto *emitter = std::get_if<EmitterWaveguideParams>(&layout.sites[s]))
                {
                    a = continuum::amplitudes(*emitter, omega - emitter->omega_e);
                }
                else if (const auto *cav = std::get_if<CavityParams>(&layout.sites[s]))
                {
                    a = cavity::amplitudes(*cav, omega);
                }
                else
                {
                    a = crw::amplitudes(std::get<CrwParams>(layout.sites[s]), k);
                }
                const cascade::TransferMatrix site =
                    cascade::site_matrix(cascade::SiteScatterer{a.t, a.r});
                if (first)
                {
                    total = site;
                    first = false;
                }
                else
                {
                    total = site * (cascade::propagation_matrix(k, layout.separations[s - 1]) * total);
                }
            }
            const cascade::SiteScatterer out = cascade::extract(total);
            return PointResult{out.t, out.r, false};
        }
        catch (const cascade::NearTotalReflectionError &)
        {
            return PointResult{Complex{0.0, 0.0}, Complex{-1.0, 0.0}, true};
        }
    };
}

void parallel_fill(std::vector<PointResult> &results, const FrequencyGrid &grid,
                   const std::function<PointResult(double)> &evaluate, int threads)
{
    const std::size_t n = grid.size();
    results.resize(n);
    if (threads <= 1 || n < 64)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            results[i] = evaluate(grid[i]);
        }
        return;
    }
    const int workers = std::min<int>(threads, static_cast<int>(n));
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w]() {
            try
            {
                for (std::size_t i = static_cast<std::size_t>(w); i < n;
                     i += static_cast<std::size_t>(workers))
                {
                    results[i] = evaluate(grid[i]);
                }
            }
            catch (...)
            {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &thread : pool)
    {
        thread.join();
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

void write_spectrum_rows(std::ostream &out, const FrequencyGrid &grid,
                         const std::vector<PointResult> &results)
{
    out << "omega_or_delta,frame,t_re,t_im,r_re,r_im,T,R,loss\n";
    const std::string_view frame_name = to_string(grid.frame());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const PointResult &p = results[i];
        const double transmission = std::norm(p.t);
        const double reflection = std::norm(p.r);
        const double loss = 1.0 - transmission - reflection;
        out << format_double(grid[i]) << ',' << frame_name << ',' << format_double(p.t.real())
            << ',' << format_double(p.t.imag()) << ',' << format_double(p.r.real()) << ','
            << format_double(p.r.imag()) << ',' << format_double(transmission) << ','
            << format_double(reflection) << ',' << format_double(loss) << '\n';
    }
}

// Shared metrics pipeline: evaluates the on/off responses on one absolute
// grid and folds them against the scenario packet.
packet::SwitchReport evaluate_switch_report(const Scenario &scenario)
{
    if (!scenario.packet)
    {
        throw ScenarioError("packet.sigma", "metrics need a packet block");
    }
    const FrameAnchors anchors = anchors_for(scenario);
    const FrequencyGrid raw = scenario_grid(scenario);
    std::vector<double> absolute(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
    {
        absolute[i] = to_absolute(anchors, raw.frame(), raw[i]);
    }
    const FrequencyGrid grid(std::move(absolute), Frame::Absolute);

    Scenario off = scenario;
    for (const auto &[field, value] : scenario.switch_overrides)
    {
        const std::string block = scenario.model == "cascade" ? "site" : scenario.model;
        set_parameter(off, block + "." + field, value);
    }

    auto respond = [&grid](const Scenario &s) {
        std::vector<PointResult> results;
        Scenario absolute_sweep = s;
        absolute_sweep.sweep.frame = Frame::Absolute;
        const auto evaluate = point_evaluator(absolute_sweep);
        results.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            results.push_back(evaluate(grid[i]));
        }
        SpectralResponse response{grid, std::vector<Complex>(grid.size()),
                                  std::vector<Complex>(grid.size())};
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            response.t[i] = results[i].t;
            response.r[i] = results[i].r;
        }
        return response;
    };

    const SpectralResponse on = respond(scenario);
    const SpectralResponse off_response = respond(off);
    const double packet_center = to_absolute(anchors, raw.frame(), scenario.packet->center);
    const packet::WavePacket pulse =
        packet::gaussian_packet(packet_center, scenario.packet->sigma, grid);
    return packet::switch_report(on, off_response, pulse);
}

double evaluate_objective(const Scenario &scenario, const std::string &objective)
{
    const packet::SwitchReport report = evaluate_switch_report(scenario);
    if (objective == "contrast")
    {
        return report.contrast;
    }
    if (objective == "e_r")
    {
        return report.e_r;
    }
    return report.f_t;
}

int fail_validation(std::ostream &diag, const std::string &message)
{
    diag << "error: " << message << "\n";
    return kExitValidation;
}

} // namespace

int cmd_spectrum(const Scenario &scenario, std::ostream &out, std::ostream &diag, int threads)
{
    try
    {
        const FrequencyGrid grid = scenario_grid(scenario);
        const auto evaluate = point_evaluator(scenario);
        std::vector<PointResult> results;
        parallel_fill(results, grid, evaluate, threads);

        std::size_t flagged = 0;
        for (const PointResult &p : results)
        {
            flagged += p.flagged ? 1 : 0;
        }

        write_provenance(out, "scenario", scenario.raw_text);
        write_spectrum_rows(out, grid, results);
        if (10 * flagged > grid.size())
        {
            diag << "warning: " << flagged << " of " << grid.size()
                 << " grid points hit a perfectly reflecting site\n";
            return kExitQuality;
        }
        return kExitOk;
    }
    catch (const std::exception &error)
    {
        return fail_validation(diag, error.what());
    }
}

int cmd_figure(const std::string &figure_id, std::ostream &out, std::ostream &diag)
{
    const auto emit = [&out, &figure_id](const std::string &header,
                                         const std::vector<std::vector<double>> &rows) {
        write_provenance(out, "figure", figure_id);
        out << header << '\n';
        for (const auto &row : rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                out << (i ? "," : "") << format_double(row[i]);
            }
            out << '\n';
        }
    };

    try
    {
        if (figure_id == "lorentzian" || figure_id == "lorentzian-loss")
        {
            EmitterWaveguideParams emitter;
            emitter.gamma_right = 1.0;
            emitter.gamma_left = 1.0;
            const bool lossy = figure_id == "lorentzian-loss";
            emitter.gamma_loss = lossy ? 2.0 / 9.0 : 0.0;
            const FrequencyGrid grid = make_grid(0.0, 10.0, 1001);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                const auto p = continuum::probabilities(emitter, grid[i]);
                if (lossy)
                {
                    rows.push_back({grid[i], p.transmission, p.reflection, p.loss});
                }
                else
                {
                    rows.push_back({grid[i], p.transmission, p.reflection});
                }
            }
            emit(lossy ? "delta,T,R,loss" : "delta,T,R", rows);
            return kExitOk;
        }
        if (figure_id == "crw-band")
        {
            CrwParams params;
            params.xi = 1.0;
            const FrequencyGrid grid = make_grid(0.0, kPi, 1001, Frame::Absolute);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                const crw::BandPoint point = crw::band_point(params, grid[i]);
                rows.push_back({point.k, point.omega});
            }
            emit("k,omega", rows);
            return kExitOk;
        }
        if (figure_id == "crw-scatter")
        {
            // xi = 2 g, resonant emitter; band edges sit at delta/g = +/- 4
            // and are emitted as the documented limiting values.
            CrwParams params;
            params.xi = 2.0;
            params.g = 1.0;
            const FrequencyGrid grid = make_grid(0.0, 4.0, 1001);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                if (i == 0 || i + 1 == grid.size())
                {
                    rows.push_back({grid[i], 0.0, 1.0});
                    continue;
                }
                const auto p = crw::probabilities_resonant(params, grid[i]);
                rows.push_back({grid[i], p.transmission, p.reflection});
            }
            emit("delta_over_g,T,R", rows);
            return kExitOk;
        }
        if (figure_id == "detuning-switch")
        {
            EmitterWaveguideParams emitter;
            emitter.gamma_right = 1.0;
            emitter.gamma_left = 1.0;
            const FrequencyGrid grid = make_grid(0.0, 12.0, 1001);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                const double r0 = continuum::probabilities(emitter, grid[i]).reflection;
                const double r1 = continuum::probabilities(emitter, grid[i] - 2.0).reflection;
                const double r5 = continuum::probabilities(emitter, grid[i] - 10.0).reflection;
                rows.push_back({grid[i], r0, r1, r5});
            }
            emit("delta,R_initial,R_shift_one_fwhm,R_shift_five_fwhm", rows);
            return kExitOk;
        }
        if (figure_id == "chiral-switch")
        {
            const FrequencyGrid grid = make_grid(0.0, 10.0, 1001);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                const auto pair = continuum::chiral_switch_contrast(1.0, grid[i]);
                rows.push_back({grid[i], pair.r_symmetric, pair.r_chiral});
            }
            emit("delta,R_symmetric,R_chiral", rows);
            return kExitOk;
        }
        if (figure_id == "rabi-switch")
        {
            CavityParams weak;
            weak.gamma_right = 1.0;
            weak.gamma_left = 1.0;
            CavityParams strong = weak;
            strong.g = 5.0;
            const FrequencyGrid grid = make_grid(0.0, 10.0, 4001, Frame::DetuningFromCavity);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                const double r_weak = std::norm(cavity::amplitudes(weak, grid[i]).r);
                const double r_strong = std::norm(cavity::amplitudes(strong, grid[i]).r);
                rows.push_back({grid[i], r_weak, r_strong});
            }
            emit("omega_minus_omega_c,R_weak,R_strong", rows);
            return kExitOk;
        }
        diag << "error: unknown figure id '" << figure_id << "'\n";
        return kExitValidation;
    }
    catch (const std::exception &error)
    {
        return fail_validation(diag, error.what());
    }
}

int cmd_metrics(const Scenario &scenario, std::ostream &out, std::ostream &diag)
{
    try
    {
        const packet::SwitchReport report = evaluate_switch_report(scenario);
        write_provenance(out, "scenario", scenario.raw_text);
        out << "e_t,e_r,f_t,f_r,p_t,p_r,contrast,extinction_db\n";
        out << format_double(report.e_t) << ',' << format_double(report.e_r) << ','
            << format_double(report.f_t) << ',' << format_double(report.f_r) << ','
            << format_double(report.p_t) << ',' << format_double(report.p_r) << ','
            << format_double(report.contrast) << ',' << format_double(report.extinction_db)
            << '\n';
        return kExitOk;
    }
    catch (const std::exception &error)
    {
        return fail_validation(diag, error.what());
    }
}

int cmd_optimize(const Scenario &scenario, std::ostream &out, std::ostream &diag)
{
    try
    {
        if (!scenario.optimize)
        {
            throw ScenarioError("optimize.objective", "optimize needs an optimize block");
        }
        const OptimizeSpec &spec = *scenario.optimize;
        const std::size_t dims = spec.params.size();

        std::vector<std::string> trace_lines;
        auto evaluate_at = [&](const std::vector<double> &point, const char *phase) {
            Scenario probe = scenario;
            for (std::size_t d = 0; d < dims; ++d)
            {
                set_parameter(probe, spec.params[d].name, point[d]);
            }
            const double value = evaluate_objective(probe, spec.objective);
            std::string line(phase);
            for (double x : point)
            {
                line += ',';
                line += format_double(x);
            }
            line += ',';
            line += format_double(value);
            trace_lines.push_back(std::move(line));
            return value;
        };

        // Coarse grid search, lexicographic order; strict improvement keeps
        // the lowest parameter values on exact ties.
        std::vector<int> axis_points(dims);
        for (std::size_t d = 0; d < dims; ++d)
        {
            axis_points[d] = spec.params[d].hi > spec.params[d].lo ? spec.grid_points : 1;
        }
        std::vector<int> index(dims, 0);
        std::vector<double> best_point(dims, 0.0);
        double best_value = -std::numeric_limits<double>::infinity();
        bool done = false;
        while (!done)
        {
            std::vector<double> point(dims);
            for (std::size_t d = 0; d < dims; ++d)
            {
                const auto &param = spec.params[d];
                point[d] = axis_points[d] == 1
                               ? param.lo
                               : param.lo + (param.hi - param.lo) * static_cast<double>(index[d]) /
                                                static_cast<double>(axis_points[d] - 1);
            }
            const double value = evaluate_at(point, "grid");
            if (value > best_value)
            {
                best_value = value;
                best_point = point;
            }
            // Advance the mixed-radix counter, last axis fastest.
            done = true;
            for (std::size_t d = dims; d-- > 0;)
            {
                if (++index[d] < axis_points[d])
                {
                    done = false;
                    break;
                }
                index[d] = 0;
            }
        }

        // Golden-section refinement along each axis through the incumbent.
        const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
        for (std::size_t d = 0; d < dims; ++d)
        {
            const auto &param = spec.params[d];
            if (axis_points[d] == 1)
            {
                continue;
            }
            const double cell = (param.hi - param.lo) / static_cast<double>(axis_points[d] - 1);
            double lo = std::max(param.lo, best_point[d] - cell);
            double hi = std::min(param.hi, best_point[d] + cell);
            const double tolerance = 1e-4 * (param.hi - param.lo);
            auto value_at = [&](double x) {
                std::vector<double> point = best_point;
                point[d] = x;
                return evaluate_at(point, "refine");
            };
            double x1 = hi - golden * (hi - lo);
            double x2 = lo + golden * (hi - lo);
            double f1 = value_at(x1);
            double f2 = value_at(x2);
            while (hi - lo > tolerance)
            {
                if (f1 >= f2)
                {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = value_at(x1);
                }
                else
                {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = value_at(x2);
                }
            }
            const double candidate = f1 >= f2 ? x1 : x2;
            const double candidate_value = std::max(f1, f2);
            if (candidate_value > best_value)
            {
                best_value = candidate_value;
                best_point[d] = candidate;
            }
        }

        write_provenance(out, "scenario", scenario.raw_text);
        out << "phase";
        for (std::size_t d = 0; d < dims; ++d)
        {
            out << ',' << spec.params[d].name;
        }
        out << ",objective\n";
        for (const auto &line : trace_lines)
        {
            out << line << '\n';
        }
        out << "best";
        for (double x : best_point)
        {
            out << ',' << format_double(x);
        }
        out << ',' << format_double(best_value) << '\n';
        return kExitOk;
    }
    catch (const std::exception &error)
    {
        return fail_validation(diag, error.what());
    }
}

int cmd_oracle(const Scenario &scenario, std::ostream &out, std::ostream &diag)
{
    try
    {
        if (!scenario.oracle)
        {
            throw ScenarioError("oracle.mode", "oracle needs an oracle block");
        }
        if (scenario.model != "crw")
        {
            throw ScenarioError("model", "the oracle command verifies the crw model");
        }
        const OracleSpec &spec = *scenario.oracle;
        bool exceeded = false;

        write_provenance(out, "scenario", scenario.raw_text);
        out << "checkpoint,quantity,closed_re,closed_im,oracle_re,oracle_im,abs_diff,tolerance\n";

        auto emit_row = [&](const std::string &checkpoint, const char *quantity, Complex closed,
                            Complex observed, double tolerance) {
            const double diff = std::abs(closed - observed);
            exceeded = exceeded || diff > tolerance;
            out << checkpoint << ',' << quantity << ',' << format_double(closed.real()) << ','
                << format_double(closed.imag()) << ',' << format_double(observed.real()) << ','
                << format_double(observed.imag()) << ',' << format_double(diff) << ','
                << format_double(tolerance) << '\n';
        };

        if (spec.mode == "chain")
        {
            if (spec.k_count < 2)
            {
                throw ScenarioError("oracle.k_count", "need at least 2 wave numbers");
            }
            for (int i = 0; i < spec.k_count; ++i)
            {
                const double k = 0.05 * kPi + 0.90 * kPi * static_cast<double>(i) /
                                                  static_cast<double>(spec.k_count - 1);
                oracle::FiniteChainProblem problem;
                problem.n_sites = spec.n_sites;
                problem.params = scenario.crw;
                problem.k_in = k;
                const oracle::ChainSolution solution = oracle::finite_chain_solve(problem);
                const Amplitudes closed = crw::amplitudes(scenario.crw, k);
                const std::string checkpoint = "k=" + format_double(k);
                emit_row(checkpoint, "t", closed.t, solution.t, spec.tolerance);
                emit_row(checkpoint, "r", closed.r, solution.r, spec.tolerance);
            }
        }
        else
        {
            const double carrier_omega = scenario.crw.omega_e + spec.carrier_delta;
            const double k0 = crw::inverse_dispersion(scenario.crw, carrier_omega);
            oracle::PropagationSpec run;
            run.n_sites = spec.n_sites;
            run.params = scenario.crw;
            run.attachments = {{0, scenario.crw.g, scenario.crw.omega_e}};
            run.packet = {spec.center_site, spec.sigma_sites, k0};
            run.sample_stride = spec.sample_stride;
            run.site_stride = spec.site_stride;
            const oracle::PropagationResult result = oracle::propagate_packet(run);
            const Amplitudes closed = crw::amplitudes(scenario.crw, k0);
            const std::string checkpoint = "delta=" + format_double(spec.carrier_delta);
            emit_row(checkpoint, "R", Complex{std::norm(closed.r), 0.0},
                     Complex{result.reflected, 0.0}, spec.propagate_tolerance);
            emit_row(checkpoint, "T", Complex{std::norm(closed.t), 0.0},
                     Complex{result.transmitted, 0.0}, spec.propagate_tolerance);
            emit_row(checkpoint, "norm_drift", Complex{0.0, 0.0},
                     Complex{result.norm_drift, 0.0}, 1e-6);
            if (!spec.dump_path.empty())
            {
                std::ofstream dump(spec.dump_path);
                if (!dump)
                {
                    throw ScenarioError("oracle.dump_path", "cannot open trajectory file");
                }
                write_provenance(dump, "scenario", scenario.raw_text);
                dump << "time,site,probability\n";
                for (const auto &sample : result.trajectory)
                {
                    dump << format_double(sample.time) << ',' << sample.site << ','
                         << format_double(sample.probability) << '\n';
                }
            }
        }
        if (exceeded)
        {
            diag << "warning: oracle disagreement above tolerance\n";
            return kExitQuality;
        }
        return kExitOk;
    }
    catch (const oracle::PacketBoundaryError &error)
    {
        return fail_validation(diag, error.what());
    }
    catch (const std::exception &error)
    {
        return fail_validation(diag, error.what());
    }
}

} // namespace wqed::cli
