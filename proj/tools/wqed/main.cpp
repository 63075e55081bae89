#include "wqed/commands.hpp"
#include "wqed/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace
{

void usage(std::ostream &out)
{
    out << "usage: wqed <command> [options]\n"
           "\n"
           "commands:\n"
           "  spectrum   --config FILE     sweep a model and emit t, r, T, R, loss per row\n"
           "  figure     <id>              regenerate a built-in dataset (lorentzian,\n"
           "                               lorentzian-loss, crw-band, crw-scatter,\n"
           "                               detuning-switch, chiral-switch, rabi-switch)\n"
           "  metrics    --config FILE     packet efficiencies, fidelities, switch contrast\n"
           "  optimize   --config FILE     grid + golden-section search over 1-3 parameters\n"
           "  oracle     --config FILE     closed forms vs brute-force chain/time-domain runs\n"
           "\n"
           "options:\n"
           "  --config FILE   scenario file (sectioned key = value text)\n"
           "  --out FILE      output CSV path (default: scenario [output] path, else stdout)\n"
           "  --threads N     parallel sweep evaluation (WQED_THREADS overrides)\n";
}

struct Options
{
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string figure_id;
    int threads = 1;
};

bool parse_args(int argc, char **argv, Options &options, std::string &error)
{
    if (argc < 2)
    {
        error = "missing command";
        return false;
    }
    options.command = argv[1];
    if (options.command == "--help" || options.command == "-h")
    {
        options.command = "help";
    }
    for (int i = 2; i < argc; ++i)
    {
        const std::string arg = argv[i];
        auto take_value = [&](const char *name) -> const char * {
            if (i + 1 >= argc)
            {
                error = std::string(name) + " needs a value";
                return nullptr;
            }
            return argv[++i];
        };
        if (arg == "--config")
        {
            const char *value = take_value("--config");
            if (!value)
            {
                return false;
            }
            options.config_path = value;
        }
        else if (arg == "--out")
        {
            const char *value = take_value("--out");
            if (!value)
            {
                return false;
            }
            options.out_path = value;
        }
        else if (arg == "--threads")
        {
            const char *value = take_value("--threads");
            if (!value)
            {
                return false;
            }
            options.threads = std::atoi(value);
            if (options.threads < 1)
            {
                error = "--threads must be a positive integer";
                return false;
            }
        }
        else if (arg == "--help" || arg == "-h")
        {
            options.command = "help";
        }
        else if (!arg.empty() && arg[0] != '-' && options.command == "figure" &&
                 options.figure_id.empty())
        {
            options.figure_id = arg;
        }
        else
        {
            error = "unknown argument '" + arg + "'";
            return false;
        }
    }
    if (const char *env = std::getenv("WQED_THREADS"))
    {
        const int value = std::atoi(env);
        if (value >= 1)
        {
            options.threads = value;
        }
    }
    return true;
}

} // namespace

int main(int argc, char **argv)
{
    using namespace wqed::cli;

    Options options;
    std::string arg_error;
    if (!parse_args(argc, argv, options, arg_error))
    {
        std::cerr << "error: " << arg_error << "\n";
        usage(std::cerr);
        return kExitValidation;
    }
    if (options.command == "help")
    {
        usage(std::cout);
        return kExitOk;
    }

    const bool needs_scenario = options.command == "spectrum" || options.command == "metrics" ||
                                options.command == "optimize" || options.command == "oracle";
    if (!needs_scenario && options.command != "figure")
    {
        std::cerr << "error: unknown command '" << options.command << "'\n";
        usage(std::cerr);
        return kExitValidation;
    }

    Scenario scenario;
    if (needs_scenario)
    {
        if (options.config_path.empty())
        {
            std::cerr << "error: " << options.command << " needs --config FILE\n";
            return kExitValidation;
        }
        std::ifstream config(options.config_path);
        if (!config)
        {
            std::cerr << "error: cannot read '" << options.config_path << "'\n";
            return kExitValidation;
        }
        std::ostringstream buffer;
        buffer << config.rdbuf();
        try
        {
            scenario = parse_scenario(buffer.str());
        }
        catch (const std::exception &error)
        {
            std::cerr << "error: " << error.what() << "\n";
            return kExitValidation;
        }
    }
    else if (options.figure_id.empty())
    {
        std::cerr << "error: figure needs an id\n";
        return kExitValidation;
    }

    // --out beats the scenario's own output path; stdout otherwise.
    std::string out_path = options.out_path;
    if (out_path.empty() && needs_scenario)
    {
        out_path = scenario.output_path;
    }
    std::ofstream file;
    if (!out_path.empty())
    {
        file.open(out_path, std::ios::binary); // keep LF endings everywhere
        if (!file)
        {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitValidation;
        }
    }
    std::ostream &out = out_path.empty() ? std::cout : file;

    if (options.command == "spectrum")
    {
        return cmd_spectrum(scenario, out, std::cerr, options.threads);
    }
    if (options.command == "figure")
    {
        return cmd_figure(options.figure_id, out, std::cerr);
    }
    if (options.command == "metrics")
    {
        return cmd_metrics(scenario, out, std::cerr);
    }
    if (options.command == "optimize")
    {
        return cmd_optimize(scenario, out, std::cerr);
    }
    return cmd_oracle(scenario, out, std::cerr);
}
