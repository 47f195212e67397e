#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrqmem/cli_config.hpp"

namespace {

int apply_extras(mrqmem::RunConfig& cfg, const std::vector<std::string>& extras) {
    for (size_t i = 0; i < extras.size(); i += 2) {
        const std::string& flag = extras[i];
        if (flag.rfind("--", 0) != 0 || i + 1 >= extras.size()) {
            std::cerr << "error: expected --key value pairs, got '" << flag
                      << "'\n";
            return 2;
        }
        mrqmem::apply_override(cfg, flag.substr(2), extras[i + 1]);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mr-qmem: multiresonator quantum-memory simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int jobs = 0;
    std::vector<CLI::App*> subs;
    for (const char* name : {"simulate", "sweep", "compare", "peaks"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--jobs", jobs, "max concurrent sweep evaluations");
        sub->allow_extras();
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        mrqmem::RunConfig cfg;
        if (!config_path.empty()) cfg = mrqmem::load_config(config_path);
        CLI::App* sub = app.get_subcommands().front();
        if (int rc = apply_extras(cfg, sub->remaining())) return rc;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (jobs > 0) cfg.jobs = jobs;

        mrqmem::ResolvedRun run = mrqmem::resolve(cfg);
        std::vector<std::string> files;
        const std::string& name = sub->get_name();
        if (name == "simulate") files = mrqmem::run_simulate(run);
        else if (name == "sweep") files = mrqmem::run_sweep(run);
        else if (name == "compare") files = mrqmem::run_compare(run);
        else files = mrqmem::run_peaks(run);
        for (const auto& f : files) std::cout << "wrote " << f << "\n";
        return 0;
    } catch (const mrqmem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mrqmem::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
