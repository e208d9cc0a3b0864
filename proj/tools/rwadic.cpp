#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rwadic/config.hpp"
#include "rwadic/errors.hpp"
#include "rwadic/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"random-walk adic transformations: exact checks and seeded experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    int threads = 0;
    std::int64_t seed_override = -1;

    CLI::App* run = app.add_subcommand("run", "run the checks listed in a config file");
    run->add_option("config", config_path, "json config file")->required();
    run->add_option("--output-dir", output_dir, "override the output directory");
    run->add_option("--threads", threads, "override the worker count");
    run->add_option("--seed-override", seed_override, "override the base seed (rehashes)");

    CLI::App* list = app.add_subcommand("list-suites", "print the suite names in run order");

    std::string which;
    CLI::App* desc = app.add_subcommand("describe", "print what one suite checks");
    desc->add_option("suite", which, "suite name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : rwadic::suite_names()) std::cout << name << '\n';
            return 0;
        }
        if (desc->parsed()) {
            std::cout << rwadic::describe_suite(which) << '\n';
            return 0;
        }
        rwadic::ExperimentConfig cfg = rwadic::load_config(config_path);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (threads > 0) cfg.threads = threads;
        if (seed_override >= 0) {
            cfg.seed = static_cast<std::uint64_t>(seed_override);
            rwadic::rehash(cfg);
        }
        return rwadic::run_experiment(cfg);
    } catch (const rwadic::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
