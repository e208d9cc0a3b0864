#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rwadic/config.hpp"

namespace rwadic {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> summary;  // key=value fragments
    std::vector<std::pair<std::string, std::string>> tables;  // stem -> csv text
};

// stable names in dependency order
const std::vector<std::string>& suite_names();
bool known_suite(const std::string& name);
std::string describe_suite(const std::string& name);  // throws UnknownSuiteError

// run one suite in isolation (dependencies are rebuilt)
SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

// run cfg.checks in dependency order, write tables and summary.txt under
// cfg.output_dir, echo the summary to stdout; 0 iff every suite passed
int run_experiment(const ExperimentConfig& cfg);

}  // namespace rwadic
