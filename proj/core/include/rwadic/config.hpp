#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rwadic/cocycle.hpp"
#include "rwadic/group.hpp"
#include "rwadic/transition_system.hpp"

namespace rwadic {

// Sizes for the individual suites that need their own scales (exact DP
// depths, return counts, sample counts).  Everything has a default; shipped
// configs override only what they pin down.
struct SuiteParams {
    std::vector<std::int64_t> return_counts{1000, 10000, 100000};
    std::vector<std::int64_t> lemma_n{6, 9, 12};
    std::size_t lemma_points = 25;
    std::vector<std::int64_t> clt_n{8, 16, 32, 64};
    std::vector<std::int64_t> llt_n{16, 64, 256, 1024};
    std::size_t star_points = 100;
    double star_radius = 3.0;
    std::vector<std::int64_t> uniform_n{1000, 10000, 100000};
    int uniform_depth = 4;
    std::size_t uniform_nu_points = 30;
    std::size_t uniform_adversarial = 10;
    std::size_t oracle_samples = 200;
};

// One experiment: system + observable + window + simulation sizes + the
// suites to run.  Loaded from JSON; the seed is mandatory so no run ever
// depends on the clock.
struct ExperimentConfig {
    std::vector<std::vector<int>> transition_matrix;

    int range = 1;
    GroupSpec group;
    std::vector<std::pair<Word, GroupElement>> entries;

    std::vector<std::vector<std::int64_t>> window_lattice;
    std::vector<std::pair<double, double>> window_box;

    std::size_t orbits = 200;
    std::vector<std::int64_t> n_list;
    std::uint64_t seed = 0;
    int fiber_cap = 24;
    std::int64_t return_budget = 0;  // 0 = automatic
    int threads = 1;

    std::vector<std::string> checks;
    std::string output_dir = "out";
    bool assert_aperiodic = false;
    SuiteParams suites;

    std::string hash;  // 16 hex digits over the canonical serialization

    std::shared_ptr<const TransitionSystem> make_system() const;
    Cocycle make_cocycle(std::shared_ptr<const TransitionSystem> ts) const;
    Window make_window() const;

    // deterministic dump of everything that can influence results; threads
    // and output_dir are deliberately left out (they must not)
    std::string canonical() const;
};

void rehash(ExperimentConfig& cfg);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace rwadic
