#include "rwadic/config.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rwadic/errors.hpp"

namespace rwadic {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

const json& need(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::vector<std::int64_t> int_list(const json& j, const char* where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of integers");
    std::vector<std::int64_t> out;
    for (const json& v : j) {
        if (!v.is_number_integer()) fail(where, "expected integers");
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

void check_increasing(const std::vector<std::int64_t>& v, const char* where) {
    if (v.empty()) fail(where, "need at least one entry");
    if (v.front() < 1) fail(where, "entries must be positive");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) fail(where, "entries must be strictly increasing");
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "matrix=";
    for (const auto& row : transition_matrix) {
        for (int v : row) os << v;
        os << ';';
    }
    os << "\nrange=" << range << "\ngroup=" << group.lattice_rank << ',' << group.dimension;
    os << "\nentries=";
    for (const auto& [w, g] : entries) {
        for (Symbol s : w) os << s << '.';
        os << ':';
        for (auto v : g.lattice) os << v << ',';
        for (auto v : g.continuous) os << v << ',';
        os << ';';
    }
    os << "\nwindow=";
    for (const auto& p : window_lattice) {
        for (auto v : p) os << v << ',';
        os << ';';
    }
    os << '|';
    for (const auto& [lo, hi] : window_box) os << lo << ',' << hi << ';';
    os << "\norbits=" << orbits << "\nn=";
    for (auto n : n_list) os << n << ',';
    os << "\nseed=" << seed << "\nfiber_cap=" << fiber_cap << "\nreturn_budget=" << return_budget
       << "\nchecks=";
    for (const auto& c : checks) os << c << ',';
    os << "\nassert_aperiodic=" << (assert_aperiodic ? 1 : 0);
    os << "\nreturn_counts=";
    for (auto n : suites.return_counts) os << n << ',';
    os << "\nlemma_n=";
    for (auto n : suites.lemma_n) os << n << ',';
    os << "\nlemma_points=" << suites.lemma_points << "\nclt_n=";
    for (auto n : suites.clt_n) os << n << ',';
    os << "\nllt_n=";
    for (auto n : suites.llt_n) os << n << ',';
    os << "\nstar_points=" << suites.star_points << "\nstar_radius=" << suites.star_radius
       << "\nuniform_n=";
    for (auto n : suites.uniform_n) os << n << ',';
    os << "\nuniform_depth=" << suites.uniform_depth
       << "\nuniform_nu_points=" << suites.uniform_nu_points
       << "\nuniform_adversarial=" << suites.uniform_adversarial
       << "\noracle_samples=" << suites.oracle_samples << '\n';
    return os.str();
}

void rehash(ExperimentConfig& cfg) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(cfg.canonical());
    cfg.hash = os.str();
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;

    const json& mat = need(j, "transition_matrix", "config");
    if (!mat.is_array() || mat.empty())
        fail("transition_matrix", "expected a non-empty array of rows");
    for (std::size_t r = 0; r < mat.size(); ++r) {
        const json& row = mat[r];
        if (!row.is_array() || row.size() != mat.size()) {
            std::ostringstream os;
            os << "row " << r << " must have " << mat.size() << " entries";
            fail("transition_matrix", os.str());
        }
        std::vector<int> out;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!row[c].is_number_integer() || (row[c] != 0 && row[c] != 1)) {
                std::ostringstream os;
                os << "row " << r << ", column " << c << " must be 0 or 1";
                fail("transition_matrix", os.str());
            }
            out.push_back(row[c].get<int>());
        }
        cfg.transition_matrix.push_back(std::move(out));
    }

    const json& co = need(j, "cocycle", "config");
    cfg.range = need(co, "range", "cocycle").get<int>();
    if (cfg.range < 1) fail("cocycle.range", "range must be at least 1");
    const json& grp = need(co, "group", "cocycle");
    cfg.group.lattice_rank = need(grp, "lattice_rank", "cocycle.group").get<int>();
    cfg.group.dimension = need(grp, "dimension", "cocycle.group").get<int>();
    cfg.group.validate();
    const json& entries = need(co, "entries", "cocycle");
    if (!entries.is_array() || entries.empty()) fail("cocycle.entries", "expected a non-empty array");
    for (const json& e : entries) {
        Word w;
        for (const json& s : need(e, "word", "cocycle.entries")) w.push_back(s.get<int>());
        const json& val = need(e, "value", "cocycle.entries");
        if (static_cast<int>(val.size()) != cfg.group.dimension)
            fail("cocycle.entries", "value length must equal the group dimension");
        GroupElement g = GroupElement::zero(cfg.group);
        for (int i = 0; i < cfg.group.dimension; ++i) {
            if (i < cfg.group.lattice_rank) {
                if (!val[i].is_number_integer())
                    fail("cocycle.entries", "lattice coordinates must be integers");
                g.lattice[static_cast<std::size_t>(i)] = val[i].get<std::int64_t>();
            } else {
                g.continuous[static_cast<std::size_t>(i - cfg.group.lattice_rank)] =
                    val[i].get<double>();
            }
        }
        cfg.entries.emplace_back(std::move(w), std::move(g));
    }

    const json& win = need(j, "window", "config");
    for (const json& p : need(win, "lattice", "window")) {
        std::vector<std::int64_t> v;
        for (const json& c : p) v.push_back(c.get<std::int64_t>());
        cfg.window_lattice.push_back(std::move(v));
    }
    if (auto it = win.find("box"); it != win.end())
        for (const json& b : *it) {
            if (!b.is_array() || b.size() != 2) fail("window.box", "each side is [lo, hi]");
            cfg.window_box.emplace_back(b[0].get<double>(), b[1].get<double>());
        }

    const json& sim = need(j, "simulation", "config");
    cfg.orbits = need(sim, "orbits", "simulation").get<std::size_t>();
    cfg.n_list = int_list(need(sim, "n_list", "simulation"), "simulation.n_list");
    check_increasing(cfg.n_list, "simulation.n_list");
    const json& seed = need(sim, "seed", "simulation");
    if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() &&
                                      seed.get<std::int64_t>() < 0))
        fail("simulation.seed", "seed must be a non-negative integer (and is mandatory)");
    cfg.seed = seed.get<std::uint64_t>();
    if (auto it = sim.find("fiber_cap"); it != sim.end()) cfg.fiber_cap = it->get<int>();
    if (auto it = sim.find("return_budget"); it != sim.end())
        cfg.return_budget = it->get<std::int64_t>();
    if (auto it = sim.find("threads"); it != sim.end()) cfg.threads = it->get<int>();
    if (cfg.threads < 1) fail("simulation.threads", "threads must be at least 1");

    for (const json& c : need(j, "checks", "config")) cfg.checks.push_back(c.get<std::string>());
    if (cfg.checks.empty()) fail("checks", "need at least one suite");
    if (auto it = j.find("output_dir"); it != j.end()) cfg.output_dir = it->get<std::string>();
    if (auto it = j.find("assert_aperiodic"); it != j.end())
        cfg.assert_aperiodic = it->get<bool>();

    if (auto sp = j.find("suites"); sp != j.end()) {
        const json& s = *sp;
        if (auto it = s.find("return_counts"); it != s.end()) {
            cfg.suites.return_counts = int_list(*it, "suites.return_counts");
            check_increasing(cfg.suites.return_counts, "suites.return_counts");
        }
        if (auto it = s.find("lemma_n"); it != s.end()) {
            cfg.suites.lemma_n = int_list(*it, "suites.lemma_n");
            check_increasing(cfg.suites.lemma_n, "suites.lemma_n");
        }
        if (auto it = s.find("lemma_points"); it != s.end())
            cfg.suites.lemma_points = it->get<std::size_t>();
        if (auto it = s.find("clt_n"); it != s.end()) {
            cfg.suites.clt_n = int_list(*it, "suites.clt_n");
            check_increasing(cfg.suites.clt_n, "suites.clt_n");
        }
        if (auto it = s.find("llt_n"); it != s.end()) {
            cfg.suites.llt_n = int_list(*it, "suites.llt_n");
            check_increasing(cfg.suites.llt_n, "suites.llt_n");
        }
        if (auto it = s.find("star_points"); it != s.end())
            cfg.suites.star_points = it->get<std::size_t>();
        if (auto it = s.find("star_radius"); it != s.end())
            cfg.suites.star_radius = it->get<double>();
        if (auto it = s.find("uniform_n"); it != s.end()) {
            cfg.suites.uniform_n = int_list(*it, "suites.uniform_n");
            check_increasing(cfg.suites.uniform_n, "suites.uniform_n");
        }
        if (auto it = s.find("uniform_depth"); it != s.end())
            cfg.suites.uniform_depth = it->get<int>();
        if (auto it = s.find("uniform_nu_points"); it != s.end())
            cfg.suites.uniform_nu_points = it->get<std::size_t>();
        if (auto it = s.find("uniform_adversarial"); it != s.end())
            cfg.suites.uniform_adversarial = it->get<std::size_t>();
        if (auto it = s.find("oracle_samples"); it != s.end())
            cfg.suites.oracle_samples = it->get<std::size_t>();
    }

    rehash(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::shared_ptr<const TransitionSystem> ExperimentConfig::make_system() const {
    return std::make_shared<TransitionSystem>(validate_tms(transition_matrix));
}

Cocycle ExperimentConfig::make_cocycle(std::shared_ptr<const TransitionSystem> ts) const {
    return Cocycle(std::move(ts), group, range, entries);
}

Window ExperimentConfig::make_window() const {
    return Window(group, window_lattice, window_box);
}

}  // namespace rwadic
