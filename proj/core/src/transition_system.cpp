#include "rwadic/transition_system.hpp"

#include <numeric>
#include <queue>
#include <sstream>

#include "rwadic/errors.hpp"

namespace rwadic {

namespace {

// boolean reachability closure
std::vector<std::vector<char>> reachability(const std::vector<std::vector<int>>& m) {
    int d = static_cast<int>(m.size());
    std::vector<std::vector<char>> reach(d, std::vector<char>(d, 0));
    for (int s = 0; s < d; ++s) {
        std::queue<int> q;
        q.push(s);
        std::vector<char> seen(d, 0);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int b = 0; b < d; ++b) {
                if (m[a][b] && !seen[b]) {
                    seen[b] = 1;
                    q.push(b);
                }
            }
        }
        for (int b = 0; b < d; ++b) reach[s][b] = seen[b];
    }
    return reach;
}

bool all_positive(const std::vector<std::vector<char>>& m) {
    for (const auto& row : m)
        for (char v : row)
            if (!v) return false;
    return true;
}

std::vector<std::vector<char>> bool_mul(const std::vector<std::vector<char>>& a,
                                        const std::vector<std::vector<char>>& b) {
    int d = static_cast<int>(a.size());
    std::vector<std::vector<char>> c(d, std::vector<char>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            if (a[i][k])
                for (int j = 0; j < d; ++j)
                    if (b[k][j]) c[i][j] = 1;
    return c;
}

}  // namespace

TransitionSystem::TransitionSystem(std::vector<std::vector<int>> rows)
    : d_(static_cast<int>(rows.size())), matrix_(std::move(rows)) {
    if (d_ == 0) throw EmptyRowOrColumnError("transition matrix is empty");
    for (const auto& row : matrix_) {
        if (static_cast<int>(row.size()) != d_)
            throw Error("transition matrix is not square");
        for (int v : row)
            if (v != 0 && v != 1) throw Error("transition matrix entries must be 0 or 1");
    }
    for (int a = 0; a < d_; ++a) {
        bool any = false;
        for (int b = 0; b < d_; ++b) any = any || matrix_[a][b];
        if (!any) throw EmptyRowOrColumnError("row " + std::to_string(a) + " is all zero");
    }
    for (int b = 0; b < d_; ++b) {
        bool any = false;
        for (int a = 0; a < d_; ++a) any = any || matrix_[a][b];
        if (!any) throw EmptyRowOrColumnError("column " + std::to_string(b) + " is all zero");
    }

    auto reach = reachability(matrix_);
    irreducible_ = all_positive(reach);

    // primitivity: some boolean power is all ones; the Wielandt bound
    // d^2 - 2d + 2 caps the exponent that needs checking
    if (irreducible_) {
        int bound = d_ * d_ - 2 * d_ + 2;
        std::vector<std::vector<char>> p(d_, std::vector<char>(d_, 0));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) p[i][j] = static_cast<char>(matrix_[i][j]);
        std::vector<std::vector<char>> base = p;
        primitive_ = all_positive(p);
        for (int n = 1; n < bound && !primitive_; ++n) {
            p = bool_mul(p, base);
            primitive_ = all_positive(p);
        }
    }

    // period: gcd over edges (a,b) of depth(a) + 1 - depth(b), BFS from 0
    if (irreducible_) {
        std::vector<int> depth(d_, -1);
        depth[0] = 0;
        std::queue<int> q;
        q.push(0);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int b = 0; b < d_; ++b) {
                if (matrix_[a][b] && depth[b] < 0) {
                    depth[b] = depth[a] + 1;
                    q.push(b);
                }
            }
        }
        int g = 0;
        for (int a = 0; a < d_; ++a)
            for (int b = 0; b < d_; ++b)
                if (matrix_[a][b]) g = std::gcd(g, std::abs(depth[a] + 1 - depth[b]));
        period_ = g == 0 ? 1 : g;
    }

    phi_plus_.resize(d_);
    phi_minus_.resize(d_);
    for (int s = 0; s < d_; ++s) {
        int hi = -1, lo = -1;
        for (int y = 0; y < d_; ++y) {
            if (matrix_[y][s]) {
                if (lo < 0) lo = y;
                hi = y;
            }
        }
        phi_plus_[s] = hi;
        phi_minus_[s] = lo;
    }
}

std::optional<Symbol> TransitionSystem::largest_allowed_below(Symbol s, Symbol t) const {
    for (Symbol y = s - 1; y >= 0; --y)
        if (matrix_[y][t]) return y;
    return std::nullopt;
}

std::optional<Symbol> TransitionSystem::smallest_allowed_above(Symbol s, Symbol t) const {
    for (Symbol y = s + 1; y < d_; ++y)
        if (matrix_[y][t]) return y;
    return std::nullopt;
}

bool TransitionSystem::word_admissible(const Word& w) const {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= d_ || w[i + 1] < 0 || w[i + 1] >= d_) return false;
        if (!allowed(w[i], w[i + 1])) return false;
    }
    if (w.size() == 1 && (w[0] < 0 || w[0] >= d_)) return false;
    return true;
}

void TransitionSystem::require_admissible(const Word& w) const {
    if (!word_admissible(w)) throw InadmissibleWordError("word violates the transition matrix");
}

std::string TransitionSystem::describe() const {
    std::ostringstream os;
    os << "alphabet=" << d_ << " irreducible=" << (irreducible_ ? 1 : 0)
       << " primitive=" << (primitive_ ? 1 : 0) << " period=" << period_;
    return os.str();
}

TransitionSystem validate_tms(const std::vector<std::vector<int>>& rows) {
    return TransitionSystem(rows);
}

FunctionalOrbit functional_orbit(const std::vector<Symbol>& step, Symbol start) {
    std::vector<int> seen_at(step.size(), -1);
    std::vector<Symbol> path;
    Symbol s = start;
    while (seen_at[s] < 0) {
        seen_at[s] = static_cast<int>(path.size());
        path.push_back(s);
        s = step[s];
    }
    FunctionalOrbit out;
    int cycle_start = seen_at[s];
    out.tail.assign(path.begin(), path.begin() + cycle_start);
    out.cycle.assign(path.begin() + cycle_start, path.end());
    return out;
}

void LevelledDiagram::validate() const {
    if (alphabet_sizes.size() != matrices.size() + 1)
        throw Error("levelled diagram: need one matrix per consecutive level pair");
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const auto& m = matrices[k];
        if (static_cast<int>(m.size()) != alphabet_sizes[k])
            throw Error("levelled diagram: row count mismatch at level " + std::to_string(k));
        for (const auto& row : m) {
            if (static_cast<int>(row.size()) != alphabet_sizes[k + 1])
                throw Error("levelled diagram: column count mismatch at level " + std::to_string(k));
            for (int v : row)
                if (v != 0 && v != 1) throw Error("levelled diagram: entries must be 0 or 1");
        }
    }
}

}  // namespace rwadic
