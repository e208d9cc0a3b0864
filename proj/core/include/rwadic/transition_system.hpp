#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rwadic {

using Symbol = int;
using Word = std::vector<Symbol>;

// Finite 0/1 transition structure over the alphabet {0, ..., d-1}.
// A word a_1 ... a_m is admissible when matrix(a_i, a_{i+1}) == 1 for
// every adjacent pair; one-sided sequences follow the same rule.
class TransitionSystem {
public:
    TransitionSystem(std::vector<std::vector<int>> rows);

    int alphabet_size() const { return d_; }
    bool allowed(Symbol a, Symbol b) const { return matrix_[a][b] != 0; }
    const std::vector<std::vector<int>>& matrix() const { return matrix_; }

    bool irreducible() const { return irreducible_; }
    bool primitive() const { return primitive_; }
    // gcd of cycle lengths through state 0 (well defined iff irreducible)
    int period() const { return period_; }

    // largest y with allowed(y, s); every column is nonempty so this is total
    Symbol phi_plus(Symbol s) const { return phi_plus_[s]; }
    // smallest y with allowed(y, s)
    Symbol phi_minus(Symbol s) const { return phi_minus_[s]; }

    // largest y < s with allowed(y, t), if any
    std::optional<Symbol> largest_allowed_below(Symbol s, Symbol t) const;
    // smallest y > s with allowed(y, t), if any
    std::optional<Symbol> smallest_allowed_above(Symbol s, Symbol t) const;

    bool word_admissible(const Word& w) const;
    void require_admissible(const Word& w) const;

    std::string describe() const;

private:
    int d_;
    std::vector<std::vector<int>> matrix_;
    bool irreducible_ = false;
    bool primitive_ = false;
    int period_ = 0;
    std::vector<Symbol> phi_plus_;
    std::vector<Symbol> phi_minus_;
};

// Validating constructor wrapper: throws EmptyRowOrColumnError for a matrix
// with an all-zero row or column; irreducibility and primitivity are computed
// and exposed as flags, not errors.
TransitionSystem validate_tms(const std::vector<std::vector<int>>& rows);

// Eventual orbit of a symbol under a self-map of the alphabet: the symbols
// visited before entering the cycle, then the cycle itself.
struct FunctionalOrbit {
    std::vector<Symbol> tail;   // strictly before the cycle
    std::vector<Symbol> cycle;  // cycle[i+1] = step(cycle[i]), wraps around
};

FunctionalOrbit functional_orbit(const std::vector<Symbol>& step, Symbol start);

// Level data for a non-stationary adic diagram: alphabet sizes per level and
// one transition matrix between consecutive levels.  Data model only; no
// dynamics are defined on it.
struct LevelledDiagram {
    std::vector<int> alphabet_sizes;
    std::vector<std::vector<std::vector<int>>> matrices;  // matrices[k]: level k -> k+1

    void validate() const;  // shape and 0/1 checks
};

}  // namespace rwadic
