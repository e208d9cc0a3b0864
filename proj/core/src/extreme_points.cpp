#include "rwadic/extreme_points.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rwadic/errors.hpp"

namespace rwadic {

namespace {

// distinct cycles of the functional graph s -> step[s]
std::vector<std::vector<Symbol>> functional_cycles(const std::vector<Symbol>& step) {
    std::vector<std::vector<Symbol>> cycles;
    std::set<std::vector<Symbol>> seen;  // keyed by sorted symbol set
    for (Symbol s = 0; s < static_cast<Symbol>(step.size()); ++s) {
        auto orbit = functional_orbit(step, s);
        std::vector<Symbol> key = orbit.cycle;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) cycles.push_back(orbit.cycle);
    }
    return cycles;
}

// all rotations of the reversed cycle as purely periodic points
void emit_reversed_rotations(const std::shared_ptr<const TransitionSystem>& ts,
                             const std::vector<Symbol>& cycle, std::vector<Point>& out) {
    Word rev(cycle.rbegin(), cycle.rend());
    for (std::size_t j = 0; j < rev.size(); ++j) {
        Word rot = rev;
        std::rotate(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(j), rot.end());
        out.push_back(Point::exact(ts, {}, std::move(rot)));
    }
}

}  // namespace

ExtremePointSet extreme_points(std::shared_ptr<const TransitionSystem> ts) {
    std::vector<Symbol> up(ts->alphabet_size()), down(ts->alphabet_size());
    for (Symbol s = 0; s < ts->alphabet_size(); ++s) {
        up[s] = ts->phi_plus(s);
        down[s] = ts->phi_minus(s);
    }
    ExtremePointSet out;
    for (const auto& c : functional_cycles(up)) emit_reversed_rotations(ts, c, out.maximal);
    for (const auto& c : functional_cycles(down)) emit_reversed_rotations(ts, c, out.minimal);
    return out;
}

CompactRepresentation compact_successor_sets(std::shared_ptr<const TransitionSystem> ts) {
    if (!ts->primitive())
        throw NotPrimitiveError("successor limit sets are computed for primitive systems only");
    const int d = ts->alphabet_size();
    std::vector<Symbol> up(d), down(d);
    for (Symbol s = 0; s < d; ++s) {
        up[s] = ts->phi_plus(s);
        down[s] = ts->phi_minus(s);
    }

    CompactRepresentation rep;
    rep.maximal = extreme_points(ts).maximal;

    for (const Point& omega : rep.maximal) {
        Word ocyc = omega.normal_form().second;  // omega_n = ocyc[(n-1) mod k]
        const std::int64_t komega = static_cast<std::int64_t>(ocyc.size());

        std::set<std::pair<Word, Word>> found;
        std::vector<Point> alphas;

        for (Symbol b = 0; b < d; ++b) {
            auto orbit_b = functional_orbit(up, b);
            const std::int64_t jb = static_cast<std::int64_t>(orbit_b.tail.size());
            const std::int64_t kb = static_cast<std::int64_t>(orbit_b.cycle.size());
            auto up_iter = [&](std::int64_t g) -> Symbol {
                if (g < jb) return orbit_b.tail[static_cast<std::size_t>(g)];
                return orbit_b.cycle[static_cast<std::size_t>((g - jb) % kb)];
            };
            for (Symbol t = 0; t < d; ++t) {
                if (!ts->allowed(b, t)) continue;
                auto sprime = ts->smallest_allowed_above(b, t);
                if (!sprime) continue;

                auto orbit_s = functional_orbit(down, *sprime);
                const std::int64_t jp = static_cast<std::int64_t>(orbit_s.tail.size());
                const std::int64_t kp = static_cast<std::int64_t>(orbit_s.cycle.size());

                // increment depths m = n + g: n ranges over one residue class
                // mod komega (fixed by where the climb lands on omega's cycle),
                // g over the phi_plus orbit of b; cover the tail plus one
                // joint period of the cyclic part
                const std::int64_t gmax = jb + std::lcm(kb, kp);
                const std::int64_t step = std::gcd(komega, kp);
                for (std::int64_t g = 0; g < gmax; ++g) {
                    Symbol u = up_iter(g);
                    std::int64_t nres = -1;
                    for (std::int64_t r = 1; r <= komega; ++r) {
                        if (ocyc[static_cast<std::size_t>(r - 1)] == u) {
                            nres = r;
                            break;
                        }
                    }
                    if (nres < 0) continue;
                    std::int64_t base = ((nres + g) % kp + kp) % kp;
                    for (std::int64_t rho = base % step; rho < kp; rho += step) {
                        if ((rho - base) % step != 0) continue;
                        // alpha_i = phi_minus^{m-i}(s') with m == rho (mod kp)
                        Word acyc(static_cast<std::size_t>(kp));
                        for (std::int64_t i = 1; i <= kp; ++i) {
                            std::int64_t idx = ((rho - i - jp) % kp + kp) % kp;
                            acyc[static_cast<std::size_t>(i - 1)] =
                                orbit_s.cycle[static_cast<std::size_t>(idx)];
                        }
                        Point alpha = Point::exact(ts, {}, acyc);
                        auto key = alpha.normal_form();
                        if (found.insert(key).second) alphas.push_back(std::move(alpha));
                    }
                }
            }
        }
        rep.successor_sets.push_back(std::move(alphas));
    }
    return rep;
}

}  // namespace rwadic
