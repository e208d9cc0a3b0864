#pragma once

#include <memory>
#include <vector>

#include "rwadic/point.hpp"
#include "rwadic/transition_system.hpp"

namespace rwadic {

// The points with no admissible coordinate increase (maximal) or decrease
// (minimal).  Both families are purely periodic: maximal points satisfy
// x_n = phi_plus(x_{n+1}) for every n, so they are exactly the rotations of
// the reversed phi_plus cycles, and dually for minimal points.
struct ExtremePointSet {
    std::vector<Point> maximal;
    std::vector<Point> minimal;
};

ExtremePointSet extreme_points(std::shared_ptr<const TransitionSystem> ts);

// For each maximal point omega, the set of limits of successor images tau(x)
// over non-maximal x approaching omega.  Each limit is a phase of a
// phi_minus cycle reached from an increment site; the achievable phases form
// cosets determined by the cycle lengths involved.  Requires a primitive
// system.
struct CompactRepresentation {
    std::vector<Point> maximal;
    std::vector<std::vector<Point>> successor_sets;  // aligned with maximal
};

CompactRepresentation compact_successor_sets(std::shared_ptr<const TransitionSystem> ts);

}  // namespace rwadic
