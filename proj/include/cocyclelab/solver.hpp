#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/observable.hpp"
#include "cocyclelab/system.hpp"

namespace cocyclelab {

// Evidence that phi is not a coboundary: a point whose orbit sum over one full
// period is nonzero. The uniform measure on that orbit integrates phi to
// birkhoff_value / orbit_length.
struct ObstructionCertificate {
  Point witness_point;
  Integer orbit_length;  // the system period q
  Rational birkhoff_value;
  Rational measure_integral;
};

struct Solution {
  Observable u;
  Rational residual;  // sup_norm(L_f(u) - phi); identically 0 here
};

using SolveOutcome = std::variant<Solution, ObstructionCertificate>;

struct OrbitIntegral {
  Point representative;
  Rational integral;
};

// Checks B_f^q phi == 0 everywhere (q = period). Finite systems: every state,
// via exact cycle sums. Rotations: the symbolic orbit-sum function is tested
// at all of its breakpoints, which decides a piecewise-linear function
// exactly. Returns a certificate at the first violating point, if any.
std::optional<ObstructionCertificate> obstruction_test(const SystemDescriptor& sys,
                                                       const Observable& phi);

// Solves phi = u o f - u on a periodic system with the averaging formula
// u(x) = -(1/q) * sum_{j=1}^{q} B_f^j phi(x), or returns the obstruction.
// Finite solutions are normalized so each cycle has minimum 0.
SolveOutcome periodic_solve(const SystemDescriptor& sys, const Observable& phi);

// Orbit averages of phi against the ergodic invariant measures: one entry per
// cycle for finite systems; for rotations, one entry per orbit of each
// breakpoint (reduced mod 1/q) plus any extra sample points. All integrals
// vanish iff obstruction_test finds nothing. `extra_samples` is ignored for
// finite systems, whose cycles are already exhausted.
std::vector<OrbitIntegral> invariant_measure_integrals(
    const SystemDescriptor& sys, const Observable& phi,
    const std::vector<Point>& extra_samples = {});

// dim of (functions) / (coboundaries) for a finite permutation: one linear
// obstruction per cycle, so the dimension is the cycle count.
std::size_t cohomology_dimension(const SystemDescriptor& sys);

// The orbit-sum function B_f^q phi of a rotation as a closed-form observable.
PiecewiseLinearCircle birkhoff_symbolic(const CircleRotation& rot,
                                        const PiecewiseLinearCircle& phi,
                                        long q);

}  // namespace cocyclelab
