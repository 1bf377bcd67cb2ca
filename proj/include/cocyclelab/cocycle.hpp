#pragma once

#include <cstdint>

#include "cocyclelab/observable.hpp"
#include "cocyclelab/system.hpp"

namespace cocyclelab {

// Partial orbit sum: sum_{i=0}^{q-1} obs(f^i(x)). The empty sum (q = 0) is 0.
Rational birkhoff_sum(const SystemDescriptor& sys, const Observable& obs,
                      std::int64_t q, const Point& x);

// obs composed with f^k, in closed form. Finite: value table pulled back along
// the permutation. Circle: rotating the argument by k*alpha shifts every bump
// center by -k*alpha; the offset is untouched.
Observable compose_iterate(const SystemDescriptor& sys, const Observable& obs,
                           std::int64_t k);

// The cohomological operator L_f(u) = u o f - u, computed symbolically.
Observable cohomological_operator(const SystemDescriptor& sys,
                                  const Observable& u);

// Exact distance from obs to ker L_f in the C0 norm.
//   Finite permutation: invariants are constant on cycles, so the norm is
//   max over cycles of (max - min)/2.
//   Rotation by p/q: invariants are the 1/q-periodic continuous functions, so
//   the norm is (1/2) sup_x (max_j - min_j) obs(x + j/q), and the sup is
//   attained on the breakpoints of the q superimposed translates.
Rational quotient_norm_exact(const SystemDescriptor& sys, const Observable& obs);

// |obs(x) - obs(f^k(x))| / 2: a certified lower bound for the quotient norm,
// since every invariant function takes equal values at x and f^k(x).
Rational quotient_norm_lower_bound(const SystemDescriptor& sys,
                                   const Observable& obs, const Point& x,
                                   std::int64_t k);

}  // namespace cocyclelab
