#pragma once

#include <variant>
#include <vector>

#include "cocyclelab/rational.hpp"
#include "cocyclelab/system.hpp"

namespace cocyclelab {

// Continuous tent supported on the open ball B(center, radius):
// x -> weight * max(0, (radius - d(x, center)) / radius). Value at the center
// is weight; radius stays in (0, 1/2] so the support never wraps onto itself.
struct TentBump {
  Rational center;
  Rational radius;
  Rational weight;

  TentBump(const Rational& c, const Rational& r, const Rational& w);

  friend bool operator==(const TentBump& a, const TentBump& b) {
    return a.center == b.center && a.radius == b.radius && a.weight == b.weight;
  }
};

// One value per state of a finite system.
struct FiniteObservable {
  std::vector<Rational> values;

  FiniteObservable() = default;
  explicit FiniteObservable(std::vector<Rational> v) : values(std::move(v)) {}

  friend bool operator==(const FiniteObservable& a, const FiniteObservable& b) {
    return a.values == b.values;
  }
};

// Finite sum of tent bumps plus a constant: continuous, piecewise linear,
// with rational breakpoints.
struct PiecewiseLinearCircle {
  std::vector<TentBump> bumps;
  Rational offset;

  PiecewiseLinearCircle() : offset(0) {}
  PiecewiseLinearCircle(std::vector<TentBump> b, const Rational& o)
      : bumps(std::move(b)), offset(o) {}

  friend bool operator==(const PiecewiseLinearCircle& a,
                         const PiecewiseLinearCircle& b) {
    return a.offset == b.offset && a.bumps == b.bumps;
  }
};

using Observable = std::variant<FiniteObservable, PiecewiseLinearCircle>;

Rational tent_value(const TentBump& bump, const Rational& x);

// Direct evaluation at a circle coordinate: offset plus the bump values.
Rational evaluate_circle(const PiecewiseLinearCircle& obs, const Rational& x);

// Exact value of the observable at a point of the system's space.
Rational evaluate(const SystemDescriptor& sys, const Observable& obs,
                  const Point& x);

// Candidate slope-change positions: every center c and c +- radius, mod 1,
// sorted and deduplicated.
std::vector<Rational> breakpoints(const PiecewiseLinearCircle& obs);

// Sampled closed form of a piecewise-linear circle function: sorted breakpoint
// coordinates with exact values, linear in between (wrapping from the last
// breakpoint back to the first). An empty breakpoint list means the function
// is the constant `constant`.
struct PwlProfile {
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  Rational constant;

  Rational eval(const Rational& x) const;
  Rational max_abs() const;
  bool is_zero() const;
  // Largest |slope| over all segments, as a double (for float-grid moduli).
  double max_abs_slope() const;
};

// Exact compilation via one slope-event sweep; validates that the sweep closes
// up around the circle.
PwlProfile compile_profile(const PiecewiseLinearCircle& obs);

// Exact C0 norm. Finite: max |value|. Circle: a piecewise-linear function
// attains its extrema at breakpoints, so the breakpoint scan is exact.
Rational sup_norm(const SystemDescriptor& sys, const Observable& obs);
Rational sup_norm(const FiniteObservable& obs);
Rational sup_norm(const PiecewiseLinearCircle& obs);

// Pointwise linear-space operations. Finite sizes must agree; variants must
// match at the Observable level.
FiniteObservable add(const FiniteObservable& a, const FiniteObservable& b);
FiniteObservable scale(const FiniteObservable& a, const Rational& c);
PiecewiseLinearCircle add(const PiecewiseLinearCircle& a,
                          const PiecewiseLinearCircle& b);
PiecewiseLinearCircle scale(const PiecewiseLinearCircle& a, const Rational& c);
Observable add(const Observable& a, const Observable& b);
Observable scale(const Observable& a, const Rational& c);
Observable sub(const Observable& a, const Observable& b);

// Max |value| over the uniform float grid {g/grid_size : 0 <= g < grid_size}.
// A fast inexact scan used only to cross-check the exact sup norm.
double grid_scan_max_abs(const PiecewiseLinearCircle& obs, long grid_size);

void require_observable_matches(const SystemDescriptor& sys,
                                const Observable& obs);

}  // namespace cocyclelab
