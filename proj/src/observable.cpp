#include "cocyclelab/observable.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

TentBump::TentBump(const Rational& c, const Rational& r, const Rational& w)
    : center(mod_one(c)), radius(r), weight(w) {
  if (radius <= 0 || radius > rational_from(1, 2)) {
    throw std::invalid_argument("tent bump radius must lie in (0, 1/2]");
  }
}

Rational tent_value(const TentBump& bump, const Rational& x) {
  Rational d = circle_distance(x, bump.center);
  if (d >= bump.radius) return Rational(0);
  return bump.weight * (bump.radius - d) / bump.radius;
}

Rational evaluate_circle(const PiecewiseLinearCircle& obs, const Rational& x) {
  Rational v = obs.offset;
  for (const auto& bump : obs.bumps) v += tent_value(bump, x);
  return v;
}

void require_observable_matches(const SystemDescriptor& sys,
                                const Observable& obs) {
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    const auto* fin = std::get_if<FiniteObservable>(&obs);
    if (!fin) throw VariantMismatch("circle observable used with a finite system");
    if (fin->values.size() != perm->size()) {
      throw VariantMismatch("observable length differs from system size");
    }
    return;
  }
  if (!std::holds_alternative<PiecewiseLinearCircle>(obs)) {
    throw VariantMismatch("finite observable used with a circle system");
  }
}

Rational evaluate(const SystemDescriptor& sys, const Observable& obs,
                  const Point& x) {
  require_observable_matches(sys, obs);
  require_point_in_system(sys, x);
  if (const auto* fin = std::get_if<FiniteObservable>(&obs)) {
    return fin->values[std::get<FinitePoint>(x).index];
  }
  return evaluate_circle(std::get<PiecewiseLinearCircle>(obs),
                         std::get<CirclePoint>(x).coord);
}

std::vector<Rational> breakpoints(const PiecewiseLinearCircle& obs) {
  std::vector<Rational> pts;
  pts.reserve(obs.bumps.size() * 3);
  for (const auto& bump : obs.bumps) {
    pts.push_back(bump.center);
    pts.push_back(mod_one(bump.center - bump.radius));
    pts.push_back(mod_one(bump.center + bump.radius));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace {

// Sum of bump slopes at a non-breakpoint x.
Rational slope_at(const PiecewiseLinearCircle& obs, const Rational& x) {
  Rational s(0);
  for (const auto& bump : obs.bumps) {
    Rational u = mod_one(x - bump.center);
    if (u > 0 && u < bump.radius) {
      s -= bump.weight / bump.radius;
    } else if (u > 1 - bump.radius && u < 1) {
      s += bump.weight / bump.radius;
    }
  }
  return s;
}

}  // namespace

PwlProfile compile_profile(const PiecewiseLinearCircle& obs) {
  PwlProfile profile;
  // Slope deltas: a tent gains w/r at c-r, loses 2w/r at c, regains w/r at c+r.
  std::map<Rational, Rational> delta;
  for (const auto& bump : obs.bumps) {
    Rational s = bump.weight / bump.radius;
    delta[mod_one(bump.center - bump.radius)] += s;
    delta[bump.center] -= 2 * s;
    delta[mod_one(bump.center + bump.radius)] += s;
  }
  if (delta.empty()) {
    profile.constant = obs.offset;
    return profile;
  }

  profile.xs.reserve(delta.size());
  for (const auto& [x, _] : delta) profile.xs.push_back(x);
  const std::size_t n = profile.xs.size();
  profile.ys.resize(n);
  profile.ys[0] = evaluate_circle(obs, profile.xs[0]);

  // Walk the circle once, integrating the slope between breakpoints.
  Rational next = profile.xs[0] + 1;
  if (n > 1) next = profile.xs[1];
  Rational slope = slope_at(obs, (profile.xs[0] + next) / 2);
  for (std::size_t i = 1; i < n; ++i) {
    profile.ys[i] = profile.ys[i - 1] + slope * (profile.xs[i] - profile.xs[i - 1]);
    slope += delta.at(profile.xs[i]);
  }
  Rational closure =
      profile.ys[n - 1] + slope * (profile.xs[0] + 1 - profile.xs[n - 1]);
  if (closure != profile.ys[0]) {
    throw std::logic_error("piecewise-linear sweep failed to close up");
  }
  return profile;
}

Rational PwlProfile::eval(const Rational& x) const {
  if (xs.empty()) return constant;
  Rational t = mod_one(x);
  auto it = std::upper_bound(xs.begin(), xs.end(), t);
  std::size_t hi, lo;
  Rational x_lo, x_hi;
  if (it == xs.begin() || it == xs.end()) {
    // Wrapping segment from the last breakpoint to the first.
    lo = xs.size() - 1;
    hi = 0;
    x_lo = xs[lo];
    x_hi = xs[hi] + 1;
    if (it == xs.begin()) t += 1;
  } else {
    hi = static_cast<std::size_t>(it - xs.begin());
    lo = hi - 1;
    x_lo = xs[lo];
    x_hi = xs[hi];
  }
  if (t == x_lo) return ys[lo];
  return ys[lo] + (ys[hi] - ys[lo]) * (t - x_lo) / (x_hi - x_lo);
}

Rational PwlProfile::max_abs() const {
  if (xs.empty()) return constant < 0 ? Rational(-constant) : constant;
  Rational best(0);
  for (const auto& y : ys) {
    Rational a = y < 0 ? Rational(-y) : y;
    if (a > best) best = a;
  }
  return best;
}

bool PwlProfile::is_zero() const {
  if (xs.empty()) return constant == 0;
  return std::all_of(ys.begin(), ys.end(),
                     [](const Rational& y) { return y == 0; });
}

double PwlProfile::max_abs_slope() const {
  if (xs.size() < 2) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t j = (i + 1) % xs.size();
    Rational dx = xs[j] - xs[i];
    if (j == 0) dx += 1;
    Rational dy = ys[j] - ys[i];
    Rational slope = dy / dx;
    double s = std::abs(slope.get_d());
    if (s > best) best = s;
  }
  return best;
}

Rational sup_norm(const FiniteObservable& obs) {
  Rational best(0);
  for (const auto& v : obs.values) {
    Rational a = v < 0 ? Rational(-v) : v;
    if (a > best) best = a;
  }
  return best;
}

Rational sup_norm(const PiecewiseLinearCircle& obs) {
  return compile_profile(obs).max_abs();
}

Rational sup_norm(const SystemDescriptor& sys, const Observable& obs) {
  require_observable_matches(sys, obs);
  if (const auto* fin = std::get_if<FiniteObservable>(&obs)) return sup_norm(*fin);
  return sup_norm(std::get<PiecewiseLinearCircle>(obs));
}

FiniteObservable add(const FiniteObservable& a, const FiniteObservable& b) {
  if (a.values.size() != b.values.size()) {
    throw std::invalid_argument("finite observables of different sizes");
  }
  FiniteObservable out;
  out.values.reserve(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    out.values.push_back(a.values[i] + b.values[i]);
  }
  return out;
}

FiniteObservable scale(const FiniteObservable& a, const Rational& c) {
  FiniteObservable out;
  out.values.reserve(a.values.size());
  for (const auto& v : a.values) out.values.push_back(c * v);
  return out;
}

PiecewiseLinearCircle add(const PiecewiseLinearCircle& a,
                          const PiecewiseLinearCircle& b) {
  PiecewiseLinearCircle out = a;
  out.bumps.insert(out.bumps.end(), b.bumps.begin(), b.bumps.end());
  out.offset += b.offset;
  return out;
}

PiecewiseLinearCircle scale(const PiecewiseLinearCircle& a, const Rational& c) {
  PiecewiseLinearCircle out;
  out.offset = a.offset * c;
  out.bumps.reserve(a.bumps.size());
  for (const auto& bump : a.bumps) {
    out.bumps.emplace_back(bump.center, bump.radius, bump.weight * c);
  }
  return out;
}

Observable add(const Observable& a, const Observable& b) {
  if (const auto* fa = std::get_if<FiniteObservable>(&a)) {
    const auto* fb = std::get_if<FiniteObservable>(&b);
    if (!fb) throw VariantMismatch("cannot add observables of different variants");
    return add(*fa, *fb);
  }
  const auto* pb = std::get_if<PiecewiseLinearCircle>(&b);
  if (!pb) throw VariantMismatch("cannot add observables of different variants");
  return add(std::get<PiecewiseLinearCircle>(a), *pb);
}

Observable scale(const Observable& a, const Rational& c) {
  if (const auto* fa = std::get_if<FiniteObservable>(&a)) return scale(*fa, c);
  return scale(std::get<PiecewiseLinearCircle>(a), c);
}

Observable sub(const Observable& a, const Observable& b) {
  return add(a, scale(b, Rational(-1)));
}

double grid_scan_max_abs(const PiecewiseLinearCircle& obs, long grid_size) {
  if (grid_size < 1) throw std::invalid_argument("grid size must be positive");
  PwlProfile profile = compile_profile(obs);
  if (profile.xs.empty()) return std::abs(profile.constant.get_d());

  const std::size_t n = profile.xs.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = profile.xs[i].get_d();
    ys[i] = profile.ys[i].get_d();
  }
  double best = 0.0;
  std::size_t seg = 0;
  for (long g = 0; g < grid_size; ++g) {
    double x = static_cast<double>(g) / static_cast<double>(grid_size);
    double v;
    if (x < xs[0]) {
      // Before the first breakpoint: on the wrapping segment.
      double x_lo = xs[n - 1] - 1.0;
      double span = xs[0] - x_lo;
      v = span == 0.0 ? ys[0] : ys[n - 1] + (ys[0] - ys[n - 1]) * (x - x_lo) / span;
    } else {
      while (seg + 1 < n && xs[seg + 1] <= x) ++seg;
      if (seg + 1 < n) {
        double span = xs[seg + 1] - xs[seg];
        v = span == 0.0 ? ys[seg]
                        : ys[seg] + (ys[seg + 1] - ys[seg]) * (x - xs[seg]) / span;
      } else {
        double span = xs[0] + 1.0 - xs[seg];
        v = span == 0.0 ? ys[seg]
                        : ys[seg] + (ys[0] - ys[seg]) * (x - xs[seg]) / span;
      }
    }
    best = std::max(best, std::abs(v));
  }
  return best;
}

}  // namespace cocyclelab
