#include "cocyclelab/cocycle.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

Rational birkhoff_sum(const SystemDescriptor& sys, const Observable& obs,
                      std::int64_t q, const Point& x) {
  if (q < 0) throw std::invalid_argument("birkhoff_sum needs q >= 0");
  require_observable_matches(sys, obs);
  require_point_in_system(sys, x);
  Rational total(0);
  Point y = x;
  for (std::int64_t i = 0; i < q; ++i) {
    total += evaluate(sys, obs, y);
    y = apply(sys, y, 1);
  }
  return total;
}

Observable compose_iterate(const SystemDescriptor& sys, const Observable& obs,
                           std::int64_t k) {
  require_observable_matches(sys, obs);
  if (const auto* fin = std::get_if<FiniteObservable>(&obs)) {
    FiniteObservable out;
    out.values.resize(fin->values.size());
    for (std::size_t i = 0; i < fin->values.size(); ++i) {
      Point image = apply(sys, FinitePoint{i}, k);
      out.values[i] = fin->values[std::get<FinitePoint>(image).index];
    }
    return out;
  }
  const auto& rot = std::get<CircleRotation>(sys);
  const auto& pwl = std::get<PiecewiseLinearCircle>(obs);
  Rational shift = Rational(Integer(static_cast<long>(k))) * rot.alpha;
  PiecewiseLinearCircle out;
  out.offset = pwl.offset;
  out.bumps.reserve(pwl.bumps.size());
  for (const auto& bump : pwl.bumps) {
    out.bumps.emplace_back(bump.center - shift, bump.radius, bump.weight);
  }
  return out;
}

Observable cohomological_operator(const SystemDescriptor& sys,
                                  const Observable& u) {
  return sub(compose_iterate(sys, u, 1), u);
}

namespace {

Rational half_spread_max(const std::vector<std::pair<Rational, Rational>>& minmax) {
  Rational best(0);
  for (const auto& [lo, hi] : minmax) {
    Rational spread = hi - lo;
    if (spread > best) best = spread;
  }
  return best / 2;
}

Rational quotient_norm_finite(const FinitePermutation& perm,
                              const FiniteObservable& obs) {
  Rational best(0);
  for (const auto& cycle : cycles(perm)) {
    Rational lo = obs.values[cycle[0]];
    Rational hi = lo;
    for (std::size_t i : cycle) {
      const Rational& v = obs.values[i];
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    Rational spread = hi - lo;
    if (spread > best) best = spread;
  }
  return best / 2;
}

Rational quotient_norm_rotation(const CircleRotation& rot,
                                const PiecewiseLinearCircle& obs) {
  const Integer q_int = rot.alpha.get_den();
  if (!q_int.fits_slong_p()) {
    throw UnsupportedSystem("rotation period too large for exact quotient norm");
  }
  const long q = q_int.get_si();
  std::vector<Rational> base = breakpoints(obs);
  if (base.empty()) return Rational(0);

  PwlProfile profile = compile_profile(obs);
  const Rational step = rational_from(1, q);

  // The candidate maximizers of the orbit spread are the breakpoints of all q
  // translates; that set is closed under shifts by 1/q, so one evaluation per
  // point grouped by orbit (key = position mod 1/q) covers every candidate.
  std::map<Rational, std::pair<Rational, Rational>> orbit_minmax;
  for (const auto& b : base) {
    for (long j = 0; j < q; ++j) {
      Rational x = mod_one(b + Rational(j) * step);
      // Orbit key: x reduced mod 1/q, i.e. x - floor(x*q)/q.
      Rational xq = x * q;
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), xq.get_num().get_mpz_t(),
                 xq.get_den().get_mpz_t());
      Rational key = x - Rational(fl) * step;
      Rational v = profile.eval(x);
      auto it = orbit_minmax.find(key);
      if (it == orbit_minmax.end()) {
        orbit_minmax.emplace(key, std::make_pair(v, v));
      } else {
        if (v < it->second.first) it->second.first = v;
        if (v > it->second.second) it->second.second = v;
      }
    }
  }
  std::vector<std::pair<Rational, Rational>> ranges;
  ranges.reserve(orbit_minmax.size());
  for (const auto& [_, mm] : orbit_minmax) ranges.push_back(mm);
  return half_spread_max(ranges);
}

}  // namespace

Rational quotient_norm_exact(const SystemDescriptor& sys, const Observable& obs) {
  require_observable_matches(sys, obs);
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    return quotient_norm_finite(*perm, std::get<FiniteObservable>(obs));
  }
  return quotient_norm_rotation(std::get<CircleRotation>(sys),
                                std::get<PiecewiseLinearCircle>(obs));
}

Rational quotient_norm_lower_bound(const SystemDescriptor& sys,
                                   const Observable& obs, const Point& x,
                                   std::int64_t k) {
  Rational a = evaluate(sys, obs, x);
  Rational b = evaluate(sys, obs, apply(sys, x, k));
  Rational d = a - b;
  if (d < 0) d = -d;
  return d / 2;
}

}  // namespace cocyclelab
