#include "cocyclelab/solver.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

// Exact symbolic computations on rotations materialize q translates; cap the
// term count so a pathological denominator fails fast instead of thrashing.
constexpr long kMaxSymbolicTerms = 4'000'000;

long rotation_period_as_long(const CircleRotation& rot, std::size_t bump_count) {
  const Integer q_int = rot.alpha.get_den();
  if (!q_int.fits_slong_p()) {
    throw UnsupportedSystem("rotation period does not fit a machine word");
  }
  const long q = q_int.get_si();
  if (q > kMaxSymbolicTerms / static_cast<long>(bump_count + 1)) {
    throw UnsupportedSystem("rotation period too large for exact computation");
  }
  return q;
}

struct CycleData {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<Rational> cycle_sum;    // per state
  std::vector<std::size_t> cycle_len;  // per state
};

CycleData cycle_sums(const FinitePermutation& perm, const FiniteObservable& phi) {
  CycleData data;
  data.cycles = cycles(perm);
  data.cycle_sum.resize(perm.size());
  data.cycle_len.resize(perm.size());
  for (const auto& cycle : data.cycles) {
    Rational sum(0);
    for (std::size_t i : cycle) sum += phi.values[i];
    for (std::size_t i : cycle) {
      data.cycle_sum[i] = sum;
      data.cycle_len[i] = cycle.size();
    }
  }
  return data;
}

std::optional<ObstructionCertificate> obstruction_finite(
    const FinitePermutation& perm, const FiniteObservable& phi) {
  const CycleData data = cycle_sums(perm, phi);
  const Integer q = period(SystemDescriptor{perm});
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (data.cycle_sum[s] == 0) continue;
    const Rational laps = Rational(q) / Rational(Integer(
        static_cast<unsigned long>(data.cycle_len[s])));
    ObstructionCertificate cert;
    cert.witness_point = FinitePoint{s};
    cert.orbit_length = q;
    cert.birkhoff_value = laps * data.cycle_sum[s];
    cert.measure_integral = cert.birkhoff_value / Rational(q);
    return cert;
  }
  return std::nullopt;
}

std::optional<ObstructionCertificate> obstruction_rotation(
    const CircleRotation& rot, const PiecewiseLinearCircle& phi) {
  const long q = rotation_period_as_long(rot, phi.bumps.size());
  const PiecewiseLinearCircle total = birkhoff_symbolic(rot, phi, q);
  const PwlProfile profile = compile_profile(total);

  auto make_cert = [&](const Rational& coord, const Rational& value) {
    ObstructionCertificate cert;
    cert.witness_point = CirclePoint(coord);
    cert.orbit_length = Integer(q);
    cert.birkhoff_value = value;
    cert.measure_integral = value / Rational(Integer(q));
    return cert;
  };

  if (profile.xs.empty()) {
    if (profile.constant == 0) return std::nullopt;
    return make_cert(Rational(0), profile.constant);
  }
  for (std::size_t i = 0; i < profile.xs.size(); ++i) {
    if (profile.ys[i] != 0) return make_cert(profile.xs[i], profile.ys[i]);
  }
  return std::nullopt;
}

Solution solve_finite(const FinitePermutation& perm, const FiniteObservable& phi) {
  // With vanishing cycle sums the averaging over one period collapses to
  // u(x) = -(1/L) sum_{r=0}^{L-1} B_f^r phi(x) on a cycle of length L.
  FiniteObservable u;
  u.values.resize(perm.size());
  for (const auto& cycle : cycles(perm)) {
    const std::size_t len = cycle.size();
    std::vector<Rational> vals(len);
    for (std::size_t m = 0; m < len; ++m) {
      Rational acc(0);
      for (std::size_t i = 0; i + 1 < len; ++i) {
        acc += Rational(Integer(static_cast<unsigned long>(len - 1 - i))) *
               phi.values[cycle[(m + i) % len]];
      }
      vals[m] = -acc / Rational(Integer(static_cast<unsigned long>(len)));
    }
    Rational lowest = *std::min_element(vals.begin(), vals.end());
    for (std::size_t m = 0; m < len; ++m) u.values[cycle[m]] = vals[m] - lowest;
  }

  SystemDescriptor sys{perm};
  Observable residual_obs = sub(cohomological_operator(sys, Observable{u}),
                                Observable{phi});
  Rational residual = sup_norm(sys, residual_obs);
  if (residual != 0) throw std::logic_error("periodic solve left a residual");
  return Solution{Observable{std::move(u)}, residual};
}

Solution solve_rotation(const CircleRotation& rot,
                        const PiecewiseLinearCircle& phi) {
  const long q = rotation_period_as_long(rot, phi.bumps.size());
  PiecewiseLinearCircle u;
  u.offset = -phi.offset * Rational(Integer(q + 1)) / 2;
  u.bumps.reserve(phi.bumps.size() * static_cast<std::size_t>(q));
  // u = -(1/q) sum_{j=1}^{q} B_f^j phi = -(1/q) sum_{i=0}^{q-1} (q-i) phi o f^i.
  for (long i = 0; i < q; ++i) {
    const Rational gamma = -Rational(Integer(q - i)) / Rational(Integer(q));
    const Rational shift = Rational(Integer(i)) * rot.alpha;
    for (const auto& bump : phi.bumps) {
      u.bumps.emplace_back(bump.center - shift, bump.radius, bump.weight * gamma);
    }
  }

  SystemDescriptor sys{rot};
  Observable residual_obs = sub(cohomological_operator(sys, Observable{u}),
                                Observable{phi});
  Rational residual = sup_norm(sys, residual_obs);
  if (residual != 0) throw std::logic_error("periodic solve left a residual");
  return Solution{Observable{std::move(u)}, residual};
}

}  // namespace

PiecewiseLinearCircle birkhoff_symbolic(const CircleRotation& rot,
                                        const PiecewiseLinearCircle& phi,
                                        long q) {
  PiecewiseLinearCircle total;
  total.offset = phi.offset * Rational(Integer(q));
  total.bumps.reserve(phi.bumps.size() * static_cast<std::size_t>(q));
  for (long i = 0; i < q; ++i) {
    const Rational shift = Rational(Integer(i)) * rot.alpha;
    for (const auto& bump : phi.bumps) {
      total.bumps.emplace_back(bump.center - shift, bump.radius, bump.weight);
    }
  }
  return total;
}

std::optional<ObstructionCertificate> obstruction_test(const SystemDescriptor& sys,
                                                       const Observable& phi) {
  require_observable_matches(sys, phi);
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    return obstruction_finite(*perm, std::get<FiniteObservable>(phi));
  }
  return obstruction_rotation(std::get<CircleRotation>(sys),
                              std::get<PiecewiseLinearCircle>(phi));
}

SolveOutcome periodic_solve(const SystemDescriptor& sys, const Observable& phi) {
  if (auto cert = obstruction_test(sys, phi)) return *cert;
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    return solve_finite(*perm, std::get<FiniteObservable>(phi));
  }
  return solve_rotation(std::get<CircleRotation>(sys),
                        std::get<PiecewiseLinearCircle>(phi));
}

std::vector<OrbitIntegral> invariant_measure_integrals(
    const SystemDescriptor& sys, const Observable& phi,
    const std::vector<Point>& extra_samples) {
  require_observable_matches(sys, phi);
  std::vector<OrbitIntegral> out;

  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    const auto& fin = std::get<FiniteObservable>(phi);
    for (const auto& cycle : cycles(*perm)) {
      Rational sum(0);
      for (std::size_t i : cycle) sum += fin.values[i];
      out.push_back({FinitePoint{cycle.front()},
                     sum / Rational(Integer(static_cast<unsigned long>(cycle.size())))});
    }
    return out;
  }

  const auto& rot = std::get<CircleRotation>(sys);
  const auto& pwl = std::get<PiecewiseLinearCircle>(phi);
  const long q = rotation_period_as_long(rot, pwl.bumps.size());
  const PwlProfile orbit_sum = compile_profile(birkhoff_symbolic(rot, pwl, q));
  const Rational step = rational_from(1, q);

  auto orbit_key = [&](const Rational& coord) {
    Rational xq = mod_one(coord) * q;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), xq.get_num().get_mpz_t(), xq.get_den().get_mpz_t());
    return mod_one(coord) - Rational(fl) * step;
  };

  std::map<Rational, bool> seen;
  std::vector<Rational> reps;
  for (const auto& b : breakpoints(pwl)) {
    Rational key = orbit_key(b);
    if (!seen.emplace(key, true).second) continue;
    reps.push_back(key);
  }
  for (const auto& pt : extra_samples) {
    require_point_in_system(sys, pt);
    Rational key = orbit_key(std::get<CirclePoint>(pt).coord);
    if (!seen.emplace(key, true).second) continue;
    reps.push_back(key);
  }
  if (reps.empty()) reps.push_back(Rational(0));
  std::sort(reps.begin(), reps.end());

  for (const auto& rep : reps) {
    out.push_back({CirclePoint(rep), orbit_sum.eval(rep) / Rational(Integer(q))});
  }
  return out;
}

std::size_t cohomology_dimension(const SystemDescriptor& sys) {
  const auto* perm = std::get_if<FinitePermutation>(&sys);
  if (!perm) {
    throw UnsupportedSystem(
        "cohomology dimension is only computed for finite permutations");
  }
  return cycles(*perm).size();
}

}  // namespace cocyclelab
