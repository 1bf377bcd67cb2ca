#include "cocyclelab/witness.hpp"

#include <future>
#include <stdexcept>
#include <string>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

constexpr std::int64_t kMaxLevel = 24;

std::int64_t pow2(std::int64_t e) { return std::int64_t{1} << e; }

void check_level(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("witness level must be >= 1");
  if (n > kMaxLevel) {
    throw std::invalid_argument("witness level larger than " +
                                std::to_string(kMaxLevel) + " is not supported");
  }
}

Point canonical_seed(const SystemDescriptor& sys, std::int64_t gate_horizon) {
  if (std::holds_alternative<CircleRotation>(sys)) return CirclePoint(Rational(0));
  const auto& perm = std::get<FinitePermutation>(sys);
  // A state avoids itself for all lags up to the gate iff its cycle is longer.
  for (const auto& cycle : cycles(perm)) {
    if (static_cast<std::int64_t>(cycle.size()) > gate_horizon) {
      return FinitePoint{cycle.front()};
    }
  }
  throw PeriodicAtHorizon("no state of the permutation stays injective up to lag " +
                          std::to_string(gate_horizon));
}

// weight of the expanded coboundary block at iterate j
Rational expanded_weight(std::int64_t j, std::int64_t two_n) {
  const Rational unit = rational_from(1, two_n);
  if (j == -two_n) return unit;
  if (j == two_n - 1) return -unit;
  const std::int64_t aj = j < 0 ? -j : j;
  const std::int64_t aj1 = j + 1 < 0 ? -(j + 1) : j + 1;
  return rational_from(aj - aj1, two_n);
}

Observable blocks_to_observable(const SystemDescriptor& sys, const Point& x_n,
                                const Rational& r_n,
                                const std::vector<std::pair<std::int64_t, Rational>>& blocks) {
  if (std::holds_alternative<CircleRotation>(sys)) {
    PiecewiseLinearCircle out;
    out.bumps.reserve(blocks.size());
    for (const auto& [j, w] : blocks) {
      Point center = apply(sys, x_n, j);
      out.bumps.emplace_back(std::get<CirclePoint>(center).coord, r_n, w);
    }
    return out;
  }
  const auto& perm = std::get<FinitePermutation>(sys);
  FiniteObservable out;
  out.values.assign(perm.size(), Rational(0));
  // Discrete metric: the ball of radius r <= 1/2 is the point itself, so each
  // block contributes exactly its weight at f^j(x_n).
  for (const auto& [j, w] : blocks) {
    Point center = apply(sys, x_n, j);
    out.values[std::get<FinitePoint>(center).index] += w;
  }
  return out;
}

void check_disjoint_supports(const SystemDescriptor& sys, const Point& x_n,
                             const Rational& r_n, std::int64_t horizon) {
  const Rational needed = 2 * r_n;
  Point y = x_n;
  for (std::int64_t lag = 1; lag <= horizon; ++lag) {
    y = apply(sys, y, 1);
    if (metric(sys, y, x_n) < needed) {
      throw InvalidRadius("iterated supports overlap at lag " + std::to_string(lag));
    }
  }
}

}  // namespace

std::int64_t witness_horizon(std::int64_t n) {
  check_level(n);
  return pow2(n + 1) - 2;
}

std::pair<Point, std::int64_t> find_witness_point(
    const SystemDescriptor& sys, std::int64_t n,
    const std::optional<Point>& seed) {
  const std::int64_t horizon = witness_horizon(n);
  const std::int64_t gate = horizon + 1;  // keep the far point clear as well
  Point x = seed ? *seed : canonical_seed(sys, gate);
  require_point_in_system(sys, x);
  if (!injective_horizon(sys, x, gate)) {
    throw PeriodicAtHorizon("orbit of the base point returns within lag " +
                            std::to_string(gate));
  }
  return {x, horizon};
}

Rational witness_radius(const SystemDescriptor& sys, const Point& x,
                        std::int64_t n) {
  const std::int64_t horizon = witness_horizon(n);
  Rational r = separation_radius(sys, x, horizon);
  const Rational far_gap = metric(sys, apply(sys, x, horizon + 1), x);
  if (far_gap == 0) {
    throw PeriodicAtHorizon("orbit of the base point returns at lag " +
                            std::to_string(horizon + 1));
  }
  return far_gap < r ? far_gap : r;
}

Observable build_witness_profile(const SystemDescriptor& sys, const Point& x_n,
                                 const Rational& r_n, std::int64_t n) {
  check_level(n);
  if (r_n <= 0) throw InvalidRadius("witness radius must be positive");
  check_disjoint_supports(sys, x_n, r_n, witness_horizon(n));
  const std::int64_t two_n = pow2(n);
  std::vector<std::pair<std::int64_t, Rational>> blocks;
  blocks.reserve(static_cast<std::size_t>(2 * two_n - 1));
  for (std::int64_t j = -(two_n - 1); j <= two_n - 1; ++j) {
    const std::int64_t aj = j < 0 ? -j : j;
    blocks.emplace_back(j, 1 - rational_from(aj, two_n));
  }
  return blocks_to_observable(sys, x_n, r_n, blocks);
}

Observable witness_coboundary_direct(const SystemDescriptor& sys,
                                     const Observable& u) {
  return cohomological_operator(sys, u);
}

Observable witness_coboundary_expanded(const SystemDescriptor& sys,
                                       const Point& x_n, const Rational& r_n,
                                       std::int64_t n) {
  check_level(n);
  if (r_n <= 0) throw InvalidRadius("witness radius must be positive");
  check_disjoint_supports(sys, x_n, r_n, witness_horizon(n));
  const std::int64_t two_n = pow2(n);
  std::vector<std::pair<std::int64_t, Rational>> blocks;
  blocks.reserve(static_cast<std::size_t>(2 * two_n));
  for (std::int64_t j = -two_n; j <= two_n - 1; ++j) {
    blocks.emplace_back(j, expanded_weight(j, two_n));
  }
  return blocks_to_observable(sys, x_n, r_n, blocks);
}

bool observables_equal(const SystemDescriptor& sys, const Observable& a,
                       const Observable& b) {
  require_observable_matches(sys, a);
  require_observable_matches(sys, b);
  if (const auto* fa = std::get_if<FiniteObservable>(&a)) {
    return *fa == std::get<FiniteObservable>(b);
  }
  // The difference is piecewise linear; vanishing at all of its breakpoints
  // decides equality everywhere.
  return compile_profile(std::get<PiecewiseLinearCircle>(sub(a, b))).is_zero();
}

WitnessReport witness_report(const SystemDescriptor& sys,
                             const WitnessParams& params) {
  const std::int64_t n = params.level;
  auto [x_n, horizon] = find_witness_point(sys, n, params.seed);
  const Rational r_n = witness_radius(sys, x_n, n);
  const std::int64_t two_n = pow2(n);

  const Observable u = build_witness_profile(sys, x_n, r_n, n);
  const Observable phi = witness_coboundary_direct(sys, u);
  const Observable phi_expanded = witness_coboundary_expanded(sys, x_n, r_n, n);

  WitnessReport report;
  report.n = n;
  report.x_n = x_n;
  report.r_n = r_n;
  report.horizon_used = horizon;
  report.sup_u = sup_norm(sys, u);
  report.u_at_far_point = evaluate(sys, u, apply(sys, x_n, two_n));
  report.sup_phi = sup_norm(sys, phi);
  report.quotient_lb = quotient_norm_lower_bound(sys, u, x_n, two_n);
  if (report.sup_phi == 0) {
    throw std::logic_error("witness coboundary is identically zero");
  }
  report.amplification = report.quotient_lb / report.sup_phi;

  report.support_disjoint = true;
  {
    Point y = x_n;
    const Rational needed = 2 * r_n;
    for (std::int64_t lag = 1; lag <= horizon; ++lag) {
      y = apply(sys, y, 1);
      if (metric(sys, y, x_n) < needed) {
        report.support_disjoint = false;
        break;
      }
    }
  }
  report.expanded_matches_direct = observables_equal(sys, phi, phi_expanded);
  return report;
}

std::vector<WitnessReport> instability_sweep(const SystemDescriptor& sys,
                                             std::int64_t n_max, bool parallel) {
  check_level(n_max);
  // Fail fast when the deepest level is out of reach.
  find_witness_point(sys, n_max);

  std::vector<WitnessReport> reports;
  reports.reserve(static_cast<std::size_t>(n_max));
  if (!parallel) {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      reports.push_back(witness_report(sys, WitnessParams{n, std::nullopt}));
    }
    return reports;
  }
  std::vector<std::future<WitnessReport>> futures;
  futures.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    futures.push_back(std::async(std::launch::async, [&sys, n] {
      return witness_report(sys, WitnessParams{n, std::nullopt});
    }));
  }
  for (auto& f : futures) reports.push_back(f.get());
  return reports;
}

}  // namespace cocyclelab
