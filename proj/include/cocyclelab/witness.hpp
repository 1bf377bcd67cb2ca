#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/observable.hpp"
#include "cocyclelab/system.hpp"

namespace cocyclelab {

struct WitnessParams {
  std::int64_t level = 1;      // n >= 1
  std::optional<Point> seed;   // base point; defaults to the canonical one
};

// One level of the instability construction: the tent-sum u with 2^(n+1)-1
// disjointly supported blocks, its coboundary phi = u o f - u, and the norm
// data that certifies the amplification quotient_lb / sup_phi >= 2^(n-1).
struct WitnessReport {
  std::int64_t n = 0;
  Point x_n;
  Rational r_n;
  std::int64_t horizon_used = 0;
  Rational sup_u;
  Rational u_at_far_point;   // u at f^(2^n)(x_n)
  Rational sup_phi;
  Rational quotient_lb;
  Rational amplification;
  bool support_disjoint = false;
  bool expanded_matches_direct = false;
};

// Separation horizon for level n: pairwise disjointness of the iterated
// supports f^j(B), |j| <= 2^n - 1, needs lags up to 2^(n+1) - 2.
std::int64_t witness_horizon(std::int64_t n);

// A base point whose orbit stays away from itself for all lags up to
// 2^(n+1) - 1 (one lag past the separation horizon, so the far point
// f^(2^n)(x) clears every block). Returns the point and the separation
// horizon 2^(n+1) - 2. Throws PeriodicAtHorizon when no such point exists
// (in particular whenever the period is <= 2^(n+1) - 1).
std::pair<Point, std::int64_t> find_witness_point(
    const SystemDescriptor& sys, std::int64_t n,
    const std::optional<Point>& seed = std::nullopt);

// Block radius: the separation radius over lags 1..2^(n+1)-2, additionally
// capped by d(f^(2^(n+1)-1)(x), x) so the far point stays outside every
// open support.
Rational witness_radius(const SystemDescriptor& sys, const Point& x,
                        std::int64_t n);

// The tent sum u with blocks at f^j(x_n), |j| <= 2^n - 1, weight 1 - |j|/2^n,
// all of radius r_n. Throws InvalidRadius when the supports would overlap.
Observable build_witness_profile(const SystemDescriptor& sys, const Point& x_n,
                                 const Rational& r_n, std::int64_t n);

// phi = L_f(u), symbolically.
Observable witness_coboundary_direct(const SystemDescriptor& sys,
                                     const Observable& u);

// phi built block-by-block from the telescoped expansion: one boundary block
// of weight +1/2^n on f^(-2^n)(B), interior blocks of weight
// (|j| - |j+1|)/2^n for j in [-2^n+1, 2^n-2], and a boundary block of weight
// -1/2^n on f^(2^n-1)(B). Must agree with witness_coboundary_direct.
Observable witness_coboundary_expanded(const SystemDescriptor& sys,
                                       const Point& x_n, const Rational& r_n,
                                       std::int64_t n);

// Exact equality of two observables as functions.
bool observables_equal(const SystemDescriptor& sys, const Observable& a,
                       const Observable& b);

// Runs the full pipeline for one level and returns the report.
WitnessReport witness_report(const SystemDescriptor& sys,
                             const WitnessParams& params);

// Reports for n = 1..n_max. Levels are independent; `parallel` fans them out
// to async workers, merged back in level order.
std::vector<WitnessReport> instability_sweep(const SystemDescriptor& sys,
                                             std::int64_t n_max,
                                             bool parallel = false);

}  // namespace cocyclelab
