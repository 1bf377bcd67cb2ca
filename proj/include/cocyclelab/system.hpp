#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cocyclelab/rational.hpp"

namespace cocyclelab {

// A state of a finite system: an index into {0, ..., size-1}.
struct FinitePoint {
  std::size_t index = 0;

  friend bool operator==(const FinitePoint& a, const FinitePoint& b) {
    return a.index == b.index;
  }
};

// A state of the circle R/Z, stored reduced to [0, 1).
struct CirclePoint {
  Rational coord;

  CirclePoint() : coord(0) {}
  explicit CirclePoint(const Rational& c) : coord(mod_one(c)) {}

  friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
    return a.coord == b.coord;
  }
};

using Point = std::variant<FinitePoint, CirclePoint>;

// A permutation of {0, ..., size-1}; map[i] is the image of i.
struct FinitePermutation {
  std::vector<std::size_t> map;

  explicit FinitePermutation(std::vector<std::size_t> images);

  std::size_t size() const { return map.size(); }

  friend bool operator==(const FinitePermutation& a, const FinitePermutation& b) {
    return a.map == b.map;
  }
};

// Rotation x -> x + alpha on R/Z; alpha reduced to [0, 1), lowest terms.
struct CircleRotation {
  Rational alpha;

  CircleRotation() : alpha(0) {}
  explicit CircleRotation(const Rational& a) : alpha(mod_one(a)) {}

  friend bool operator==(const CircleRotation& a, const CircleRotation& b) {
    return a.alpha == b.alpha;
  }
};

using SystemDescriptor = std::variant<FinitePermutation, CircleRotation>;

// A stretch of an orbit: points[k] = f^(first_offset + k)(base).
struct OrbitSegment {
  Point base;
  std::int64_t first_offset = 0;
  std::vector<Point> points;
};

// f^k(x); k may be negative (the systems are invertible). Exact.
Point apply(const SystemDescriptor& sys, const Point& x, std::int64_t k = 1);

// Discrete metric on finite systems, shortest-arc distance on the circle.
Rational metric(const SystemDescriptor& sys, const Point& x, const Point& y);

// Minimal q >= 1 with f^q = identity.
Integer period(const SystemDescriptor& sys);

// True iff f^j(x) != x for every j in {1, ..., horizon}.
bool injective_horizon(const SystemDescriptor& sys, const Point& x,
                       std::int64_t horizon);

// (1/2) * min_{1<=j<=horizon} d(f^j(x), x). With isometric dynamics this makes
// the iterates of the open ball B(x, r) pairwise disjoint up to the horizon.
// Throws PeriodicAtHorizon when some iterate returns to x.
Rational separation_radius(const SystemDescriptor& sys, const Point& x,
                           std::int64_t horizon);

// Orbit segment f^a(x), ..., f^b(x) inclusive.
OrbitSegment orbit_segment(const SystemDescriptor& sys, const Point& x,
                           std::int64_t a, std::int64_t b);

// Cycles of a permutation, each led by its smallest element, ordered by leader.
std::vector<std::vector<std::size_t>> cycles(const FinitePermutation& perm);

// Verifies the point lives in the system's space (variant and index range).
void require_point_in_system(const SystemDescriptor& sys, const Point& x);

}  // namespace cocyclelab
