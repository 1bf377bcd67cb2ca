#include "cocyclelab/system.hpp"

#include <numeric>
#include <stdexcept>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

FinitePermutation::FinitePermutation(std::vector<std::size_t> images)
    : map(std::move(images)) {
  if (map.empty()) throw std::invalid_argument("permutation must be nonempty");
  std::vector<bool> seen(map.size(), false);
  for (std::size_t image : map) {
    if (image >= map.size() || seen[image]) {
      throw std::invalid_argument("permutation map is not a bijection");
    }
    seen[image] = true;
  }
}

void require_point_in_system(const SystemDescriptor& sys, const Point& x) {
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    const auto* fp = std::get_if<FinitePoint>(&x);
    if (!fp) throw VariantMismatch("circle point used with a finite system");
    if (fp->index >= perm->size()) {
      throw VariantMismatch("point index outside the finite system");
    }
    return;
  }
  if (!std::holds_alternative<CirclePoint>(x)) {
    throw VariantMismatch("finite point used with a circle system");
  }
}

namespace {

std::size_t cycle_length(const FinitePermutation& perm, std::size_t start) {
  std::size_t len = 1;
  for (std::size_t i = perm.map[start]; i != start; i = perm.map[i]) ++len;
  return len;
}

}  // namespace

Point apply(const SystemDescriptor& sys, const Point& x, std::int64_t k) {
  require_point_in_system(sys, x);
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    std::size_t i = std::get<FinitePoint>(x).index;
    const std::int64_t len = static_cast<std::int64_t>(cycle_length(*perm, i));
    std::int64_t steps = ((k % len) + len) % len;
    while (steps-- > 0) i = perm->map[i];
    return FinitePoint{i};
  }
  const auto& rot = std::get<CircleRotation>(sys);
  const auto& c = std::get<CirclePoint>(x).coord;
  return CirclePoint(c + Rational(Integer(static_cast<long>(k))) * rot.alpha);
}

Rational metric(const SystemDescriptor& sys, const Point& x, const Point& y) {
  require_point_in_system(sys, x);
  require_point_in_system(sys, y);
  if (std::holds_alternative<FinitePermutation>(sys)) {
    return std::get<FinitePoint>(x) == std::get<FinitePoint>(y) ? Rational(0)
                                                                : Rational(1);
  }
  return circle_distance(std::get<CirclePoint>(x).coord,
                         std::get<CirclePoint>(y).coord);
}

Integer period(const SystemDescriptor& sys) {
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    Integer q(1);
    for (const auto& cycle : cycles(*perm)) {
      Integer len(static_cast<unsigned long>(cycle.size()));
      mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), len.get_mpz_t());
    }
    return q;
  }
  return std::get<CircleRotation>(sys).alpha.get_den();
}

bool injective_horizon(const SystemDescriptor& sys, const Point& x,
                       std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  Point y = x;
  for (std::int64_t j = 1; j <= horizon; ++j) {
    y = apply(sys, y, 1);
    if (y == x) return false;
  }
  return true;
}

Rational separation_radius(const SystemDescriptor& sys, const Point& x,
                           std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  Rational min_distance;
  bool first = true;
  Point y = x;
  for (std::int64_t j = 1; j <= horizon; ++j) {
    y = apply(sys, y, 1);
    Rational d = metric(sys, y, x);
    if (d == 0) {
      throw PeriodicAtHorizon("orbit returns to the base point at iterate " +
                              std::to_string(j));
    }
    if (first || d < min_distance) {
      min_distance = d;
      first = false;
    }
  }
  return min_distance / 2;
}

OrbitSegment orbit_segment(const SystemDescriptor& sys, const Point& x,
                           std::int64_t a, std::int64_t b) {
  if (a > b) throw std::invalid_argument("orbit segment range is empty");
  OrbitSegment seg;
  seg.base = x;
  seg.first_offset = a;
  seg.points.reserve(static_cast<std::size_t>(b - a + 1));
  Point y = apply(sys, x, a);
  seg.points.push_back(y);
  for (std::int64_t j = a + 1; j <= b; ++j) {
    y = apply(sys, y, 1);
    seg.points.push_back(y);
  }
  return seg;
}

std::vector<std::vector<std::size_t>> cycles(const FinitePermutation& perm) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> visited(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t i = start; !visited[i]; i = perm.map[i]) {
      visited[i] = true;
      cycle.push_back(i);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

}  // namespace cocyclelab
