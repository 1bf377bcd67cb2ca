#include "cocyclelab/serialization.hpp"

#include <sstream>
#include <stdexcept>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

std::string rational_field(const Json& j, const char* what) {
  if (!j.is_string()) {
    throw ParseError(std::string(what) + " must be a rational string");
  }
  return j.get<std::string>();
}

std::int64_t integer_to_int64(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) {
    throw ParseError(std::string(what) + " does not fit a machine integer");
  }
  return z.get_si();
}

}  // namespace

Json system_to_json(const SystemDescriptor& sys) {
  Json j;
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    j["type"] = "perm";
    j["map"] = perm->map;
    return j;
  }
  const auto& rot = std::get<CircleRotation>(sys);
  j["type"] = "rotation";
  j["alpha"] = format_rational(rot.alpha);
  return j;
}

SystemDescriptor system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("system record needs a string field 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "perm") {
    if (!j.contains("map") || !j["map"].is_array()) {
      throw ParseError("permutation record needs an array field 'map'");
    }
    std::vector<std::size_t> images;
    images.reserve(j["map"].size());
    for (const auto& entry : j["map"]) {
      if (!entry.is_number_unsigned()) {
        throw ParseError("permutation images must be non-negative integers");
      }
      images.push_back(entry.get<std::size_t>());
    }
    try {
      return FinitePermutation(std::move(images));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (type == "rotation") {
    if (!j.contains("alpha")) throw ParseError("rotation record needs 'alpha'");
    return CircleRotation(parse_rational(rational_field(j["alpha"], "alpha")));
  }
  throw ParseError("unknown system type '" + type + "'");
}

Json observable_to_json(const Observable& obs) {
  Json j;
  if (const auto* fin = std::get_if<FiniteObservable>(&obs)) {
    j["type"] = "finite";
    Json values = Json::array();
    for (const auto& v : fin->values) values.push_back(format_rational(v));
    j["values"] = std::move(values);
    return j;
  }
  const auto& pwl = std::get<PiecewiseLinearCircle>(obs);
  j["type"] = "pwl";
  j["offset"] = format_rational(pwl.offset);
  Json bumps = Json::array();
  for (const auto& bump : pwl.bumps) {
    Json b;
    b["center"] = format_rational(bump.center);
    b["radius"] = format_rational(bump.radius);
    b["weight"] = format_rational(bump.weight);
    bumps.push_back(std::move(b));
  }
  j["bumps"] = std::move(bumps);
  return j;
}

Observable observable_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("observable record needs a string field 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "finite") {
    if (!j.contains("values") || !j["values"].is_array()) {
      throw ParseError("finite observable needs an array field 'values'");
    }
    FiniteObservable out;
    out.values.reserve(j["values"].size());
    for (const auto& v : j["values"]) {
      out.values.push_back(parse_rational(rational_field(v, "value")));
    }
    return out;
  }
  if (type == "pwl") {
    PiecewiseLinearCircle out;
    if (j.contains("offset")) {
      out.offset = parse_rational(rational_field(j["offset"], "offset"));
    }
    if (j.contains("bumps")) {
      if (!j["bumps"].is_array()) throw ParseError("'bumps' must be an array");
      for (const auto& b : j["bumps"]) {
        if (!b.is_object() || !b.contains("center") || !b.contains("radius") ||
            !b.contains("weight")) {
          throw ParseError("bump records need 'center', 'radius' and 'weight'");
        }
        try {
          out.bumps.emplace_back(
              parse_rational(rational_field(b["center"], "center")),
              parse_rational(rational_field(b["radius"], "radius")),
              parse_rational(rational_field(b["weight"], "weight")));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what());
        }
      }
    }
    return out;
  }
  throw ParseError("unknown observable type '" + type + "'");
}

Json point_to_json(const Point& x) {
  if (const auto* fp = std::get_if<FinitePoint>(&x)) return Json(fp->index);
  return Json(format_rational(std::get<CirclePoint>(x).coord));
}

Point point_from_json(const Json& j) {
  if (j.is_number_unsigned()) return FinitePoint{j.get<std::size_t>()};
  if (j.is_string()) return CirclePoint(parse_rational(j.get<std::string>()));
  throw ParseError("point must be an index or a rational string");
}

Json certificate_to_json(const ObstructionCertificate& cert) {
  Json j;
  j["status"] = "obstructed";
  j["witness_point"] = point_to_json(cert.witness_point);
  j["orbit_length"] = integer_to_int64(cert.orbit_length, "orbit length");
  j["birkhoff_value"] = format_rational(cert.birkhoff_value);
  j["measure_integral"] = format_rational(cert.measure_integral);
  return j;
}

Json solve_outcome_to_json(const SolveOutcome& outcome) {
  if (const auto* cert = std::get_if<ObstructionCertificate>(&outcome)) {
    return certificate_to_json(*cert);
  }
  const auto& sol = std::get<Solution>(outcome);
  Json j;
  j["status"] = "solved";
  j["u"] = observable_to_json(sol.u);
  j["residual"] = format_rational(sol.residual);
  return j;
}

Json orbit_integrals_to_json(const std::vector<OrbitIntegral>& integrals) {
  Json arr = Json::array();
  for (const auto& entry : integrals) {
    Json j;
    j["representative"] = point_to_json(entry.representative);
    j["integral"] = format_rational(entry.integral);
    arr.push_back(std::move(j));
  }
  return arr;
}

Json witness_report_to_json(const WitnessReport& report) {
  Json j;
  j["n"] = report.n;
  j["x_n"] = point_to_json(report.x_n);
  j["r_n"] = format_rational(report.r_n);
  j["r_n_decimal"] = to_decimal_string(report.r_n);
  j["horizon_used"] = report.horizon_used;
  j["sup_u"] = format_rational(report.sup_u);
  j["sup_u_decimal"] = to_decimal_string(report.sup_u);
  j["u_at_far_point"] = format_rational(report.u_at_far_point);
  j["u_at_far_point_decimal"] = to_decimal_string(report.u_at_far_point);
  j["sup_phi"] = format_rational(report.sup_phi);
  j["sup_phi_decimal"] = to_decimal_string(report.sup_phi);
  j["quotient_lb"] = format_rational(report.quotient_lb);
  j["quotient_lb_decimal"] = to_decimal_string(report.quotient_lb);
  j["amplification"] = format_rational(report.amplification);
  j["amplification_decimal"] = to_decimal_string(report.amplification);
  j["support_disjoint"] = report.support_disjoint;
  j["expanded_matches_direct"] = report.expanded_matches_direct;
  return j;
}

namespace {

void append_sweep_row(std::ostringstream& out, const WitnessReport& r) {
  out << r.n << ',' << format_rational(r.r_n) << ','
      << format_rational(r.sup_phi) << ',' << to_decimal_string(r.sup_phi) << ','
      << format_rational(r.quotient_lb) << ','
      << format_rational(r.amplification) << ','
      << (r.support_disjoint ? "true" : "false") << ','
      << (r.expanded_matches_direct ? "true" : "false") << '\n';
}

constexpr const char* kSweepHeader =
    "n,r_n,sup_phi,sup_phi_decimal,quotient_lb,amplification,"
    "support_disjoint,expanded_matches_direct\n";

}  // namespace

std::string emit_sweep_csv(const std::vector<WitnessReport>& reports) {
  if (reports.empty()) {
    throw std::invalid_argument("no witness reports to render");
  }
  std::ostringstream out;
  out << kSweepHeader;
  for (const auto& report : reports) append_sweep_row(out, report);
  return out.str();
}

std::string emit_witness_csv(const WitnessReport& report) {
  std::ostringstream out;
  out << kSweepHeader;
  append_sweep_row(out, report);
  return out.str();
}

SystemDescriptor parse_system_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("system record is not valid JSON");
  return system_from_json(j);
}

Observable parse_observable_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("observable record is not valid JSON");
  return observable_from_json(j);
}

}  // namespace cocyclelab
