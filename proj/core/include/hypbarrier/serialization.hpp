#pragma once

// Canonical JSON encodings. Points are hyperboloid triples [x0, x1, x2];
// non-finite numbers are written as the strings "Infinity", "-Infinity",
// "NaN". Parse failures throw Error(kParse).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypbarrier/barriers.hpp"
#include "hypbarrier/certificates.hpp"
#include "hypbarrier/checker.hpp"
#include "hypbarrier/domains.hpp"

namespace hypbarrier::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kNoBarrier = "NO_BARRIER";

json number(double x);
double to_double(const json& j, const std::string& what);

json to_json(const geo::Point& p);
geo::Point point_from_json(const json& j);
json to_json(const geo::Tangent& v);
geo::Tangent tangent_from_json(const json& j);

/// {"kind": ball|half_space|horoball|triangle|polygon|intersection, ...}.
///   ball          center, radius
///   half_space    q, normal (outward, tangent at q)
///   horoball      base, direction (ray into the interior)
///   triangle      vertices, or center + side [+ orientation]
///   polygon       center, n, side [+ orientation]
///   intersection  parts
json to_json(const dom::DomainSpec& d);
dom::DomainSpec domain_from_json(const json& j);

/// Group of isometries: {"kind": "rotation", "center", "order"} or
/// {"kind": "reflection", "axes": [tangent, tangent]}.
struct GroupSpec {
  std::string kind;
  geo::Point center;
  int order = 1;
  std::vector<geo::Tangent> axes;

  std::vector<geo::Isometry> build() const;
};
json to_json(const GroupSpec& g);
GroupSpec group_from_json(const json& j);

/// How to build a barrier.
///   {"kind": "interval", "name": "neg_log" | "neg_log_interval" | "quadratic"}
///   {"kind": "log", "domain", "weights"?, "anchor"?, "anchor_weight"?}
///   {"kind": "candidate", "candidate": "log-cosh-gap" | "log-square-gap", "domain"}
/// Optional for every kind: "scale" (multiplies F), "group" (planar only),
/// "finite_differences" (drops the analytic jet).
struct BarrierRecipe {
  std::string kind;
  std::string name;  // interval name or candidate kind
  std::optional<dom::DomainSpec> domain;
  std::vector<double> weights;
  std::optional<geo::Point> anchor;
  std::optional<double> anchor_weight;
  std::optional<GroupSpec> group;
  double scale = 1.0;
  bool finite_differences = false;

  bool interval() const { return kind == "interval"; }
  std::variant<bar::BarrierFn, bar::IntervalBarrier> build() const;
};
json to_json(const BarrierRecipe& r);
BarrierRecipe recipe_from_json(const json& j);

json to_json(const chk::SamplePlan& plan);
/// Missing fields keep their defaults; the result is validated.
chk::SamplePlan plan_from_json(const json& j);

json to_json(const chk::CheckReport& report);
json to_json(const cert::Certificate& c);

}  // namespace hypbarrier::io
