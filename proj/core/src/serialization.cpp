#include "hypbarrier/serialization.hpp"

#include <cmath>

#include "hypbarrier/error.hpp"

namespace hypbarrier::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double optional_double(const json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : to_double(*it, key);
}

geo::Vec3 vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) fail(what + " must be an array of three numbers");
  return {to_double(j[0], what), to_double(j[1], what), to_double(j[2], what)};
}

json vec_to_json(const geo::Vec3& v) { return json::array({number(v.x0), number(v.x1), number(v.x2)}); }

// Library errors raised while building from parsed input are parse errors
// from the caller's point of view.
template <class F>
auto rethrow_as_parse(F&& f, const std::string& what) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    fail(what + ": " + e.what());
  }
}

json witness_json(const chk::Witness& w) {
  json j;
  json loc = json::array();
  for (double x : w.location) loc.push_back(number(x));
  j["location"] = std::move(loc);
  j["direction"] = number(w.direction);
  j["t"] = number(w.t);
  j["measured"] = number(w.measured);
  j["slack"] = number(w.slack);
  j["sample_index"] = w.sample_index;
  j["detail"] = w.detail;
  return j;
}

json estimate_json(const chk::Estimate& e) {
  json j;
  j["value"] = number(e.value);
  j["error_bar"] = number(e.error_bar);
  j["lower_estimate"] = true;
  j["samples"] = e.samples;
  j["degenerate"] = e.degenerate;
  j["argmax"] = e.argmax ? witness_json(*e.argmax) : json(nullptr);
  return j;
}

json property_json(const chk::PropertyResult& p) {
  json j;
  j["status"] = chk::to_string(p.status);
  j["checked"] = p.checked;
  j["violations"] = p.violations;
  j["worst"] = p.worst ? witness_json(*p.worst) : json(nullptr);
  j["note"] = p.note;
  return j;
}

json quantities_json(const std::vector<cert::Quantity>& qs) {
  json j = json::object();
  for (const auto& q : qs) j[q.name] = number(q.value);
  return j;
}

}  // namespace

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "NaN";
  return x > 0 ? "Infinity" : "-Infinity";
}

double to_double(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Infinity") return INFINITY;
    if (s == "-Infinity") return -INFINITY;
    if (s == "NaN") return NAN;
  }
  fail(what + " must be a number");
}

json to_json(const geo::Point& p) { return vec_to_json(p.coords()); }

geo::Point point_from_json(const json& j) {
  const geo::Vec3 x = vec_from_json(j, "point");
  return rethrow_as_parse([&] { return geo::Point::from_coords(x); }, "point");
}

json to_json(const geo::Tangent& v) {
  json j;
  j["base"] = to_json(v.base());
  j["vec"] = vec_to_json(v.vec());
  return j;
}

geo::Tangent tangent_from_json(const json& j) {
  return geo::Tangent(point_from_json(field(j, "base")), vec_from_json(field(j, "vec"), "tangent vector"));
}

json to_json(const dom::DomainSpec& d) {
  json j;
  j["kind"] = std::string(d.kind());
  if (const auto* b = d.get_if<dom::Ball>()) {
    j["center"] = to_json(b->center);
    j["radius"] = number(b->radius);
  } else if (const auto* h = d.get_if<dom::HalfSpace>()) {
    j["q"] = to_json(h->q);
    j["normal"] = vec_to_json(h->v.vec());
  } else if (const auto* h = d.get_if<dom::Horoball>()) {
    const auto& dir = h->ray.geodesic().dir();
    j["base"] = to_json(dir.base());
    j["direction"] = vec_to_json(dir.vec());
  } else if (const auto* t = d.get_if<dom::EquilateralTriangle>()) {
    json vs = json::array();
    for (const auto& v : t->vertices) vs.push_back(to_json(v));
    j["vertices"] = std::move(vs);
    j["side"] = number(t->side);
  } else if (const auto* p = d.get_if<dom::RegularPolygon>()) {
    j["center"] = to_json(p->center);
    j["n"] = p->n;
    j["side"] = number(p->side);
    j["orientation"] = number(p->orientation);
  } else {
    json parts = json::array();
    for (const auto& part : d.get_if<dom::Intersection>()->parts) parts.push_back(to_json(part));
    j["parts"] = std::move(parts);
  }
  return j;
}

dom::DomainSpec domain_from_json(const json& j) {
  const std::string kind = string_field(j, "kind");
  return rethrow_as_parse(
      [&]() -> dom::DomainSpec {
        if (kind == "ball") {
          const auto it = j.find("center");
          const geo::Point c = it == j.end() ? geo::Point() : point_from_json(*it);
          return dom::DomainSpec::ball(c, to_double(field(j, "radius"), "radius"));
        }
        if (kind == "half_space") {
          const geo::Point q = point_from_json(field(j, "q"));
          return dom::DomainSpec::half_space(q, geo::Tangent(q, vec_from_json(field(j, "normal"), "normal")));
        }
        if (kind == "horoball") {
          const geo::Point base = point_from_json(field(j, "base"));
          const geo::Tangent dir(base, vec_from_json(field(j, "direction"), "direction"));
          return dom::DomainSpec::horoball(geo::GeodesicRay(geo::Geodesic(dir)));
        }
        if (kind == "triangle") {
          if (j.contains("vertices")) {
            const json& vs = j["vertices"];
            if (!vs.is_array() || vs.size() != 3) fail("triangle vertices must be three points");
            return dom::DomainSpec::triangle({point_from_json(vs[0]), point_from_json(vs[1]), point_from_json(vs[2])});
          }
          const auto it = j.find("center");
          const geo::Point c = it == j.end() ? geo::Point() : point_from_json(*it);
          return dom::DomainSpec::equilateral_triangle(c, to_double(field(j, "side"), "side"),
                                                       optional_double(j, "orientation", 0.0));
        }
        if (kind == "polygon") {
          const auto it = j.find("center");
          const geo::Point c = it == j.end() ? geo::Point() : point_from_json(*it);
          return dom::DomainSpec::regular_polygon(c, int_field(j, "n"), to_double(field(j, "side"), "side"),
                                                  optional_double(j, "orientation", 0.0));
        }
        if (kind == "intersection") {
          const json& parts = field(j, "parts");
          if (!parts.is_array() || parts.empty()) fail("intersection parts must be a non-empty array");
          std::vector<dom::DomainSpec> ds;
          for (const auto& p : parts) ds.push_back(domain_from_json(p));
          return dom::DomainSpec::intersection(std::move(ds));
        }
        fail("unknown domain kind '" + kind + "'");
      },
      "domain");
}

std::vector<geo::Isometry> GroupSpec::build() const {
  if (kind == "rotation") return bar::rotation_group(center, order);
  if (kind == "reflection") {
    if (axes.size() != 2) throw Error(ErrorCode::kInvalidArgument, "reflection group needs two axes");
    return bar::reflection_group(geo::Geodesic(axes[0]), geo::Geodesic(axes[1]));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown group kind '" + kind + "'");
}

json to_json(const GroupSpec& g) {
  json j;
  j["kind"] = g.kind;
  if (g.kind == "rotation") {
    j["center"] = to_json(g.center);
    j["order"] = g.order;
  } else {
    json axes = json::array();
    for (const auto& a : g.axes) axes.push_back(to_json(a));
    j["axes"] = std::move(axes);
  }
  return j;
}

GroupSpec group_from_json(const json& j) {
  GroupSpec g;
  g.kind = string_field(j, "kind");
  if (g.kind == "rotation") {
    const auto it = j.find("center");
    if (it != j.end()) g.center = point_from_json(*it);
    g.order = int_field(j, "order");
    if (g.order < 1) fail("rotation order must be positive");
  } else if (g.kind == "reflection") {
    const json& axes = field(j, "axes");
    if (!axes.is_array() || axes.size() != 2) fail("reflection group needs two axes");
    for (const auto& a : axes) g.axes.push_back(tangent_from_json(a));
  } else {
    fail("unknown group kind '" + g.kind + "'");
  }
  return g;
}

std::variant<bar::BarrierFn, bar::IntervalBarrier> BarrierRecipe::build() const {
  if (!(scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "scale must be positive");
  if (interval()) {
    bar::IntervalBarrier F;
    if (name == "neg_log") {
      F = bar::neg_log(scale);
    } else if (name == "neg_log_interval") {
      F = bar::neg_log_interval(scale);
    } else if (name == "quadratic") {
      F = bar::normalize(bar::quadratic_interval(), std::sqrt(scale));
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown interval barrier '" + name + "'");
    }
    return finite_differences ? F.without_jet() : F;
  }
  if (!domain) throw Error(ErrorCode::kInvalidArgument, "planar recipe needs a domain");
  std::optional<bar::BarrierFn> F;
  if (kind == "log") {
    bar::LogBarrierOptions opt;
    opt.weights = weights;
    opt.anchor = anchor;
    opt.anchor_weight = anchor_weight;
    F = bar::make_log_barrier(*domain, opt);
  } else if (kind == "candidate") {
    const auto ck = bar::parse_candidate_kind(name);
    if (!ck) throw Error(ErrorCode::kInvalidArgument, "unknown candidate '" + name + "'");
    F = bar::make_candidate(*domain, *ck);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown recipe kind '" + kind + "'");
  }
  if (finite_differences) F = F->without_jet();
  if (group) F = bar::symmetrize(*F, group->build());
  if (scale != 1.0) F = bar::normalize(*F, std::sqrt(scale));
  return *F;
}

json to_json(const BarrierRecipe& r) {
  json j;
  j["kind"] = r.kind;
  if (r.kind == "interval") j["name"] = r.name;
  if (r.kind == "candidate") j["candidate"] = r.name;
  if (r.domain) j["domain"] = to_json(*r.domain);
  if (!r.weights.empty()) {
    json w = json::array();
    for (double x : r.weights) w.push_back(number(x));
    j["weights"] = std::move(w);
  }
  if (r.anchor) j["anchor"] = to_json(*r.anchor);
  if (r.anchor_weight) j["anchor_weight"] = number(*r.anchor_weight);
  if (r.group) j["group"] = to_json(*r.group);
  j["scale"] = number(r.scale);
  j["finite_differences"] = r.finite_differences;
  return j;
}

BarrierRecipe recipe_from_json(const json& j) {
  BarrierRecipe r;
  r.kind = string_field(j, "kind");
  if (r.kind == "interval") {
    r.name = string_field(j, "name");
    if (r.name != "neg_log" && r.name != "neg_log_interval" && r.name != "quadratic") {
      fail("unknown interval barrier '" + r.name + "'");
    }
  } else if (r.kind == "log" || r.kind == "candidate") {
    r.domain = domain_from_json(field(j, "domain"));
    if (r.kind == "candidate") {
      r.name = string_field(j, "candidate");
      if (!bar::parse_candidate_kind(r.name)) fail("unknown candidate '" + r.name + "'");
    }
  } else {
    fail("unknown recipe kind '" + r.kind + "'");
  }
  if (const auto it = j.find("weights"); it != j.end()) {
    if (!it->is_array()) fail("weights must be an array");
    for (const auto& w : *it) r.weights.push_back(to_double(w, "weight"));
  }
  if (const auto it = j.find("anchor"); it != j.end()) r.anchor = point_from_json(*it);
  if (const auto it = j.find("anchor_weight"); it != j.end()) r.anchor_weight = to_double(*it, "anchor_weight");
  if (const auto it = j.find("group"); it != j.end()) {
    if (r.interval()) fail("groups apply to planar barriers only");
    r.group = group_from_json(*it);
  }
  r.scale = optional_double(j, "scale", 1.0);
  if (!(r.scale > 0.0)) fail("scale must be positive");
  if (const auto it = j.find("finite_differences"); it != j.end()) {
    if (!it->is_boolean()) fail("finite_differences must be a boolean");
    r.finite_differences = it->get<bool>();
  }
  return r;
}

json to_json(const chk::SamplePlan& plan) {
  json j;
  j["point_count"] = plan.point_count;
  j["geodesics_per_point"] = plan.geodesics_per_point;
  j["grid_per_geodesic"] = plan.grid_per_geodesic;
  j["standoff"] = number(plan.standoff);
  j["seed"] = plan.seed;
  j["unbounded_radius"] = number(plan.unbounded_radius);
  return j;
}

chk::SamplePlan plan_from_json(const json& j) {
  if (!j.is_object()) fail("sample plan must be an object");
  chk::SamplePlan plan;
  auto count = [&](const char* key, std::size_t& out) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number_unsigned()) fail(std::string(key) + " must be a non-negative integer");
    out = it->get<std::size_t>();
  };
  count("point_count", plan.point_count);
  count("geodesics_per_point", plan.geodesics_per_point);
  count("grid_per_geodesic", plan.grid_per_geodesic);
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) fail("seed must be a non-negative integer");
    plan.seed = it->get<std::uint64_t>();
  }
  plan.standoff = optional_double(j, "standoff", plan.standoff);
  plan.unbounded_radius = optional_double(j, "unbounded_radius", plan.unbounded_radius);
  rethrow_as_parse([&] { plan.validate(); return 0; }, "sample plan");
  return plan;
}

json to_json(const chk::CheckReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["barrier"] = r.barrier;
  j["plan"] = to_json(r.plan);
  j["sigma_hat"] = estimate_json(r.sigma);
  j["theta_hat"] = estimate_json(r.theta);
  j["min_second_derivative"] = number(r.min_second_derivative);
  if (r.center) {
    const auto& c = *r.center;
    json cj;
    cj["status"] = chk::to_string(c.status);
    json loc = json::array();
    for (double x : c.location) loc.push_back(number(x));
    cj["location"] = std::move(loc);
    cj["decrement"] = number(c.decrement);
    cj["iterations"] = c.iterations;
    cj["hessian"] = json::array({number(c.hessian[0]), number(c.hessian[1]), number(c.hessian[2])});
    j["analytic_center"] = std::move(cj);
  } else {
    j["analytic_center"] = nullptr;
  }
  j["theta_for_p3"] = number(r.theta_for_p3);
  json props;
  props["P1"] = property_json(r.p1);
  props["P2"] = property_json(r.p2);
  props["P3"] = property_json(r.p3);
  j["properties"] = std::move(props);
  j["any_fail"] = r.any_fail();
  return j;
}

json to_json(const cert::Certificate& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["theorem"] = cert::to_string(c.theorem);
  j["inputs"] = quantities_json(c.inputs);
  j["intermediates"] = quantities_json(c.intermediates);
  if (c.no_barrier) {
    j["bound"] = kNoBarrier;
    j["raw_value"] = kNoBarrier;
  } else {
    j["bound"] = number(c.bound);
    j["raw_value"] = number(c.raw_value);
  }
  json applicable = json::array();
  for (const auto& b : c.applicable) {
    json bj;
    bj["theorem"] = cert::to_string(b.theorem);
    if (c.no_barrier) {
      bj["bound"] = kNoBarrier;
      bj["raw_value"] = kNoBarrier;
    } else {
      bj["bound"] = number(b.bound);
      bj["raw_value"] = number(b.raw_value);
    }
    applicable.push_back(std::move(bj));
  }
  j["applicable"] = std::move(applicable);
  return j;
}

}  // namespace hypbarrier::io
