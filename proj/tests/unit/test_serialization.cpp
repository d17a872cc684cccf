#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hypbarrier/error.hpp"
#include "hypbarrier/serialization.hpp"

using namespace hypbarrier;
using dom::DomainSpec;
using geo::Point;
using io::json;

namespace {

Point at(double angle, double r, const Point& from = Point()) { return geo::exp(geo::direction(from, angle) * r); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

// Membership agreement on a fixed probe set.
void expect_same_domain(const DomainSpec& a, const DomainSpec& b) {
  EXPECT_EQ(a.kind(), b.kind());
  for (int i = 0; i < 200; ++i) {
    const Point p = at(0.37 * i, 0.025 * i);
    EXPECT_NEAR(dom::margin(a, p), dom::margin(b, p), 1e-9 * (1.0 + std::fabs(dom::margin(a, p))));
  }
}

}  // namespace

TEST(Numbers, NonFiniteAsStrings) {
  EXPECT_EQ(io::number(std::numeric_limits<double>::infinity()), "Infinity");
  EXPECT_EQ(io::number(-std::numeric_limits<double>::infinity()), "-Infinity");
  EXPECT_EQ(io::number(std::nan("")), "NaN");
  EXPECT_EQ(io::number(1.5), 1.5);
  EXPECT_TRUE(std::isinf(io::to_double(json("Infinity"), "x")));
  EXPECT_TRUE(std::isnan(io::to_double(json("NaN"), "x")));
  EXPECT_EQ(io::to_double(json(2), "x"), 2.0);
  EXPECT_EQ(code_of([] { io::to_double(json("two"), "x"); }), ErrorCode::kParse);
}

TEST(Points, RoundTripAndValidation) {
  const Point p = at(1.2, 3.4);
  const Point q = io::point_from_json(io::to_json(p));
  EXPECT_EQ(q.coords().x1, p.coords().x1);
  EXPECT_EQ(q.coords().x2, p.coords().x2);
  EXPECT_EQ(code_of([] { io::point_from_json(json::array({2.0, 0.0, 0.0})); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { io::point_from_json(json::array({1.0, 0.0})); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { io::point_from_json(json("origin")); }), ErrorCode::kParse);
}

TEST(Tangents, RoundTrip) {
  const geo::Tangent v = geo::direction(at(0.5, 1.0), 2.0) * 0.7;
  const geo::Tangent w = io::tangent_from_json(io::to_json(v));
  EXPECT_NEAR(w.norm(), 0.7, 1e-12);
  EXPECT_NEAR(geo::inner(v, w), 0.49, 1e-12);
}

TEST(Domains, RoundTripEveryKind) {
  const Point c = at(0.4, 0.9);
  const std::vector<DomainSpec> ds = {
      DomainSpec::ball(c, 2.0),
      DomainSpec::half_space(c, geo::direction(c, 1.0)),
      DomainSpec::horoball(geo::GeodesicRay(geo::Geodesic(geo::direction(c, 2.0)))),
      DomainSpec::equilateral_triangle(c, 3.0, 0.2),
      DomainSpec::regular_polygon(c, 7, 2.0, 0.4),
      dom::horoball_pair(c, geo::direction(c, 0.0), 1.0).domain,
  };
  for (const auto& d : ds) {
    const json j = io::to_json(d);
    EXPECT_EQ(j["kind"], std::string(d.kind()));
    expect_same_domain(d, io::domain_from_json(j));
  }
}

TEST(Domains, BallCenterDefaultsToOrigin) {
  expect_same_domain(io::domain_from_json(json::parse(R"({"kind":"ball","radius":1.5})")),
                     DomainSpec::ball(Point(), 1.5));
}

TEST(Domains, TriangleFromCenterAndSide) {
  const json j = json::parse(R"({"kind":"triangle","center":[1,0,0],"side":4,"orientation":0.5})");
  expect_same_domain(io::domain_from_json(j), DomainSpec::equilateral_triangle(Point(), 4.0, 0.5));
}

TEST(Domains, MalformedInputIsAParseError) {
  for (const char* text : {R"({"kind":"ball","center":[1,0,0]})", R"({"kind":"ball","center":[1,0,0],"radius":-1})",
                           R"({"kind":"disk"})", R"({"kind":"polygon","center":[1,0,0],"n":2,"side":1})",
                           R"({"kind":"intersection","parts":[]})", R"([1,2,3])"}) {
    EXPECT_EQ(code_of([&] { io::domain_from_json(json::parse(text)); }), ErrorCode::kParse) << text;
  }
}

TEST(Recipes, RoundTripAndBuild) {
  const json j = json::parse(R"({
    "kind": "log",
    "domain": {"kind": "triangle", "center": [1, 0, 0], "side": 3},
    "weights": [1, 2, 3],
    "group": {"kind": "rotation", "center": [1, 0, 0], "order": 3},
    "scale": 4
  })");
  const io::BarrierRecipe r = io::recipe_from_json(j);
  EXPECT_EQ(r.kind, "log");
  EXPECT_EQ(r.weights.size(), 3u);
  EXPECT_EQ(r.scale, 4.0);
  ASSERT_TRUE(r.group.has_value());
  EXPECT_EQ(io::to_json(io::recipe_from_json(io::to_json(r))).dump(), io::to_json(r).dump());
  const auto built = r.build();
  ASSERT_TRUE(std::holds_alternative<bar::BarrierFn>(built));
  const auto& F = std::get<bar::BarrierFn>(built);
  bar::LogBarrierOptions opt;
  opt.weights = {1.0, 2.0, 3.0};
  const auto expected = bar::normalize(
      bar::symmetrize(bar::make_log_barrier(DomainSpec::equilateral_triangle(Point(), 3.0), opt),
                      bar::rotation_group(Point(), 3)),
      2.0);
  const Point p = at(0.3, 0.2);
  EXPECT_NEAR(F(p), expected(p), 1e-12 * std::fabs(expected(p)));
}

TEST(Recipes, IntervalAndCandidate) {
  const auto nl = io::recipe_from_json(json::parse(R"({"kind":"interval","name":"neg_log_interval","scale":0.5})"));
  const auto built = nl.build();
  ASSERT_TRUE(std::holds_alternative<bar::IntervalBarrier>(built));
  EXPECT_NEAR(std::get<bar::IntervalBarrier>(built)(0.5), -0.5 * std::log(0.75), 1e-15);
  const auto cand = io::recipe_from_json(json::parse(
      R"({"kind":"candidate","candidate":"log-square-gap","domain":{"kind":"ball","center":[1,0,0],"radius":2},"finite_differences":true})"));
  const auto F = std::get<bar::BarrierFn>(cand.build());
  EXPECT_FALSE(F.has_jet());
  EXPECT_NEAR(F(at(0.0, 1.0)), -std::log(3.0), 1e-12);
}

TEST(Recipes, Rejections) {
  for (const char* text : {R"({"kind":"interval","name":"cubic"})", R"({"kind":"magic"})",
                           R"({"kind":"candidate","candidate":"hnw","domain":{"kind":"ball","center":[1,0,0],"radius":2}})",
                           R"({"kind":"interval","name":"neg_log","scale":0})",
                           R"({"kind":"interval","name":"neg_log","group":{"kind":"rotation","center":[1,0,0],"order":2}})",
                           R"({"kind":"log"})"}) {
    EXPECT_EQ(code_of([&] { io::recipe_from_json(json::parse(text)); }), ErrorCode::kParse) << text;
  }
}

TEST(Groups, ReflectionGroupFromAxes) {
  const Point c = at(0.2, 0.6);
  io::GroupSpec g;
  g.kind = "reflection";
  g.axes = {geo::direction(c, 0.0), geo::direction(c, numeric::kPi / 2.0)};
  const io::GroupSpec back = io::group_from_json(io::to_json(g));
  const auto isos = back.build();
  ASSERT_EQ(isos.size(), 4u);
  for (const auto& iso : isos) EXPECT_LE(geo::dist(iso.apply(c), c), 1e-12);
}

TEST(Plans, DefaultsAndValidation) {
  const chk::SamplePlan p = io::plan_from_json(json::parse(R"({"point_count": 5, "seed": 9})"));
  EXPECT_EQ(p.point_count, 5u);
  EXPECT_EQ(p.seed, 9u);
  EXPECT_EQ(p.grid_per_geodesic, chk::SamplePlan{}.grid_per_geodesic);
  EXPECT_EQ(io::plan_from_json(io::to_json(p)).seed, 9u);
  EXPECT_EQ(code_of([] { io::plan_from_json(json::parse(R"({"standoff": 0.5})")); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { io::plan_from_json(json::parse(R"({"point_count": -1})")); }), ErrorCode::kParse);
}

TEST(Certificates, JsonShape) {
  const json t = io::to_json(cert::certify_triangle(24.0));
  EXPECT_EQ(t["schema_version"], io::kSchemaVersion);
  EXPECT_EQ(t["theorem"], "Triangle");
  EXPECT_EQ(t["inputs"]["L"], 24.0);
  EXPECT_NEAR(t["bound"].get<double>(), 11.0 / 6.0, 1e-15);
  EXPECT_TRUE(t["intermediates"].contains("dist_center_to_edge_foot"));
  EXPECT_EQ(t["applicable"].size(), 1u);
  const json h = io::to_json(cert::no_barrier(cert::Theorem::kHalfSpace));
  EXPECT_EQ(h["theorem"], "HalfSpace");
  EXPECT_EQ(h["bound"], "NO_BARRIER");
  EXPECT_EQ(h["raw_value"], "NO_BARRIER");
}

TEST(Reports, JsonShape) {
  const auto report = chk::check_P_properties(bar::neg_log_interval(), chk::SamplePlan{});
  const json j = io::to_json(report);
  EXPECT_EQ(j["schema_version"], io::kSchemaVersion);
  EXPECT_TRUE(j["theta_hat"]["lower_estimate"].get<bool>());
  EXPECT_NEAR(j["theta_hat"]["value"].get<double>(), 1.0, 1e-3);
  EXPECT_EQ(j["properties"]["P1"]["status"], "PASS");
  EXPECT_EQ(j["analytic_center"]["status"], "CONVERGED");
  EXPECT_FALSE(j["any_fail"].get<bool>());
  // Identical inputs give identical bytes.
  EXPECT_EQ(j.dump(), io::to_json(chk::check_P_properties(bar::neg_log_interval(), chk::SamplePlan{})).dump());
}
