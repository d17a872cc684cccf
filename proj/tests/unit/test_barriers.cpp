#include <gtest/gtest.h>

#include <cmath>

#include "hypbarrier/barriers.hpp"
#include "hypbarrier/error.hpp"

using namespace hypbarrier;
using dom::DomainSpec;
using geo::Point;
using numeric::kPi;

namespace {

Point at(double angle, double r, const Point& from = Point()) { return geo::exp(geo::direction(from, angle) * r); }

bar::Restriction1D synthetic(std::function<double(double)> f, double lo, double hi) {
  return bar::Restriction1D(std::move(f), [lo, hi](double t) { return lo < t && t < hi; }, lo, hi);
}

// Point at signed margin m inside the ball along direction angle.
Point at_margin(const dom::Ball& b, double angle, double m) { return at(angle, b.radius - m, b.center); }

}  // namespace

TEST(Restrict, FiniteDifferencesOnNegLog) {
  const auto r = synthetic([](double t) { return -std::log(t); }, 0.0, std::numeric_limits<double>::infinity());
  const auto d = r.finite_difference(0.5);
  EXPECT_NEAR(d.jet.d1, -2.0, 1e-6 * 2.0);
  EXPECT_NEAR(d.jet.d2, 4.0, 1e-6 * 4.0);
  EXPECT_NEAR(d.jet.d3, -16.0, 1e-6 * 16.0);
  EXPECT_FALSE(d.analytic);
}

TEST(Restrict, CubicTermVanishesForQuadratic) {
  const auto r = synthetic([](double t) { return t * t; }, -1.0, 1.0);
  // Rounding in f''' grows like gap^-3, so stay a tenth away from the ends.
  for (double t : {-0.9, -0.2, 0.0, 0.5, 0.9}) {
    const auto d = r.finite_difference(t);
    EXPECT_NEAR(d.jet.d3, 0.0, 1e-6);
    EXPECT_NEAR(d.jet.d2, 2.0, 1e-6);
  }
}

TEST(Restrict, BallCandidateIsEvenThroughCenter) {
  const Point c = at(0.4, 1.1);
  const DomainSpec ball = DomainSpec::ball(c, 3.0);
  const auto F = bar::make_candidate(ball, bar::CandidateKind::kLogCoshGap);
  const auto r = bar::restrict(F, geo::Geodesic(geo::direction(c, 1.3)));
  EXPECT_NEAR(r.lo(), -3.0, 1e-9);
  EXPECT_NEAR(r.hi(), 3.0, 1e-9);
  for (double t : {0.1, 1.0, 2.5, 2.99}) EXPECT_NEAR(r.value(t), r.value(-t), 1e-9 * std::fabs(r.value(t)) + 1e-12);
}

TEST(Restrict, AnalyticJetMatchesFiniteDifferences) {
  const Point c = at(1.0, 0.5);
  const DomainSpec tri = DomainSpec::equilateral_triangle(c, 4.0, 0.2);
  const auto F = bar::make_log_barrier(tri);
  ASSERT_TRUE(F.has_jet());
  const geo::Geodesic g(geo::direction(at(0.3, 0.4, c), 2.2));
  const auto r = bar::restrict(F, g);
  for (double s : {0.2, 0.5, 0.8}) {
    const double t = r.lo() + s * (r.hi() - r.lo());
    const auto a = r.derivatives(t), fd = r.finite_difference(t);
    EXPECT_TRUE(a.analytic);
    EXPECT_NEAR(a.jet.d1, fd.jet.d1, 1e-6 * (1.0 + std::fabs(a.jet.d1)));
    EXPECT_NEAR(a.jet.d2, fd.jet.d2, 1e-6 * (1.0 + std::fabs(a.jet.d2)));
    EXPECT_NEAR(a.jet.d3, fd.jet.d3, 1e-4 * (1.0 + std::fabs(a.jet.d3)));
  }
}

TEST(Restrict, EndpointsMatchMembership) {
  const DomainSpec poly = DomainSpec::regular_polygon(at(2.0, 0.3), 5, 2.0);
  const auto F = bar::make_log_barrier(poly);
  const geo::Geodesic g(geo::direction(at(2.0, 0.5), 0.9));
  const auto r = bar::restrict(F, g);
  EXPECT_TRUE(dom::contains(poly, g.at(r.lo() + 1e-9)));
  EXPECT_TRUE(dom::contains(poly, g.at(r.hi() - 1e-9)));
  EXPECT_FALSE(dom::contains(poly, g.at(r.lo() - 1e-9)));
  EXPECT_FALSE(dom::contains(poly, g.at(r.hi() + 1e-9)));
}

TEST(Restrict, MissingGeodesicThrows) {
  const auto F = bar::make_candidate(DomainSpec::ball(Point(), 1.0), bar::CandidateKind::kLogCoshGap);
  EXPECT_THROW(bar::restrict(F, geo::Geodesic(geo::direction(at(0.0, 4.0), kPi / 2.0))), Error);
}

TEST(BarrierFn, FiniteExactlyInside) {
  const Point c = at(0.2, 0.9);
  const auto F = bar::make_log_barrier(dom::horoball_pair(c, geo::direction(c, 0.0), 1.0).domain);
  numeric::Rng rng(5, 0);
  for (int i = 0; i < 500; ++i) {
    const Point p = at(rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0), c);
    EXPECT_EQ(std::isfinite(F(p)), dom::contains(F.domain(), p));
  }
}

TEST(BarrierFn, BlowsUpAtTheBoundary) {
  const Point c = at(1.0, 1.0);
  const DomainSpec ball = DomainSpec::ball(c, 2.0);
  const auto& b = *ball.get_if<dom::Ball>();
  const std::vector<bar::BarrierFn> fns = {bar::make_candidate(ball, bar::CandidateKind::kLogCoshGap),
                                           bar::make_candidate(ball, bar::CandidateKind::kLogSquareGap),
                                           bar::make_log_barrier(ball)};
  for (const auto& F : fns) {
    for (double angle : {0.0, 2.0, 4.0}) {
      const double far = F(at_margin(b, angle, 1e-1));
      for (int k = 2; k <= 6; ++k) EXPECT_GT(F(at_margin(b, angle, std::pow(10.0, -k))), far) << F.name();
      EXPECT_GE(F(at_margin(b, angle, 1e-6)) - far, 5.0) << F.name();
    }
  }
}

TEST(Candidates, ValuesAndSymmetry) {
  const Point c = at(0.6, 1.5);
  const DomainSpec ball = DomainSpec::ball(c, 2.0);
  const auto cosh_gap = bar::make_candidate(ball, bar::CandidateKind::kLogCoshGap);
  const auto square_gap = bar::make_candidate(ball, bar::CandidateKind::kLogSquareGap);
  EXPECT_NEAR(cosh_gap(c), -std::log(std::cosh(2.0) - 1.0), 1e-12);
  EXPECT_NEAR(square_gap(at(1.0, 1.0, c)), -std::log(3.0), 1e-12);
  EXPECT_NEAR(square_gap(at(1.0, 1.0, c)), -1.0986122886681098, 1e-12);
  EXPECT_FALSE(cosh_gap.verified());
  EXPECT_FALSE(square_gap.has_jet());
  const Point p = at(0.3, 1.2, c);
  for (double phi : {0.5, 1.7, 3.0}) {
    EXPECT_NEAR(cosh_gap(geo::rotate(c, phi, p)), cosh_gap(p), 1e-12);
    EXPECT_NEAR(square_gap(geo::rotate(c, phi, p)), square_gap(p), 1e-12);
  }
  EXPECT_THROW(bar::make_candidate(DomainSpec::equilateral_triangle(c, 2.0), bar::CandidateKind::kLogCoshGap), Error);
  EXPECT_EQ(bar::parse_candidate_kind("log-cosh-gap"), bar::CandidateKind::kLogCoshGap);
  EXPECT_EQ(bar::parse_candidate_kind("log-square-gap"), bar::CandidateKind::kLogSquareGap);
  EXPECT_FALSE(bar::parse_candidate_kind("hnw").has_value());
}

TEST(Symmetrize, TrivialGroupLeavesFUnchanged) {
  const Point c = at(0.5, 0.5);
  const auto F = bar::make_log_barrier(DomainSpec::equilateral_triangle(c, 3.0));
  const auto S = bar::symmetrize(F, {geo::Isometry()});
  for (double a : {0.0, 1.0, 2.0}) {
    const Point p = at(a, 0.4, c);
    EXPECT_NEAR(S(p), F(p), 1e-12 * (1.0 + std::fabs(F(p))));
  }
}

TEST(Symmetrize, RotationGroupHasCriticalPointAtCentroid) {
  const Point c = at(2.0, 1.3);
  const DomainSpec tri = DomainSpec::equilateral_triangle(c, 5.0, 0.4);
  // An off-center anchor breaks the symmetry of F itself.
  bar::LogBarrierOptions opt;
  opt.anchor = at(0.0, 0.6, c);
  opt.weights = {1.0, 2.0, 0.5};
  const auto F = bar::make_log_barrier(tri, opt);
  const auto S = bar::symmetrize(F, bar::rotation_group(c, 3));
  for (double angle : {0.0, 0.8, 2.1}) {
    const auto r = bar::restrict(S.without_jet(), geo::Geodesic(geo::direction(c, angle)));
    EXPECT_LE(std::fabs(r.finite_difference(0.0).jet.d1), 1e-6);
  }
  const auto rF = bar::restrict(F, geo::Geodesic(geo::direction(c, 0.0)));
  EXPECT_GT(std::fabs(rF.derivatives(0.0).jet.d1), 1e-3);
}

TEST(Symmetrize, CommutesWithRestriction) {
  const Point c = at(1.0, 0.7);
  const DomainSpec tri = DomainSpec::equilateral_triangle(c, 4.0, 0.0);
  bar::LogBarrierOptions opt;
  opt.weights = {1.0, 1.5, 2.0};
  const auto F = bar::make_log_barrier(tri, opt);
  const auto group = bar::rotation_group(c, 3);
  const auto S = bar::symmetrize(F, group);
  const geo::Geodesic g(geo::direction(at(0.5, 0.3, c), 1.0));
  const auto rs = bar::restrict(S, g);
  for (double s : {0.1, 0.5, 0.85}) {
    const double t = rs.lo() + s * (rs.hi() - rs.lo());
    bar::Jet sum;
    for (const auto& iso : group) sum += F.jet(iso.apply(g), t);
    const auto js = rs.derivatives(t).jet;
    EXPECT_NEAR(js.f, sum.f, 1e-9 * (1.0 + std::fabs(sum.f)));
    EXPECT_NEAR(js.d1, sum.d1, 1e-9 * (1.0 + std::fabs(sum.d1)));
    EXPECT_NEAR(js.d2, sum.d2, 1e-9 * (1.0 + std::fabs(sum.d2)));
  }
}

TEST(Symmetrize, RejectsGroupsThatMoveTheDomain) {
  const Point c = at(0.2, 1.0);
  const auto F = bar::make_log_barrier(DomainSpec::equilateral_triangle(c, 3.0));
  EXPECT_THROW(bar::symmetrize(F, bar::rotation_group(c, 4)), Error);
  EXPECT_THROW(bar::symmetrize(F, bar::rotation_group(at(1.0, 1.0), 3)), Error);
  EXPECT_THROW(bar::symmetrize(F, {}), Error);
}

TEST(Symmetrize, ReflectionGroupOfHoroballPair) {
  const Point p = at(0.9, 1.0);
  const geo::Tangent e1 = geo::direction(p, 0.3);
  const auto hp = dom::horoball_pair(p, e1, 1.0);
  const auto group = bar::reflection_group(geo::Geodesic(e1), geo::Geodesic(geo::direction(p, 0.3 + kPi / 2.0)));
  ASSERT_EQ(group.size(), 4u);
  bar::LogBarrierOptions opt;
  opt.anchor = at(1.0, 0.3, p);
  const auto S = bar::symmetrize(bar::make_log_barrier(hp.domain, opt), group);
  for (double angle : {0.0, 1.0, 2.0}) {
    EXPECT_LE(std::fabs(bar::restrict(S, geo::Geodesic(geo::direction(p, angle))).derivatives(0.0).jet.d1), 1e-9);
  }
}

TEST(Normalize, ScalesValuesAndJets) {
  const auto F = bar::make_log_barrier(DomainSpec::ball(Point(), 2.0));
  const auto G = bar::normalize(F, 3.0);
  const Point p = at(1.0, 0.7);
  EXPECT_NEAR(G(p), 9.0 * F(p), 1e-12 * std::fabs(F(p)));
  const geo::Geodesic g(geo::direction(p, 0.2));
  EXPECT_NEAR(G.jet(g, 0.1).d2, 9.0 * F.jet(g, 0.1).d2, 1e-12 * F.jet(g, 0.1).d2);
  const auto same = bar::normalize(F, 1.0);
  EXPECT_EQ(same(p), F(p));
  EXPECT_THROW(bar::normalize(F, 0.0), Error);
  EXPECT_THROW(bar::normalize(F, -1.0), Error);
}

TEST(Normalize, QuarterNegLogBecomesStandard) {
  const auto F = bar::normalize(bar::neg_log(0.25), 2.0);
  const auto r = bar::restrict(F);
  for (double t : {0.01, 0.3, 0.9}) {
    const auto j = r.derivatives(t).jet;
    EXPECT_NEAR(std::fabs(j.d3) / (2.0 * std::pow(j.d2, 1.5)), 1.0, 1e-6);
    EXPECT_NEAR(j.f, -std::log(t), 1e-12);
  }
}

TEST(IntervalBarriers, ReferenceFunctions) {
  const auto nl = bar::neg_log();
  EXPECT_FALSE(nl.contains(0.0));
  EXPECT_TRUE(std::isinf(nl(-1.0)));
  EXPECT_NEAR(nl(0.5), std::log(2.0), 1e-15);
  const auto nli = bar::neg_log_interval();
  EXPECT_NEAR(nli(0.5), -std::log(0.75), 1e-15);
  EXPECT_TRUE(std::isinf(nli(1.0)));
  const auto q = bar::quadratic_interval();
  EXPECT_EQ(q(0.5), 0.25);
  const auto j = nli.jet(0.3);
  const auto fd = bar::restrict(nli.without_jet()).finite_difference(0.3).jet;
  EXPECT_NEAR(j.d1, fd.d1, 1e-8);
  EXPECT_NEAR(j.d2, fd.d2, 1e-8);
  EXPECT_NEAR(j.d3, fd.d3, 1e-6);
}

TEST(IntervalBarriers, ConvexAlongSamples) {
  for (const auto& F : {bar::neg_log(), bar::neg_log_interval(), bar::quadratic_interval()}) {
    const auto r = bar::restrict(F);
    for (int i = 1; i < 50; ++i) {
      const double t = F.window_lo + (F.window_hi - F.window_lo) * i / 50.0;
      EXPECT_GE(r.derivatives(t).jet.d2, -1e-6) << F.name;
    }
  }
}

TEST(LogBarrier, ConvexAlongRandomGeodesics) {
  const Point c = at(0.5, 1.0);
  const DomainSpec tri = DomainSpec::equilateral_triangle(c, 6.0);
  const auto F = bar::symmetrize(bar::make_log_barrier(tri), bar::rotation_group(c, 3));
  numeric::Rng rng(3, 1);
  for (int i = 0; i < 50; ++i) {
    const Point p = dom::sample_point(tri, dom::sampling_ball(tri, 4.0), rng);
    const auto r = bar::restrict(F, geo::Geodesic(geo::direction(p, rng.uniform(0.0, 2.0 * kPi))));
    for (int k = 1; k < 20; ++k) {
      const double t = r.lo() + (r.hi() - r.lo()) * k / 20.0;
      EXPECT_GE(r.derivatives(t).jet.d2, -1e-6);
    }
  }
}

TEST(LogBarrier, RejectsBadOptions) {
  const DomainSpec tri = DomainSpec::equilateral_triangle(Point(), 2.0);
  bar::LogBarrierOptions opt;
  opt.weights = {1.0, 2.0};
  EXPECT_THROW(bar::make_log_barrier(tri, opt), Error);
  opt.weights = {1.0, 2.0, -1.0};
  EXPECT_THROW(bar::make_log_barrier(tri, opt), Error);
  opt.weights.clear();
  opt.anchor_weight = -1.0;
  EXPECT_THROW(bar::make_log_barrier(tri, opt), Error);
}

TEST(RadialProbe, NegLogIsNotConvex) {
  const auto r = bar::radial_halfspace_probe([](double s) { return -std::log(s); });
  EXPECT_TRUE(r.convexity_violation);
  EXPECT_LT(r.worst_second_derivative, -1e-6);
  EXPECT_GT(r.witness_offset, 0.0);
  EXPECT_EQ(r.geodesics, 1000u);
}

TEST(RadialProbe, LinearAndConstantProfiles) {
  const auto lin = bar::radial_halfspace_probe([](double s) { return s; });
  EXPECT_FALSE(lin.monotonicity_violation);
  EXPECT_FALSE(lin.convexity_violation);
  const auto flat = bar::radial_halfspace_probe([](double) { return 3.0; });
  EXPECT_FALSE(flat.monotonicity_violation);
  EXPECT_FALSE(flat.convexity_violation);
  const auto dec = bar::radial_halfspace_probe([](double s) { return -s; });
  EXPECT_TRUE(dec.monotonicity_violation);
  EXPECT_THROW(bar::radial_halfspace_probe([](double s) { return s; }, 0.0), Error);
}
