#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "hypbarrier/checker.hpp"
#include "hypbarrier/error.hpp"

using namespace hypbarrier;
using chk::SamplePlan;
using chk::Status;
using dom::DomainSpec;
using geo::Point;
using numeric::kPi;

namespace {

Point at(double angle, double r, const Point& from = Point()) { return geo::exp(geo::direction(from, angle) * r); }

SamplePlan small_plan(std::uint64_t seed = 1) {
  SamplePlan p;
  p.point_count = 24;
  p.geodesics_per_point = 4;
  p.grid_per_geodesic = 16;
  p.seed = seed;
  return p;
}

bar::BarrierFn symmetric_triangle_barrier(const Point& c, double side) {
  bar::LogBarrierOptions opt;
  opt.weights = {1.0, 1.3, 0.7};
  opt.anchor = at(1.0, 0.3, c);
  return bar::symmetrize(bar::make_log_barrier(DomainSpec::equilateral_triangle(c, side, 0.5), opt),
                         bar::rotation_group(c, 3));
}

}  // namespace

TEST(Plan, ValidateAndRefine) {
  SamplePlan p;
  EXPECT_NO_THROW(p.validate());
  p.standoff = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p.standoff = 0.02;
  EXPECT_THROW(p.validate(), Error);
  p = SamplePlan{};
  p.point_count = 0;
  EXPECT_THROW(p.validate(), Error);
  const SamplePlan r = SamplePlan{}.refined();
  EXPECT_GT(r.point_count, SamplePlan{}.point_count);
  EXPECT_EQ(r.geodesics_per_point, 2 * SamplePlan{}.geodesics_per_point);
  EXPECT_EQ(r.grid_per_geodesic, 2 * SamplePlan{}.grid_per_geodesic - 1);
}

TEST(Sigma, ReferenceIntervalBarriers) {
  const SamplePlan plan;
  EXPECT_NEAR(chk::estimate_sigma(bar::neg_log(), plan).value, 1.0, 1e-4);
  EXPECT_NEAR(chk::estimate_sigma(bar::quadratic_interval(), plan).value, 0.0, 1e-6);
  EXPECT_NEAR(chk::estimate_sigma(bar::neg_log_interval(), plan).value, 1.0, 1e-3);
  EXPECT_NEAR(chk::estimate_sigma(bar::neg_log().without_jet(), plan).value, 1.0, 1e-4);
}

TEST(Sigma, ScalingOfNegLog) {
  // |f'''| / (2 f''^{3/2}) = 1 / sqrt(s) for s (-log t).
  EXPECT_NEAR(chk::estimate_sigma(bar::neg_log(0.25), SamplePlan{}).value, 2.0, 1e-4);
  EXPECT_NEAR(chk::estimate_sigma(bar::normalize(bar::neg_log(0.25), 2.0), SamplePlan{}).value, 1.0, 1e-6);
}

TEST(Theta, ReferenceIntervalBarriers) {
  const SamplePlan plan;
  const auto nl = chk::estimate_theta(bar::neg_log(), plan);
  EXPECT_NEAR(nl.value, 1.0, 1e-3);
  EXPECT_NEAR(chk::estimate_theta(bar::neg_log_interval(), plan).value, 1.0, 1e-3);
  EXPECT_NEAR(chk::estimate_theta(bar::quadratic_interval(), plan).value, 2.0, 1e-3);
  EXPECT_GT(nl.samples, 0u);
  ASSERT_TRUE(nl.argmax.has_value());
}

TEST(Theta, ExactScalingOnAFixedSample) {
  const Point c = at(0.3, 1.0);
  const auto F = symmetric_triangle_barrier(c, 4.0);
  const SamplePlan plan = small_plan();
  const double base = chk::estimate_theta(F, plan).value;
  for (double sigma : {0.5, 1.7, 3.0}) {
    EXPECT_NEAR(chk::estimate_theta(bar::normalize(F, sigma), plan).value, sigma * sigma * base,
                1e-9 * sigma * sigma * base);
  }
}

TEST(Estimates, MonotoneUnderRefinement) {
  const Point c = at(1.0, 0.5);
  const auto F = bar::make_log_barrier(DomainSpec::ball(c, 2.0));
  const SamplePlan plan = small_plan(9);
  const SamplePlan fine = plan.refined();
  EXPECT_GE(chk::estimate_sigma(F, fine).value, chk::estimate_sigma(F, plan).value);
  EXPECT_GE(chk::estimate_theta(F, fine).value, chk::estimate_theta(F, plan).value);
  EXPECT_GE(chk::estimate_theta(bar::neg_log_interval(), SamplePlan{}.refined()).value,
            chk::estimate_theta(bar::neg_log_interval(), SamplePlan{}).value);
}

TEST(Estimates, DeterministicForASeed) {
  const Point c = at(0.2, 0.8);
  const auto F = bar::make_candidate(DomainSpec::ball(c, 3.0), bar::CandidateKind::kLogCoshGap);
  const auto a = chk::estimate_theta(F, small_plan(4)), b = chk::estimate_theta(F, small_plan(4));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error_bar, b.error_bar);
  ASSERT_TRUE(a.argmax && b.argmax);
  EXPECT_EQ(a.argmax->sample_index, b.argmax->sample_index);
  EXPECT_EQ(a.argmax->location, b.argmax->location);
}

TEST(Estimates, IndependentOfThreadCount) {
  const Point c = at(0.2, 0.8);
  const auto F = symmetric_triangle_barrier(c, 5.0);
  const auto threaded = chk::check_P_properties(F, small_plan(2));
  ::setenv("HYPBARRIER_THREADS", "1", 1);
  EXPECT_EQ(chk::thread_count(), 1u);
  const auto serial = chk::check_P_properties(F, small_plan(2));
  ::unsetenv("HYPBARRIER_THREADS");
  EXPECT_EQ(threaded.sigma.value, serial.sigma.value);
  EXPECT_EQ(threaded.theta.value, serial.theta.value);
  EXPECT_EQ(threaded.min_second_derivative, serial.min_second_derivative);
  EXPECT_EQ(threaded.p1.checked, serial.p1.checked);
  EXPECT_EQ(threaded.p2.violations, serial.p2.violations);
}

TEST(Center, IntervalBarrier) {
  const auto c = chk::analytic_center(bar::neg_log_interval(), 0.6);
  ASSERT_TRUE(c.converged());
  EXPECT_NEAR(c.t, 0.0, 1e-9);
  EXPECT_LE(c.decrement, 1e-10);
  const auto unbounded = chk::analytic_center(bar::neg_log(), 0.5);
  EXPECT_EQ(unbounded.status, chk::CenterStatus::kUnboundedBelow);
}

TEST(Center, SymmetrizedBallCandidate) {
  const Point c = at(2.0, 1.2);
  const auto F = bar::make_candidate(DomainSpec::ball(c, 3.0), bar::CandidateKind::kLogCoshGap);
  const auto S = bar::symmetrize(F, bar::rotation_group(c, 5));
  const auto r = chk::analytic_center(S, at(0.4, 1.5, c));
  ASSERT_TRUE(r.converged()) << chk::to_string(r.status);
  EXPECT_LE(geo::dist(r.point, c), 1e-6);
}

TEST(Center, SymmetrizedTriangleIsTheCentroid) {
  const Point c = at(0.7, 1.4);
  const auto r = chk::analytic_center(symmetric_triangle_barrier(c, 6.0), at(2.0, 0.4, c));
  ASSERT_TRUE(r.converged()) << chk::to_string(r.status);
  EXPECT_LE(geo::dist(r.point, c), 1e-6);
  EXPECT_GT(r.hessian[0], 0.0);
  EXPECT_GT(r.hessian[0] * r.hessian[2] - r.hessian[1] * r.hessian[1], 0.0);
}

TEST(Center, FiniteDifferencesOnly) {
  const Point c = at(1.5, 0.5);
  const auto S = symmetric_triangle_barrier(c, 3.0).without_jet();
  const auto r = chk::analytic_center(S, at(0.0, 0.3, c), 1e-8);
  ASSERT_TRUE(r.converged()) << chk::to_string(r.status);
  EXPECT_LE(geo::dist(r.point, c), 1e-6);
}

TEST(Properties, ReferenceBarrierPassesAll) {
  const auto report = chk::check_P_properties(bar::neg_log_interval(), SamplePlan{});
  EXPECT_EQ(report.p1.status, Status::kPass);
  EXPECT_EQ(report.p2.status, Status::kPass);
  EXPECT_EQ(report.p3.status, Status::kPass);
  EXPECT_FALSE(report.any_fail());
  EXPECT_NEAR(report.sigma.value, 1.0, 1e-3);
  EXPECT_NEAR(report.theta.value, 1.0, 1e-3);
  ASSERT_TRUE(report.center.has_value());
  EXPECT_NEAR(report.center->t, 0.0, 1e-9);
}

TEST(Properties, HalfScaledBarrierFailsP2) {
  const auto report = chk::check_P_properties(bar::normalize(bar::neg_log_interval(), std::sqrt(0.5)), SamplePlan{});
  EXPECT_EQ(report.p2.status, Status::kFail);
  EXPECT_GT(report.p2.violations, 0u);
  ASSERT_TRUE(report.p2.worst.has_value());
  ASSERT_EQ(report.p2.worst->location.size(), 1u);
  EXPECT_GT(std::fabs(report.p2.worst->location[0]), 0.5);
  EXPECT_TRUE(report.any_fail());
}

TEST(Properties, QuadraticPassesP3) {
  const auto report = chk::check_P_properties(bar::quadratic_interval(), SamplePlan{}, 2.0);
  EXPECT_EQ(report.theta_for_p3, 2.0);
  EXPECT_EQ(report.p3.status, Status::kPass);
  ASSERT_TRUE(report.center.has_value());
  EXPECT_NEAR(report.center->t, 0.0, 1e-9);
}

TEST(Properties, FailuresAlwaysCarryWitnesses) {
  const Point c = at(0.3, 0.3);
  const auto F = bar::normalize(symmetric_triangle_barrier(c, 3.0), 0.2);
  const auto report = chk::check_P_properties(F, small_plan(3));
  for (const auto* p : {&report.p1, &report.p2, &report.p3}) {
    if (p->status == Status::kFail) EXPECT_TRUE(p->worst.has_value());
  }
  EXPECT_TRUE(report.any_fail());
}

TEST(Properties, PlanarSymmetricBarrier) {
  const Point c = at(1.0, 1.0);
  const auto F = symmetric_triangle_barrier(c, 4.0);
  const auto report = chk::check_P_properties(F, small_plan(5));
  EXPECT_GE(report.sigma.value, 0.0);
  EXPECT_GE(report.theta.value, 0.0);
  ASSERT_TRUE(report.center.has_value());
  EXPECT_TRUE(report.center->converged());
  EXPECT_LE(geo::dist(report.center->point, c), 1e-6);
  EXPECT_NE(report.p3.status, Status::kNotApplicable);
}

TEST(Normalization, MeasuredSigmaBecomesOne) {
  const Point c = at(0.5, 0.5);
  const auto F = bar::make_candidate(DomainSpec::ball(c, 2.0), bar::CandidateKind::kLogCoshGap);
  const SamplePlan plan = small_plan(6);
  const double sigma = chk::estimate_sigma(F, plan).value;
  ASSERT_GT(sigma, 0.0);
  const auto G = bar::normalize(F, sigma * (1.0 + 1e-6));
  EXPECT_LE(chk::estimate_sigma(G, plan).value, 1.0 + 1e-3);
}

TEST(StrongConvexity, TwoPointInequalityHolds) {
  const Point c = at(0.8, 0.6);
  for (const auto& F : {bar::make_log_barrier(DomainSpec::ball(c, 2.0)), symmetric_triangle_barrier(c, 4.0)}) {
    const auto r = chk::strong_convexity_probe(F, small_plan(8));
    EXPECT_GT(r.pairs, 0u);
    EXPECT_GT(r.mu_hat, 0.0);
    EXPECT_EQ(r.violations, 0u) << "worst slack " << r.worst_slack;
  }
}

TEST(Strings, StatusNames) {
  EXPECT_STREQ(chk::to_string(Status::kPass), "PASS");
  EXPECT_STREQ(chk::to_string(Status::kFail), "FAIL");
  EXPECT_STREQ(chk::to_string(chk::CenterStatus::kConverged), "CONVERGED");
}
