#pragma once

// Sampled estimates of self-concordance and barrier constants, empirical
// checks of the barrier properties P1-P3, and an analytic-center solver.
//
// Every estimate is a supremum over a finite sample and therefore a lower
// estimate of the true constant. Reports are deterministic for a fixed plan
// regardless of the number of worker threads.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypbarrier/barriers.hpp"

namespace hypbarrier::chk {

struct SamplePlan {
  std::size_t point_count = 64;
  std::size_t geodesics_per_point = 8;
  std::size_t grid_per_geodesic = 24;  // log-spaced toward both ends
  double standoff = 1e-6;              // distance kept from the ends, in (0, 1e-2]
  std::uint64_t seed = 1;
  double unbounded_radius = 4.0;  // sampling radius for unbounded domains

  /// Throws InvalidArgument on zero counts or a standoff outside (0, 1e-2].
  void validate() const;
  /// Plan whose sample set contains this plan's: more points, twice the
  /// directions, and 2K - 1 grid parameters.
  SamplePlan refined() const;
};

enum class Status { kPass, kFail, kNotApplicable };
const char* to_string(Status s);

struct Witness {
  /// Parameter t for interval barriers, hyperboloid coordinates otherwise.
  std::vector<double> location;
  double direction = 0.0;  // angle in frame(location) for planar barriers
  double t = 0.0;          // step or offset along the direction
  double measured = 0.0;
  double slack = 0.0;
  std::size_t sample_index = 0;
  std::string detail;
};

struct Estimate {
  double value = 0.0;
  double error_bar = 0.0;
  std::size_t samples = 0;
  std::size_t degenerate = 0;  // f'' < 1e-10 while |f'''| > 1e-6; excluded
  std::optional<Witness> argmax;
};

struct PropertyResult {
  Status status = Status::kNotApplicable;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<Witness> worst;  // always set on FAIL
  std::string note;
};

enum class CenterStatus { kConverged, kNoConvergence, kNonconvexHessian, kUnboundedBelow };
const char* to_string(CenterStatus s);

struct CenterResult {
  CenterStatus status = CenterStatus::kNoConvergence;
  std::vector<double> location;  // t or hyperboloid coordinates
  geo::Point point;              // planar barriers
  double t = 0.0;                // interval barriers
  double decrement = 0.0;
  int iterations = 0;
  /// H11, H12, H22 in frame(point); for interval barriers H11 = f''(t).
  std::array<double, 3> hessian{};
  std::vector<std::vector<double>> trajectory;

  bool converged() const { return status == CenterStatus::kConverged; }
};

struct CheckReport {
  std::string barrier;
  SamplePlan plan;
  Estimate sigma;
  Estimate theta;
  double min_second_derivative = 0.0;
  std::optional<CenterResult> center;
  double theta_for_p3 = 0.0;
  PropertyResult p1;
  PropertyResult p2;
  PropertyResult p3;

  bool any_fail() const;
};

Estimate estimate_sigma(const bar::BarrierFn& F, const SamplePlan& plan);
Estimate estimate_sigma(const bar::IntervalBarrier& F, const SamplePlan& plan);
Estimate estimate_theta(const bar::BarrierFn& F, const SamplePlan& plan);
Estimate estimate_theta(const bar::IntervalBarrier& F, const SamplePlan& plan);

/// Damped Newton (step 1/(1 + decrement)) in normal coordinates; at most 200
/// iterations. Never throws for solver failures; inspect status.
CenterResult analytic_center(const bar::BarrierFn& F, const geo::Point& start, double tol = 1e-10);
CenterResult analytic_center(const bar::IntervalBarrier& F, double start, double tol = 1e-10);

/// Runs the estimators, the analytic-center solver and P1-P3. theta_for_p3
/// defaults to the measured theta_hat.
CheckReport check_P_properties(const bar::BarrierFn& F, const SamplePlan& plan,
                               std::optional<double> theta_for_p3 = std::nullopt);
CheckReport check_P_properties(const bar::IntervalBarrier& F, const SamplePlan& plan,
                               std::optional<double> theta_for_p3 = std::nullopt);

struct StrongConvexityReport {
  double mu_hat = 0.0;  // minimum sampled second derivative along the pair segments
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;
};

/// Checks F(q) >= F(p) + <grad F(p), log_p q> + mu/2 d(p,q)^2 with
/// mu = mu_hat (1 - 1e-3) on consecutive sampled points.
StrongConvexityReport strong_convexity_probe(const bar::BarrierFn& F, const SamplePlan& plan);

/// Worker threads: HYPBARRIER_THREADS if set to a positive integer, else the
/// hardware concurrency.
std::size_t thread_count();

}  // namespace hypbarrier::chk
