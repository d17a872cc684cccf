#include "hypbarrier/checker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hypbarrier/error.hpp"
#include "hypbarrier/numeric.hpp"

namespace hypbarrier::chk {

using geo::Point;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateF2 = 1e-10;
constexpr double kDegenerateF3 = 1e-6;
constexpr double kF2Floor = 1e-12;
constexpr double kPropertyTol = 1e-6;
constexpr double kP2Quadratic = 1.0 - 1e-3;
constexpr double kP1Scales[] = {0.25, 0.5, 0.81, 0.98};
constexpr int kMaxNewtonIterations = 200;

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Line {
  std::optional<bar::Restriction1D> r;
  double lo = 0.0;  // sampling window
  double hi = 0.0;
  bool planar = false;
  geo::Geodesic g;
};

struct Sample {
  std::size_t line = 0;
  double t = 0.0;
  bar::Derivatives d;
};

struct SampleSet {
  std::vector<Line> lines;
  std::vector<Sample> samples;
};

// K parameters in (a, b), log-spaced toward both ends starting `eps` away.
// The map u -> t is fixed, so u = k / (K - 1) grids nest under K -> 2K - 1.
std::vector<double> grid(double a, double b, double eps, std::size_t K) {
  const double half = 0.5 * (b - a);
  if (K == 1) return {a + half};
  eps = std::min(eps, 0.1 * half);
  const double ratio = half / eps;
  std::vector<double> ts(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(K - 1);
    ts[k] = u <= 0.5 ? a + eps * std::pow(ratio, 2.0 * u) : b - eps * std::pow(ratio, 2.0 * (1.0 - u));
  }
  return ts;
}

void fill_samples(SampleSet& set, const SamplePlan& plan) {
  const std::size_t K = plan.grid_per_geodesic;
  set.samples.resize(set.lines.size() * K);
  parallel_for(set.lines.size(), [&](std::size_t i) {
    const Line& line = set.lines[i];
    const auto ts = grid(line.lo, line.hi, plan.standoff, K);
    for (std::size_t k = 0; k < K; ++k) {
      Sample& s = set.samples[i * K + k];
      s.line = i;
      s.t = ts[k];
      s.d = line.r->derivatives(ts[k]);
    }
  });
}

SampleSet collect(const bar::BarrierFn& F, const SamplePlan& plan) {
  plan.validate();
  const dom::DomainSpec& d = F.domain();
  const dom::SamplingBall ball = dom::sampling_ball(d, plan.unbounded_radius);
  const std::size_t M = plan.geodesics_per_point;
  SampleSet set;
  set.lines.resize(plan.point_count * M);
  parallel_for(plan.point_count, [&](std::size_t i) {
    numeric::Rng rng(plan.seed, i);
    const Point p = dom::sample_point(d, ball, rng);
    const double phi0 = 2.0 * numeric::kPi * rng.uniform();
    for (std::size_t j = 0; j < M; ++j) {
      const double angle = phi0 + 2.0 * numeric::kPi * static_cast<double>(j) / static_cast<double>(M);
      Line& line = set.lines[i * M + j];
      line.planar = true;
      line.g = geo::Geodesic(geo::direction(p, angle));
      line.r = bar::restrict(F, line.g);
      line.lo = std::isfinite(line.r->lo()) ? line.r->lo() : -plan.unbounded_radius;
      line.hi = std::isfinite(line.r->hi()) ? line.r->hi() : plan.unbounded_radius;
    }
  });
  fill_samples(set, plan);
  return set;
}

SampleSet collect(const bar::IntervalBarrier& F, const SamplePlan& plan) {
  plan.validate();
  SampleSet set;
  Line line;
  line.r = bar::restrict(F);
  line.lo = F.window_lo;
  line.hi = F.window_hi;
  set.lines.push_back(std::move(line));
  fill_samples(set, plan);
  return set;
}

Witness make_witness(const SampleSet& set, std::size_t index) {
  const Sample& s = set.samples[index];
  const Line& line = set.lines[s.line];
  Witness w;
  w.sample_index = index;
  if (line.planar) {
    const Point p = line.g.at(s.t);
    w.location = {p.x0(), p.x1(), p.x2()};
    w.direction = geo::direction_angle(line.g.velocity(s.t));
  } else {
    w.location = {s.t};
  }
  return w;
}

bool degenerate(const bar::Derivatives& d) {
  return d.jet.d2 < kDegenerateF2 && std::fabs(d.jet.d3) > kDegenerateF3;
}

bool usable(const Sample& s) { return std::isfinite(s.d.jet.f) && !degenerate(s.d); }

Estimate sigma_from(const SampleSet& set) {
  Estimate e;
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    const auto& s = set.samples[i];
    if (!std::isfinite(s.d.jet.f)) continue;
    if (degenerate(s.d)) {
      ++e.degenerate;
      continue;
    }
    ++e.samples;
    const double f2 = std::max(s.d.jet.d2, kF2Floor);
    const double ratio = std::fabs(s.d.jet.d3) / (2.0 * std::pow(f2, 1.5));
    if (ratio > best) {
      best = ratio;
      arg = i;
    }
  }
  if (best < 0.0) return e;
  const auto& d = set.samples[arg].d;
  const double f2 = std::max(d.jet.d2, kF2Floor);
  e.value = best;
  e.error_bar = d.err3 / (2.0 * std::pow(f2, 1.5)) + 0.75 * std::fabs(d.jet.d3) * d.err2 / std::pow(f2, 2.5);
  e.argmax = make_witness(set, arg);
  e.argmax->measured = best;
  return e;
}

Estimate theta_from(const SampleSet& set) {
  Estimate e;
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    const auto& s = set.samples[i];
    if (!std::isfinite(s.d.jet.f)) continue;
    if (degenerate(s.d)) {
      ++e.degenerate;
      continue;
    }
    ++e.samples;
    const double ratio = s.d.jet.d1 * s.d.jet.d1 / std::max(s.d.jet.d2, kF2Floor);
    if (ratio > best) {
      best = ratio;
      arg = i;
    }
  }
  if (best < 0.0) return e;
  const auto& d = set.samples[arg].d;
  const double f2 = std::max(d.jet.d2, kF2Floor);
  e.value = best;
  e.error_bar = 2.0 * std::fabs(d.jet.d1) * d.err1 / f2 + d.jet.d1 * d.jet.d1 * d.err2 / (f2 * f2);
  e.argmax = make_witness(set, arg);
  e.argmax->measured = best;
  return e;
}

void record(PropertyResult& r, Witness w, bool violated) {
  ++r.checked;
  if (violated) ++r.violations;
  if (!r.worst || w.slack < r.worst->slack) r.worst = std::move(w);
}

void finish(PropertyResult& r) { r.status = r.violations > 0 ? Status::kFail : Status::kPass; }

PropertyResult check_p1(const SampleSet& set) {
  PropertyResult r;
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    const auto& s = set.samples[i];
    if (!usable(s) || s.d.jet.d2 < kF2Floor) continue;
    const auto& line = *set.lines[s.line].r;
    for (double k : kP1Scales) {
      const double step = std::sqrt(k / s.d.jet.d2);
      const double shrink = (1.0 - std::sqrt(k)) * (1.0 - std::sqrt(k));
      for (double sign : {1.0, -1.0}) {
        Witness w = make_witness(set, i);
        w.t = sign * step;
        w.measured = k;
        const double t1 = s.t + sign * step;
        if (!line.contains(t1)) {
          w.slack = -1.0;
          w.detail = "exp_p(u) left the domain with Hessian form " + std::to_string(k);
          record(r, std::move(w), true);
          continue;
        }
        const auto d1 = line.derivatives(t1);
        const double rhs = shrink * d1.jet.d2 * step * step;
        w.slack = k - rhs;
        w.detail = "Hessian form at p minus shrunk transported form";
        const double allowance = shrink * d1.err2 * step * step;
        const bool violated = w.slack + allowance < -kPropertyTol;
        record(r, std::move(w), violated);
      }
    }
  }
  finish(r);
  return r;
}

PropertyResult check_p2(const SampleSet& set) {
  PropertyResult r;
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    const auto& s = set.samples[i];
    if (!usable(s) || s.d.jet.d2 < kF2Floor) continue;
    const auto& line = *set.lines[s.line].r;
    const double step = std::sqrt(kP2Quadratic / s.d.jet.d2);
    for (double sign : {1.0, -1.0}) {
      Witness w = make_witness(set, i);
      w.t = sign * step;
      w.measured = kP2Quadratic;
      const bool inside = line.contains(s.t + sign * step);
      w.slack = inside ? 0.0 : -1.0;
      if (!inside) w.detail = "exp_p(u) left the domain with Hessian form < 1";
      record(r, std::move(w), !inside);
    }
  }
  finish(r);
  return r;
}

template <class QuadraticForm>
PropertyResult check_p3(const SampleSet& set, double theta, QuadraticForm&& form) {
  PropertyResult r;
  const double bound = (2.0 * theta + 1.0) * (2.0 * theta + 1.0);
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    const auto& s = set.samples[i];
    if (!std::isfinite(s.d.jet.f)) continue;
    Witness w = make_witness(set, i);
    w.measured = form(set, s);
    w.slack = bound - w.measured;
    w.detail = "(2 theta + 1)^2 minus the Hessian form of log_{p*}(p) at p*";
    const bool violated = w.slack < -kPropertyTol;
    record(r, std::move(w), violated);
  }
  finish(r);
  return r;
}

bar::Derivatives directional(const bar::BarrierFn& F, const geo::Tangent& dir) {
  const geo::Geodesic g(dir);
  if (F.has_jet()) {
    bar::Derivatives d;
    d.jet = F.jet(g, 0.0);
    d.analytic = true;
    return d;
  }
  return bar::restrict(F, g).derivatives(0.0);
}

}  // namespace

void SamplePlan::validate() const {
  if (point_count == 0 || geodesics_per_point == 0 || grid_per_geodesic == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample plan counts must be >= 1");
  }
  if (!(standoff > 0.0) || standoff > 1e-2) throw Error(ErrorCode::kInvalidArgument, "standoff must be in (0, 1e-2]");
  if (!(unbounded_radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "unbounded_radius must be positive");
}

SamplePlan SamplePlan::refined() const {
  SamplePlan p = *this;
  p.point_count = 2 * point_count;
  p.geodesics_per_point = 2 * geodesics_per_point;
  p.grid_per_geodesic = grid_per_geodesic == 1 ? 3 : 2 * grid_per_geodesic - 1;
  return p;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kNotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

const char* to_string(CenterStatus s) {
  switch (s) {
    case CenterStatus::kConverged: return "CONVERGED";
    case CenterStatus::kNoConvergence: return "NO_CONVERGENCE";
    case CenterStatus::kNonconvexHessian: return "NONCONVEX_HESSIAN";
    case CenterStatus::kUnboundedBelow: return "UNBOUNDED_BELOW";
  }
  return "?";
}

bool CheckReport::any_fail() const {
  return p1.status == Status::kFail || p2.status == Status::kFail || p3.status == Status::kFail;
}

std::size_t thread_count() {
  if (const char* env = std::getenv("HYPBARRIER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

Estimate estimate_sigma(const bar::BarrierFn& F, const SamplePlan& plan) { return sigma_from(collect(F, plan)); }
Estimate estimate_sigma(const bar::IntervalBarrier& F, const SamplePlan& plan) {
  return sigma_from(collect(F, plan));
}
Estimate estimate_theta(const bar::BarrierFn& F, const SamplePlan& plan) { return theta_from(collect(F, plan)); }
Estimate estimate_theta(const bar::IntervalBarrier& F, const SamplePlan& plan) {
  return theta_from(collect(F, plan));
}

CenterResult analytic_center(const bar::BarrierFn& F, const Point& start, double tol) {
  if (!dom::contains(F.domain(), start)) throw Error(ErrorCode::kInvalidArgument, "start point is outside the domain");
  CenterResult out;
  Point p = start;
  for (int iter = 0; iter <= kMaxNewtonIterations; ++iter) {
    const auto e = geo::frame(p);
    const auto d1 = directional(F, e[0]);
    const auto d2 = directional(F, e[1]);
    const auto dm = directional(F, (e[0] + e[1]) * std::sqrt(0.5));
    const double g1 = d1.jet.d1, g2 = d2.jet.d1;
    double h11 = d1.jet.d2, h22 = d2.jet.d2;
    const double h12 = dm.jet.d2 - 0.5 * (h11 + h22);
    out.point = p;
    out.location = {p.x0(), p.x1(), p.x2()};
    out.hessian = {h11, h12, h22};
    out.iterations = iter;
    out.trajectory.push_back(out.location);

    const double lambda_min = 0.5 * (h11 + h22) - std::hypot(0.5 * (h11 - h22), h12);
    if (lambda_min < -1e-8) {
      out.status = CenterStatus::kNonconvexHessian;
      return out;
    }
    if (lambda_min < kF2Floor) {
      h11 += kF2Floor - lambda_min;
      h22 += kF2Floor - lambda_min;
    }
    const double det = h11 * h22 - h12 * h12;
    const double v1 = -(h22 * g1 - h12 * g2) / det;
    const double v2 = -(h11 * g2 - h12 * g1) / det;
    const double decrement = std::sqrt(std::max(0.0, -(g1 * v1 + g2 * v2)));
    out.decrement = decrement;
    if (decrement <= tol) {
      out.status = CenterStatus::kConverged;
      return out;
    }
    if (iter == kMaxNewtonIterations) break;
    double scale = 1.0 / (1.0 + decrement);
    Point next = p;
    for (int halving = 0; halving < 60; ++halving) {
      next = geo::exp((e[0] * v1 + e[1] * v2) * scale);
      if (dom::contains(F.domain(), next)) break;
      scale *= 0.5;
    }
    p = next;
  }
  out.status = CenterStatus::kNoConvergence;
  return out;
}

CenterResult analytic_center(const bar::IntervalBarrier& F, double start, double tol) {
  if (!F.contains(start)) throw Error(ErrorCode::kInvalidArgument, "start point is outside the domain");
  CenterResult out;
  if (!F.bounded_below) {
    out.status = CenterStatus::kUnboundedBelow;
    out.t = start;
    out.location = {start};
    return out;
  }
  const auto r = bar::restrict(F);
  double t = start;
  for (int iter = 0; iter <= kMaxNewtonIterations; ++iter) {
    const auto d = r.derivatives(t);
    out.t = t;
    out.location = {t};
    out.hessian = {d.jet.d2, 0.0, 0.0};
    out.iterations = iter;
    out.trajectory.push_back({t});
    if (d.jet.d2 < -1e-8) {
      out.status = CenterStatus::kNonconvexHessian;
      return out;
    }
    const double h = std::max(d.jet.d2, kF2Floor);
    const double v = -d.jet.d1 / h;
    out.decrement = std::fabs(d.jet.d1) / std::sqrt(h);
    if (out.decrement <= tol) {
      out.status = CenterStatus::kConverged;
      return out;
    }
    if (iter == kMaxNewtonIterations) break;
    double step = v / (1.0 + out.decrement);
    while (!F.contains(t + step)) step *= 0.5;
    t += step;
  }
  out.status = CenterStatus::kNoConvergence;
  return out;
}

CheckReport check_P_properties(const bar::BarrierFn& F, const SamplePlan& plan, std::optional<double> theta_for_p3) {
  const SampleSet set = collect(F, plan);
  CheckReport report;
  report.barrier = F.name();
  report.plan = plan;
  report.sigma = sigma_from(set);
  report.theta = theta_from(set);
  report.min_second_derivative = kInf;
  for (const auto& s : set.samples) {
    if (std::isfinite(s.d.jet.f)) report.min_second_derivative = std::min(report.min_second_derivative, s.d.jet.d2);
  }
  report.theta_for_p3 = theta_for_p3.value_or(report.theta.value);
  report.p1 = check_p1(set);
  report.p2 = check_p2(set);

  report.center = analytic_center(F, dom::deepest_point(F.domain()));
  if (!report.center->converged()) {
    report.p3.status = Status::kNotApplicable;
    report.p3.note = std::string("analytic center not found: ") + to_string(report.center->status);
    return report;
  }
  const Point center = report.center->point;
  const auto e = geo::frame(center);
  const auto h = report.center->hessian;
  report.p3 = check_p3(set, report.theta_for_p3, [&](const SampleSet& s, const Sample& sample) {
    const geo::Tangent v = geo::log(center, s.lines[sample.line].g.at(sample.t));
    const double a = geo::inner(v, e[0]), b = geo::inner(v, e[1]);
    return h[0] * a * a + 2.0 * h[1] * a * b + h[2] * b * b;
  });
  return report;
}

CheckReport check_P_properties(const bar::IntervalBarrier& F, const SamplePlan& plan,
                               std::optional<double> theta_for_p3) {
  const SampleSet set = collect(F, plan);
  CheckReport report;
  report.barrier = F.name;
  report.plan = plan;
  report.sigma = sigma_from(set);
  report.theta = theta_from(set);
  report.min_second_derivative = kInf;
  for (const auto& s : set.samples) {
    if (std::isfinite(s.d.jet.f)) report.min_second_derivative = std::min(report.min_second_derivative, s.d.jet.d2);
  }
  report.theta_for_p3 = theta_for_p3.value_or(report.theta.value);
  report.p1 = check_p1(set);
  report.p2 = check_p2(set);

  report.center = analytic_center(F, 0.5 * (F.window_lo + F.window_hi));
  if (report.center->status == CenterStatus::kUnboundedBelow) {
    report.p3.status = Status::kPass;
    report.p3.note = "barrier is unbounded below; P3 holds vacuously";
    return report;
  }
  if (!report.center->converged()) {
    report.p3.status = Status::kNotApplicable;
    report.p3.note = std::string("analytic center not found: ") + to_string(report.center->status);
    return report;
  }
  const double t_star = report.center->t;
  const double h = report.center->hessian[0];
  report.p3 = check_p3(set, report.theta_for_p3, [&](const SampleSet&, const Sample& sample) {
    return (sample.t - t_star) * (sample.t - t_star) * h;
  });
  return report;
}

StrongConvexityReport strong_convexity_probe(const bar::BarrierFn& F, const SamplePlan& plan) {
  plan.validate();
  const dom::DomainSpec& d = F.domain();
  const dom::SamplingBall ball = dom::sampling_ball(d, plan.unbounded_radius);
  std::vector<Point> pts(plan.point_count);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    numeric::Rng rng(plan.seed, i);
    pts[i] = dom::sample_point(d, ball, rng);
  }
  StrongConvexityReport out;
  if (pts.size() < 2) return out;
  out.pairs = pts.size() - 1;

  struct PairData {
    double length = 0.0;
    double f0 = 0.0, f1 = 0.0, slope = 0.0, min_f2 = kInf;
  };
  std::vector<PairData> data(out.pairs);
  constexpr int kSegmentGrid = 33;
  parallel_for(out.pairs, [&](std::size_t i) {
    PairData& pd = data[i];
    const geo::Tangent v = geo::log(pts[i], pts[i + 1]);
    pd.length = v.norm();
    if (pd.length == 0.0) return;
    const geo::Geodesic g(v);
    const auto r = bar::restrict(F, g);
    pd.f0 = r.value(0.0);
    pd.f1 = r.value(pd.length);
    pd.slope = r.derivatives(0.0).jet.d1;
    for (int k = 0; k < kSegmentGrid; ++k) {
      const double t = pd.length * k / (kSegmentGrid - 1);
      pd.min_f2 = std::min(pd.min_f2, r.derivatives(t).jet.d2);
    }
  });
  out.mu_hat = kInf;
  for (const auto& pd : data) out.mu_hat = std::min(out.mu_hat, pd.min_f2);
  const double mu = out.mu_hat - 1e-3 * std::fabs(out.mu_hat);
  out.worst_slack = kInf;
  for (const auto& pd : data) {
    if (pd.length == 0.0) continue;
    const double slack = pd.f1 - pd.f0 - pd.slope * pd.length - 0.5 * mu * pd.length * pd.length;
    const double tol = 1e-9 * (1.0 + std::fabs(pd.f0) + std::fabs(pd.f1));
    out.worst_slack = std::min(out.worst_slack, slack);
    if (slack < -tol) ++out.violations;
  }
  return out;
}

}  // namespace hypbarrier::chk
