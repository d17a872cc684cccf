#include "hypbarrier/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypbarrier/error.hpp"
#include "hypbarrier/numeric.hpp"

namespace hypbarrier::bar {

using geo::Point;
using geo::Vec3;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// weight * psi(B(x, w) + c) with psi = -log or the identity.
struct LinearTerm {
  enum class Kind { kNegLog, kIdentity };
  Kind kind;
  Vec3 w;
  double c;
  double weight;
  bool half_space = false;

  double value(const Point& x) const {
    const double s = geo::minkowski(x.coords(), w) + c;
    if (kind == Kind::kIdentity) return weight * s;
    return s > 0.0 ? -weight * std::log(s) : kInf;
  }

  Jet jet(const geo::Geodesic& g, double t) const {
    const double a = geo::minkowski(g.base().coords(), w);
    const double b = geo::minkowski(g.dir().vec(), w);
    const double ch = numeric::cosh_capped(t), sh = numeric::sinh_capped(t);
    const double s2 = a * ch + b * sh;  // s'' = s - c
    const double s = c + s2;
    const double s1 = a * sh + b * ch;  // s''' = s'
    if (kind == Kind::kIdentity) return Jet{s, s1, s2, s1} * weight;
    if (!(s > 0.0)) return Jet{kInf, 0.0, 0.0, 0.0};
    const double q1 = s1 / s, q2 = s2 / s;
    return Jet{-std::log(s), -q1, q1 * q1 - q2, -q1 + 3.0 * q1 * q2 - 2.0 * q1 * q1 * q1} * weight;
  }
};

BarrierFn from_terms(const dom::DomainSpec& d, std::vector<LinearTerm> terms, std::string name,
                     std::string provenance, bool verified) {
  auto shared = std::make_shared<const std::vector<LinearTerm>>(std::move(terms));
  PointFn value = [shared](const Point& p) {
    double sum = 0.0;
    for (const auto& term : *shared) sum += term.value(p);
    return sum;
  };
  GeodesicJetFn jet = [shared](const geo::Geodesic& g, double t) {
    Jet sum;
    for (const auto& term : *shared) sum += term.jet(g, t);
    return sum;
  };
  return BarrierFn(d, std::move(value), std::move(jet), std::move(name), std::move(provenance), verified);
}

void collect_terms(const dom::DomainSpec& d, std::vector<LinearTerm>& out) {
  using Kind = LinearTerm::Kind;
  auto half_space = [&](const dom::HalfSpace& h) { out.push_back({Kind::kNegLog, -h.v.vec(), 0.0, 1.0, true}); };
  if (const auto* b = d.get_if<dom::Ball>()) {
    out.push_back({Kind::kNegLog, b->center.coords(), numeric::cosh_capped(b->radius), 1.0});
  } else if (const auto* h = d.get_if<dom::HalfSpace>()) {
    half_space(*h);
  } else if (const auto* hb = d.get_if<dom::Horoball>()) {
    out.push_back({Kind::kNegLog, hb->ray.ideal(), 1.0, 1.0});
  } else if (const auto* t = d.get_if<dom::EquilateralTriangle>()) {
    for (const auto& e : t->edges) half_space(e);
  } else if (const auto* poly = d.get_if<dom::RegularPolygon>()) {
    for (const auto& e : poly->edges) half_space(e);
  } else if (const auto* in = d.get_if<dom::Intersection>()) {
    for (const auto& part : in->parts) collect_terms(part, out);
  }
}

std::array<double, 3> stencils(const std::function<double(double)>& f, double t, double h) {
  double fp[4], fm[4];
  fp[0] = fm[0] = f(t);
  for (int k = 1; k <= 3; ++k) {
    fp[k] = f(t + k * h);
    fm[k] = f(t - k * h);
  }
  const double d1 = (fm[2] - 8.0 * fm[1] + 8.0 * fp[1] - fp[2]) / (12.0 * h);
  const double d2 = (-fm[2] + 16.0 * fm[1] - 30.0 * fp[0] + 16.0 * fp[1] - fp[2]) / (12.0 * h * h);
  const double d3 = (-fp[3] + 8.0 * fp[2] - 13.0 * fp[1] + 13.0 * fm[1] - 8.0 * fm[2] + fm[3]) / (8.0 * h * h * h);
  return {d1, d2, d3};
}

}  // namespace

// --- BarrierFn -------------------------------------------------------------

BarrierFn::BarrierFn(dom::DomainSpec domain, PointFn value, GeodesicJetFn jet, std::string name,
                     std::string provenance, bool verified)
    : impl_(std::make_shared<const Impl>(Impl{std::move(domain), std::move(value), std::move(jet), std::move(name),
                                              std::move(provenance), verified})) {}

double BarrierFn::operator()(const Point& p) const {
  if (!dom::contains(impl_->domain, p)) return kInf;
  return impl_->value(p);
}

Jet BarrierFn::jet(const geo::Geodesic& g, double t) const {
  if (!impl_->jet) throw Error(ErrorCode::kInvalidArgument, "barrier has no analytic jet");
  if (!dom::contains(impl_->domain, g.at(t))) return Jet{kInf, 0.0, 0.0, 0.0};
  return impl_->jet(g, t);
}

BarrierFn BarrierFn::without_jet() const {
  return BarrierFn(impl_->domain, impl_->value, {}, impl_->name, impl_->provenance, impl_->verified);
}

// --- Interval barriers ------------------------------------------------------

double IntervalBarrier::operator()(double t) const { return contains(t) ? f(t) : kInf; }

IntervalBarrier IntervalBarrier::without_jet() const {
  IntervalBarrier copy = *this;
  copy.jet = {};
  return copy;
}

IntervalBarrier neg_log(double scale) {
  IntervalBarrier b;
  b.name = "neg-log";
  b.lo = 0.0;
  b.hi = kInf;
  b.window_lo = 0.0;
  b.window_hi = 1.0;
  b.bounded_below = false;
  b.f = [scale](double t) { return t > 0.0 ? -scale * std::log(t) : kInf; };
  b.jet = [scale](double t) {
    const double u = 1.0 / t;
    return Jet{-std::log(t), -u, u * u, -2.0 * u * u * u} * scale;
  };
  return b;
}

IntervalBarrier neg_log_interval(double scale) {
  IntervalBarrier b;
  b.name = "neg-log-interval";
  b.lo = b.window_lo = -1.0;
  b.hi = b.window_hi = 1.0;
  b.bounded_below = true;
  b.f = [scale](double t) {
    const double gap = (1.0 - t) * (1.0 + t);
    return gap > 0.0 ? -scale * std::log(gap) : kInf;
  };
  b.jet = [scale](double t) {
    const double u = 1.0 / (1.0 - t), v = 1.0 / (1.0 + t);
    return Jet{-std::log((1.0 - t) * (1.0 + t)), u - v, u * u + v * v, 2.0 * (u * u * u - v * v * v)} * scale;
  };
  return b;
}

IntervalBarrier quadratic_interval() {
  IntervalBarrier b;
  b.name = "quadratic";
  b.lo = b.window_lo = -1.0;
  b.hi = b.window_hi = 1.0;
  b.bounded_below = true;
  b.f = [](double t) { return t * t; };
  b.jet = [](double t) { return Jet{t * t, 2.0 * t, 2.0, 0.0}; };
  return b;
}

IntervalBarrier normalize(const IntervalBarrier& F, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  const double s2 = sigma * sigma;
  IntervalBarrier b = F;
  b.name = F.name + "*" + std::to_string(s2);
  b.f = [f = F.f, s2](double t) { return s2 * f(t); };
  if (F.jet) b.jet = [jet = F.jet, s2](double t) { return jet(t) * s2; };
  return b;
}

// --- Restriction ------------------------------------------------------------

Restriction1D::Restriction1D(std::function<double(double)> f, std::function<bool(double)> inside, double lo,
                             double hi, std::function<Jet(double)> jet)
    : f_(std::move(f)), inside_(std::move(inside)), lo_(lo), hi_(hi), jet_(std::move(jet)) {}

Derivatives Restriction1D::derivatives(double t) const {
  if (!jet_) return finite_difference(t);
  Derivatives d;
  d.jet = jet_(t);
  d.analytic = true;
  return d;
}

Derivatives Restriction1D::finite_difference(double t) const {
  Derivatives d;
  const double gap = std::min(t - lo_, hi_ - t);
  if (!(gap > 0.0)) {
    d.jet.f = kInf;
    return d;
  }
  d.jet.f = f_(t);
  // Higher derivatives divide rounding by h^k, so they get larger steps.
  constexpr double kRelativeStep[3] = {1e-2, 2e-2, 3e-2};
  const double scale = std::min(gap, 1.0);
  double* out[3] = {&d.jet.d1, &d.jet.d2, &d.jet.d3};
  double* err[3] = {&d.err1, &d.err2, &d.err3};
  for (int k = 0; k < 3; ++k) {
    const double h = kRelativeStep[k] * scale;
    const double coarse = stencils(f_, t, h)[k];
    const double fine = stencils(f_, t, 0.5 * h)[k];
    *out[k] = fine + (fine - coarse) / 15.0;  // all stencils are fourth order
    *err[k] = std::fabs(fine - coarse);
  }
  return d;
}

Restriction1D restrict(const BarrierFn& F, const geo::Geodesic& g) {
  const dom::Chord c = dom::chord(F.domain(), g);
  std::function<Jet(double)> jet;
  if (F.has_jet()) jet = [F, g](double t) { return F.jet(g, t); };
  return Restriction1D([F, g](double t) { return F(g.at(t)); },
                       [F, g](double t) { return dom::contains(F.domain(), g.at(t)); }, c.lo, c.hi, std::move(jet));
}

Restriction1D restrict(const IntervalBarrier& F) {
  std::function<Jet(double)> jet;
  if (F.jet) {
    jet = [F](double t) { return F.contains(t) ? F.jet(t) : Jet{kInf, 0.0, 0.0, 0.0}; };
  }
  return Restriction1D([F](double t) { return F(t); }, [F](double t) { return F.contains(t); }, F.lo, F.hi,
                       std::move(jet));
}

// --- Symmetrization and scaling ---------------------------------------------

BarrierFn symmetrize(const BarrierFn& F, const std::vector<geo::Isometry>& group) {
  if (group.empty()) throw Error(ErrorCode::kInvalidGroup, "group must be non-empty");
  const dom::DomainSpec& d = F.domain();
  const dom::SamplingBall ball = dom::sampling_ball(d, 4.0);
  numeric::Rng rng(0x5eed, 0);
  std::vector<geo::Isometry> inverses;
  for (const auto& g : group) inverses.push_back(g.inverse());
  for (int i = 0; i < 100; ++i) {
    const Point p = dom::sample_point(d, ball, rng);
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (!dom::contains(d, group[k].apply(p)) || !dom::contains(d, inverses[k].apply(p))) {
        throw Error(ErrorCode::kInvalidGroup, "isometry " + std::to_string(k) + " does not preserve the domain");
      }
    }
  }
  auto elements = std::make_shared<const std::vector<geo::Isometry>>(group);
  PointFn value = [F, elements](const Point& p) {
    double sum = 0.0;
    for (const auto& g : *elements) sum += F.value_fn()(g.apply(p));
    return sum;
  };
  GeodesicJetFn jet;
  if (F.has_jet()) {
    jet = [F, elements](const geo::Geodesic& geod, double t) {
      Jet sum;
      for (const auto& g : *elements) sum += F.jet_fn()(g.apply(geod), t);
      return sum;
    };
  }
  return BarrierFn(d, std::move(value), std::move(jet), "sym(" + F.name() + ")",
                   F.provenance() + "; summed over " + std::to_string(group.size()) + " isometries", F.verified());
}

BarrierFn normalize(const BarrierFn& F, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  const double s2 = sigma * sigma;
  PointFn value = [F, s2](const Point& p) { return s2 * F.value_fn()(p); };
  GeodesicJetFn jet;
  if (F.has_jet()) jet = [F, s2](const geo::Geodesic& g, double t) { return F.jet_fn()(g, t) * s2; };
  return BarrierFn(F.domain(), std::move(value), std::move(jet), F.name(),
                   F.provenance() + "; scaled by sigma^2 = " + std::to_string(s2), F.verified());
}

std::vector<geo::Isometry> rotation_group(const Point& center, int order) {
  if (order < 1) throw Error(ErrorCode::kInvalidGroup, "rotation order must be >= 1");
  std::vector<geo::Isometry> group{geo::Isometry()};
  for (int k = 1; k < order; ++k) group.push_back(geo::rotation(center, 2.0 * numeric::kPi * k / order));
  return group;
}

std::vector<geo::Isometry> reflection_group(const geo::Geodesic& axis1, const geo::Geodesic& axis2) {
  const geo::Isometry s1 = geo::reflection(axis1);
  const geo::Isometry s2 = geo::reflection(axis2);
  return {geo::Isometry(), s1, s2, s1.compose(s2)};
}

// --- Candidates and log barriers --------------------------------------------

const char* to_string(CandidateKind kind) {
  return kind == CandidateKind::kLogCoshGap ? "log-cosh-gap" : "log-square-gap";
}

std::optional<CandidateKind> parse_candidate_kind(const std::string& s) {
  if (s == "log-cosh-gap") return CandidateKind::kLogCoshGap;
  if (s == "log-square-gap") return CandidateKind::kLogSquareGap;
  return std::nullopt;
}

BarrierFn make_candidate(const dom::DomainSpec& d, CandidateKind kind) {
  const auto* ball = d.get_if<dom::Ball>();
  if (ball == nullptr) throw Error(ErrorCode::kInvalidArgument, "candidate barriers need a ball domain");
  if (kind == CandidateKind::kLogCoshGap) {
    std::vector<LinearTerm> terms;
    collect_terms(d, terms);
    return from_terms(d, std::move(terms), to_string(kind), "candidate -log(cosh R - cosh d(c,p)); unverified",
                      false);
  }
  const Point c = ball->center;
  const double r2 = ball->radius * ball->radius;
  PointFn value = [c, r2](const Point& p) {
    const double dc = geo::dist(c, p);
    const double gap = r2 - dc * dc;
    return gap > 0.0 ? -std::log(gap) : kInf;
  };
  return BarrierFn(d, std::move(value), {}, to_string(kind), "candidate -log(R^2 - d(c,p)^2); unverified", false);
}

BarrierFn make_log_barrier(const dom::DomainSpec& d, const LogBarrierOptions& options) {
  std::vector<LinearTerm> terms;
  collect_terms(d, terms);
  if (!options.weights.empty()) {
    if (options.weights.size() != terms.size()) {
      throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(terms.size()) + " weights");
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!(options.weights[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must be positive");
      terms[i].weight = options.weights[i];
    }
  }
  double half_space_weight = 0.0;
  for (const auto& t : terms) {
    if (t.half_space) half_space_weight += t.weight;
  }
  std::optional<Point> anchor = options.anchor;
  if (!anchor && half_space_weight > 0.0) anchor = dom::deepest_point(d);
  if (anchor) {
    const double kappa = options.anchor_weight.value_or(half_space_weight > 0.0 ? half_space_weight : 1.0);
    if (kappa < 0.0) throw Error(ErrorCode::kInvalidArgument, "anchor weight must be >= 0");
    terms.push_back({LinearTerm::Kind::kIdentity, -anchor->coords(), -1.0, kappa});
  }
  return from_terms(d, std::move(terms), "log-barrier", "weighted logarithmic terms per constituent; unverified",
                    false);
}

// --- Radial half-space probe ------------------------------------------------

RadialProbeReport radial_halfspace_probe(const std::function<double(double)>& f, double T, std::size_t geodesics) {
  if (!(T > 0.0) || geodesics == 0) throw Error(ErrorCode::kInvalidArgument, "probe needs T > 0 and geodesics > 0");
  const Point origin;
  const dom::DomainSpec h = dom::DomainSpec::half_space(origin, geo::Tangent(origin, Vec3{0.0, 1.0, 0.0}));
  auto F = [&](const Point& p) { return f(dom::margin(h, p)); };

  RadialProbeReport report;
  report.geodesics = geodesics;
  constexpr double kStep = 1e-3;
  constexpr double kConvexityTol = 1e-6;
  const double ts[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double previous = 0.0;
  for (std::size_t k = 0; k < geodesics; ++k) {
    const double s = T * static_cast<double>(k + 1) / static_cast<double>(geodesics);
    // Foot at distance s from the boundary along the perpendicular through
    // the origin; the geodesic runs orthogonally to that perpendicular.
    const Point foot = Point::project(Vec3{0.0, -std::sinh(s), 0.0});
    const geo::Geodesic g(geo::Tangent(foot, Vec3{0.0, 0.0, 1.0}));
    for (double t : ts) {
      const double fm2 = F(g.at(t - 2 * kStep)), fm1 = F(g.at(t - kStep)), f0 = F(g.at(t));
      const double fp1 = F(g.at(t + kStep)), fp2 = F(g.at(t + 2 * kStep));
      const double d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * kStep * kStep);
      if (d2 < report.worst_second_derivative) {
        report.worst_second_derivative = d2;
        report.witness_offset = s;
        report.witness_t = t;
      }
    }
    const double here = F(foot);
    if (k > 0) {
      const double drop = previous - here;
      if (drop > report.worst_drop) {
        report.worst_drop = drop;
        report.monotonicity_offset = s;
      }
      if (drop > 1e-9 * std::max(1.0, std::fabs(previous))) report.monotonicity_violation = true;
    }
    previous = here;
  }
  report.convexity_violation = report.worst_second_derivative < -kConvexityTol;
  return report;
}

}  // namespace hypbarrier::bar
