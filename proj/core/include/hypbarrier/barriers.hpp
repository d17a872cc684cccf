#pragma once

// Barrier functions on geodesically convex domains and their restrictions to
// geodesics. Barrier values are +infinity outside the open domain.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypbarrier/domains.hpp"
#include "hypbarrier/hypgeo.hpp"

namespace hypbarrier::bar {

/// Value and first three derivatives of a function of one variable.
struct Jet {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  Jet& operator+=(const Jet& o) {
    f += o.f;
    d1 += o.d1;
    d2 += o.d2;
    d3 += o.d3;
    return *this;
  }
  Jet operator*(double s) const { return {f * s, d1 * s, d2 * s, d3 * s}; }
};

using PointFn = std::function<double(const geo::Point&)>;
/// Jet of t -> F(g(t)).
using GeodesicJetFn = std::function<Jet(const geo::Geodesic&, double)>;

class BarrierFn {
 public:
  BarrierFn(dom::DomainSpec domain, PointFn value, GeodesicJetFn jet, std::string name, std::string provenance,
            bool verified);

  const dom::DomainSpec& domain() const { return impl_->domain; }
  const std::string& name() const { return impl_->name; }
  const std::string& provenance() const { return impl_->provenance; }
  /// True when self-concordance is known a priori; candidates are unverified.
  bool verified() const { return impl_->verified; }

  /// +infinity outside the domain.
  double operator()(const geo::Point& p) const;

  bool has_jet() const { return static_cast<bool>(impl_->jet); }
  /// Analytic jet along g at t. Requires has_jet().
  Jet jet(const geo::Geodesic& g, double t) const;
  /// Same function with the analytic jet dropped (forces finite differences).
  BarrierFn without_jet() const;

  const PointFn& value_fn() const { return impl_->value; }
  const GeodesicJetFn& jet_fn() const { return impl_->jet; }

 private:
  struct Impl {
    dom::DomainSpec domain;
    PointFn value;
    GeodesicJetFn jet;
    std::string name;
    std::string provenance;
    bool verified;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Barrier on an open interval (lo, hi) of the real line; either end may be
/// infinite. Samples are drawn from the window, which lies inside (lo, hi).
struct IntervalBarrier {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  double window_lo = 0.0;
  double window_hi = 1.0;
  bool bounded_below = true;
  std::function<double(double)> f;
  std::function<Jet(double)> jet;  // optional

  double operator()(double t) const;
  bool contains(double t) const { return lo < t && t < hi; }
  IntervalBarrier without_jet() const;
};

/// scale * (-log t) on (0, inf), sampled over (0, 1).
IntervalBarrier neg_log(double scale = 1.0);
/// scale * (-log(1 - t^2)) on (-1, 1).
IntervalBarrier neg_log_interval(double scale = 1.0);
/// t^2 on (-1, 1); not a barrier, but every sampled quantity is defined.
IntervalBarrier quadratic_interval();
/// sigma^2 * F.
IntervalBarrier normalize(const IntervalBarrier& F, double sigma);

/// Derivatives of a restriction with error bars (zero for analytic jets).
struct Derivatives {
  Jet jet;
  double err1 = 0.0;
  double err2 = 0.0;
  double err3 = 0.0;
  bool analytic = false;
};

/// t -> F(g(t)) on the open interval {t : g(t) in D}.
class Restriction1D {
 public:
  Restriction1D(std::function<double(double)> f, std::function<bool(double)> inside, double lo, double hi,
                std::function<Jet(double)> jet = {});

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool contains(double t) const { return inside_(t); }
  double value(double t) const { return f_(t); }
  bool has_jet() const { return static_cast<bool>(jet_); }

  /// Analytic jet when available, finite differences otherwise.
  Derivatives derivatives(double t) const;
  /// Always finite differences: 5-point stencils for f', f'', 7-point for
  /// f''', steps h = c_k min(1, gap) with c = (1e-2, 2e-2, 3e-2) for the
  /// k-th derivative and gap the distance to the nearer end,
  /// Richardson-combined over (h, h/2); the error bars are the (h, h/2)
  /// discrepancies.
  Derivatives finite_difference(double t) const;

 private:
  std::function<double(double)> f_;
  std::function<bool(double)> inside_;
  double lo_;
  double hi_;
  std::function<Jet(double)> jet_;
};

/// Throws GeodesicMissesDomain if g never enters the domain.
Restriction1D restrict(const BarrierFn& F, const geo::Geodesic& g);
Restriction1D restrict(const IntervalBarrier& F);

/// p -> sum_g F(g p). Each isometry must map the domain into itself, checked
/// on 100 sampled interior points in both directions; throws InvalidGroup.
BarrierFn symmetrize(const BarrierFn& F, const std::vector<geo::Isometry>& group);

/// sigma^2 * F. Throws InvalidArgument for sigma <= 0.
BarrierFn normalize(const BarrierFn& F, double sigma);

/// {id, R, R^2, ...} for the rotation by 2 pi / order about center.
std::vector<geo::Isometry> rotation_group(const geo::Point& center, int order);
/// {id, s1, s2, s1 s2} for reflections across two perpendicular lines.
std::vector<geo::Isometry> reflection_group(const geo::Geodesic& axis1, const geo::Geodesic& axis2);

enum class CandidateKind { kLogCoshGap, kLogSquareGap };

/// Exploratory ball barriers, marked unverified:
///   log-cosh-gap   -log(cosh R - cosh d(c, p))   (analytic jet)
///   log-square-gap -log(R^2 - d(c, p)^2)         (finite differences)
/// Throws InvalidArgument unless the domain is a Ball.
BarrierFn make_candidate(const dom::DomainSpec& ball, CandidateKind kind);
const char* to_string(CandidateKind kind);
std::optional<CandidateKind> parse_candidate_kind(const std::string& s);

struct LogBarrierOptions {
  /// Weight per flattened constituent (triangle and polygon edges count
  /// individually); empty means all ones.
  std::vector<double> weights;
  /// Adds anchor_weight * (cosh d(p, anchor) - 1).
  std::optional<geo::Point> anchor;
  /// Defaults to the total half-space weight (enough to make the sum
  /// g-convex), or 1 if there are no half-space terms but an anchor is set.
  std::optional<double> anchor_weight;
};

/// Weighted sum of logarithmic terms, one per constituent:
///   ball        -log(cosh r + B(p, c))      = -log(cosh r - cosh d(c, p))
///   half-space  -log(-B(p, n))              = -log sinh(signed distance)
///   horoball    -log(1 + B(p, l))           = -log(1 - e^{b(p)})
/// All terms are functions of a linear form in p, so the jet is analytic.
/// If any half-space term is present and no anchor is given, the anchor is
/// the domain's deepest point.
BarrierFn make_log_barrier(const dom::DomainSpec& d, const LogBarrierOptions& options = {});

/// Report of the radial half-space probe.
struct RadialProbeReport {
  std::size_t geodesics = 0;
  bool convexity_violation = false;
  double worst_second_derivative = 0.0;  // minimum sampled composite f''
  double witness_offset = 0.0;           // distance of the geodesic from the boundary
  double witness_t = 0.0;
  bool monotonicity_violation = false;
  double worst_drop = 0.0;  // largest decrease of F along the perpendicular
  double monotonicity_offset = 0.0;
};

/// F(x) = f(d(x, boundary)) on a half-space. Samples `geodesics` geodesics
/// orthogonal to the common perpendicular at offsets s in (0, T], measures
/// the second derivative of F along each by finite differences on the actual
/// geometry, and checks that F does not decrease along the perpendicular.
RadialProbeReport radial_halfspace_probe(const std::function<double(double)>& f, double T = 5.0,
                                         std::size_t geodesics = 1000);

}  // namespace hypbarrier::bar
