#include "hypbarrier/domains.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hypbarrier/error.hpp"

namespace hypbarrier::dom {

using geo::Point;
using geo::Tangent;
using geo::Vec3;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

HalfSpace normalized_half_space(const Point& q, const Tangent& v) {
  if (v.norm() == 0.0) throw Error(ErrorCode::kInvalidArgument, "half-space normal must be nonzero");
  return HalfSpace{q, v.normalized()};
}

// Half-space bounded by the geodesic through a and b, on the side of `inside`.
HalfSpace edge_half_space(const Point& a, const Point& b, const Point& inside) {
  Vec3 n = geo::lorentz_cross(a.coords(), b.coords());
  if (geo::minkowski(inside.coords(), n) > 0.0) n = -n;
  const Point q = geo::midpoint(a, b);
  return normalized_half_space(q, Tangent(q, n));
}

Point klein_centroid(const std::vector<Point>& pts) {
  Vec3 s;
  for (const auto& p : pts) s = s + p.coords();
  return Point::project(s / std::sqrt(-geo::minkowski(s, s)));
}

double half_space_margin(const HalfSpace& h, const Point& p) {
  return -std::asinh(geo::minkowski(p.coords(), h.v.vec()));
}

template <class Range>
double edges_margin(const Range& edges, const Point& p) {
  double m = kInf;
  for (const auto& e : edges) m = std::min(m, half_space_margin(e, p));
  return m;
}

void flatten(const DomainSpec& d, std::vector<const DomainSpec*>& out) {
  if (const auto* in = d.get_if<Intersection>()) {
    for (const auto& part : in->parts) flatten(part, out);
  } else {
    out.push_back(&d);
  }
}

}  // namespace

DomainSpec DomainSpec::ball(const Point& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "ball radius must be positive and finite");
  }
  return DomainSpec(Ball{center, radius});
}

DomainSpec DomainSpec::half_space(const Point& q, const Tangent& v) {
  return DomainSpec(normalized_half_space(q, Tangent(q, v.vec())));
}

DomainSpec DomainSpec::horoball(const geo::GeodesicRay& ray) { return DomainSpec(Horoball{ray}); }

DomainSpec DomainSpec::triangle(const std::array<Point, 3>& v) {
  const double ab = geo::dist(v[0], v[1]);
  const double bc = geo::dist(v[1], v[2]);
  const double ca = geo::dist(v[2], v[0]);
  const double side = (ab + bc + ca) / 3.0;
  if (!(side > 0.0)) throw Error(ErrorCode::kInvalidArgument, "triangle vertices coincide");
  const double tol = 1e-9 * std::max(1.0, side);
  if (std::fabs(ab - side) > tol || std::fabs(bc - side) > tol || std::fabs(ca - side) > tol) {
    throw Error(ErrorCode::kInvalidArgument, "triangle vertices are not pairwise equidistant");
  }
  const Point inside = klein_centroid({v[0], v[1], v[2]});
  EquilateralTriangle t;
  t.vertices = v;
  t.side = side;
  for (int k = 0; k < 3; ++k) t.edges[k] = edge_half_space(v[k], v[(k + 1) % 3], inside);
  return DomainSpec(std::move(t));
}

DomainSpec DomainSpec::equilateral_triangle(const Point& center, double side, double orientation) {
  const PolygonGeometry g = polygon_geometry(3, side);
  const Point a = geo::exp(geo::direction(center, orientation) * g.circumradius);
  const geo::Isometry turn = geo::rotation(center, 2.0 * numeric::kPi / 3.0);
  const Point b = turn.apply(a);
  const Point c = turn.apply(b);
  return triangle({a, b, c});
}

DomainSpec DomainSpec::regular_polygon(const Point& center, int n, double side, double orientation) {
  const PolygonGeometry g = polygon_geometry(n, side);
  RegularPolygon poly;
  poly.center = center;
  poly.n = n;
  poly.side = side;
  poly.orientation = orientation;
  for (int k = 0; k < n; ++k) {
    const double angle = orientation + 2.0 * numeric::kPi * k / n;
    poly.vertices.push_back(geo::exp(geo::direction(center, angle) * g.circumradius));
  }
  for (int k = 0; k < n; ++k) {
    poly.edges.push_back(edge_half_space(poly.vertices[k], poly.vertices[(k + 1) % n], center));
  }
  return DomainSpec(std::move(poly));
}

DomainSpec DomainSpec::intersection(std::vector<DomainSpec> parts) {
  if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "intersection needs at least one part");
  return DomainSpec(Intersection{std::move(parts)});
}

std::string_view DomainSpec::kind() const {
  static constexpr std::string_view kNames[] = {"ball", "half_space", "horoball", "triangle", "polygon", "intersection"};
  return kNames[v_.index()];
}

double margin(const DomainSpec& d, const Point& p) {
  struct Visitor {
    const Point& p;
    double operator()(const Ball& b) const { return b.radius - geo::dist(b.center, p); }
    double operator()(const HalfSpace& h) const { return half_space_margin(h, p); }
    double operator()(const Horoball& h) const { return -geo::busemann(h.ray, p); }
    double operator()(const EquilateralTriangle& t) const { return edges_margin(t.edges, p); }
    double operator()(const RegularPolygon& poly) const { return edges_margin(poly.edges, p); }
    double operator()(const Intersection& in) const {
      double m = kInf;
      for (const auto& part : in.parts) m = std::min(m, margin(part, p));
      return m;
    }
  };
  return std::visit(Visitor{p}, d.variant());
}

bool contains(const DomainSpec& d, const Point& p) { return margin(d, p) > kBoundaryTolerance; }

TriangleGeometry triangle_geometry(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorCode::kInvalidArgument, "triangle side must be positive");
  TriangleGeometry g;
  g.L = L;
  // cosh^2 d = (4 cosh L + 2) / (3 cosh L + 3) = 1 + tanh^2(L/2) / 3
  const double foot = std::asinh(std::tanh(0.5 * L) / std::sqrt(3.0));
  g.dist_center_to_edge_foot = foot;
  // cosh d(p*, a) = cosh(L/2) cosh(d(p*, q))
  if (L < 600.0) {
    const double sq = std::sinh(0.25 * L);
    const double sf = std::sinh(0.5 * foot);
    g.dist_center_to_vertex = numeric::arcosh1p(2.0 * sq * sq * std::cosh(foot) + 2.0 * sf * sf);
  } else {
    g.dist_center_to_vertex = numeric::acosh_from_log(numeric::log_cosh(0.5 * L) + numeric::log_cosh(foot));
  }
  return g;
}

PolygonGeometry polygon_geometry(int n, double L) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "polygon needs n >= 3");
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorCode::kInvalidArgument, "polygon side must be positive");
  const double a = numeric::kPi / n;
  PolygonGeometry g;
  g.n = n;
  g.L = L;
  g.circumradius = numeric::asinh_from_log(numeric::log_sinh(0.5 * L) - std::log(std::sin(a)));
  g.inradius = std::asinh(std::tanh(0.5 * L) / std::tan(a));
  return g;
}

HoroballPair horoball_pair(const Point& p_star, const Tangent& dir, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "horoball pair needs r > 0");
  const geo::Geodesic axis(Tangent(p_star, dir.vec()));
  HoroballPair hp;
  hp.rays[0] = geo::GeodesicRay(geo::Geodesic(axis.velocity(-r)));
  hp.rays[1] = geo::GeodesicRay(geo::Geodesic(-axis.velocity(r)));
  hp.domain = DomainSpec::intersection({DomainSpec::horoball(hp.rays[0]), DomainSpec::horoball(hp.rays[1])});
  hp.inner_radius = r;
  hp.outer_radius = numeric::arcosh_exp(r);
  return hp;
}

double horoball_pair_outer_disk_radius(double r) { return std::tanh(0.5 * numeric::arcosh_exp(r)); }

SupportingHoroball supporting_horoball(const DomainSpec& d, const Point& p_star) {
  std::vector<const DomainSpec*> parts;
  flatten(d, parts);
  std::size_t best = parts.size();
  double best_distance = kInf;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    double m = 0.0;
    if (const auto* b = parts[i]->get_if<Ball>()) {
      m = b->radius - geo::dist(b->center, p_star);
    } else if (const auto* h = parts[i]->get_if<Horoball>()) {
      m = -geo::busemann(h->ray, p_star);
    } else if (parts[i]->get_if<HalfSpace>()) {
      throw Error(ErrorCode::kUnboundedDomain, "half-spaces have no supporting horoball");
    } else {
      throw Error(ErrorCode::kInvalidArgument, "supporting horoball needs balls and horoballs");
    }
    if (!(m > 0.0)) throw Error(ErrorCode::kInvalidArgument, "p_star is not inside the domain");
    if (m < best_distance) {
      best_distance = m;
      best = i;
    }
  }
  if (best == parts.size()) throw Error(ErrorCode::kUnboundedDomain, "no boundary constituent");

  SupportingHoroball out;
  out.distance = best_distance;
  out.constituent = best;
  if (const auto* b = parts[best]->get_if<Ball>()) {
    const Tangent away = geo::dist(b->center, p_star) > 0.0 ? geo::log(b->center, p_star).normalized()
                                                            : geo::direction(b->center, 0.0);
    out.q = geo::exp(away * b->radius);
    out.horoball = DomainSpec::horoball(geo::GeodesicRay(geo::Geodesic(geo::log(out.q, b->center))));
  } else {
    const auto& h = *parts[best]->get_if<Horoball>();
    out.q = geo::exp(-geo::toward_ideal(h.ray, p_star) * best_distance);
    out.horoball = *parts[best];
  }
  return out;
}

Chord chord(const DomainSpec& d, const geo::Geodesic& g, double cap) {
  double t0 = 0.0;
  if (!(margin(d, g.at(0.0)) > 0.0)) {
    // Coarse scan for an interior parameter.
    double best = -kInf;
    constexpr int kScan = 2000;
    const double span = std::min(cap, 50.0);
    for (int i = 0; i <= kScan; ++i) {
      const double t = -span + 2.0 * span * i / kScan;
      const double m = margin(d, g.at(t));
      if (m > best) {
        best = m;
        t0 = t;
      }
    }
    if (!(best > 0.0)) throw Error(ErrorCode::kGeodesicMissesDomain, "geodesic misses the domain");
  }

  auto find_end = [&](double sign) {
    double inside = t0;
    double step = 0.125;
    double outside = kInf;
    while (std::fabs(inside - t0) <= cap) {
      const double t = t0 + sign * step;
      if (margin(d, g.at(t)) > 0.0) {
        inside = t;
        step *= 2.0;
      } else {
        outside = t;
        break;
      }
    }
    if (outside == kInf) return sign * kInf;
    while (std::fabs(outside - inside) > 1e-12) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      (margin(d, g.at(mid)) > 0.0 ? inside : outside) = mid;
    }
    return inside;
  };
  return Chord{find_end(-1.0), find_end(1.0)};
}

Point deepest_point(const DomainSpec& d) {
  struct Natural {
    std::optional<Point> operator()(const Ball& b) const { return b.center; }
    std::optional<Point> operator()(const HalfSpace& h) const { return geo::exp(-h.v); }
    std::optional<Point> operator()(const Horoball& h) const { return h.ray.geodesic().at(1.0); }
    std::optional<Point> operator()(const EquilateralTriangle& t) const {
      return klein_centroid({t.vertices.begin(), t.vertices.end()});
    }
    std::optional<Point> operator()(const RegularPolygon& p) const { return p.center; }
    std::optional<Point> operator()(const Intersection&) const { return std::nullopt; }
  };
  if (auto p = std::visit(Natural{}, d.variant())) return *p;

  // Compass search on the minimum margin, started from the best part center.
  const auto& parts = d.get_if<Intersection>()->parts;
  Point p;
  double m = margin(d, p);
  for (const auto& part : parts) {
    const Point c = deepest_point(part);
    const double mc = margin(d, c);
    if (mc > m) {
      p = c;
      m = mc;
    }
  }
  constexpr double kDeepEnough = 10.0;
  double step = 0.5;
  for (int iter = 0; iter < 4000 && step > 1e-10 && m < kDeepEnough; ++iter) {
    Point best = p;
    double best_m = m;
    for (int k = 0; k < 8; ++k) {
      const Point c = geo::exp(geo::direction(p, numeric::kPi * k / 4.0) * step);
      const double mc = margin(d, c);
      if (mc > best_m) {
        best = c;
        best_m = mc;
      }
    }
    if (best_m > m) {
      p = best;
      m = best_m;
    } else {
      step *= 0.5;
    }
  }
  return p;
}

SamplingBall sampling_ball(const DomainSpec& d, double unbounded_radius) {
  if (const auto* b = d.get_if<Ball>()) return {b->center, b->radius, true};
  if (const auto* poly = d.get_if<RegularPolygon>()) {
    return {poly->center, polygon_geometry(poly->n, poly->side).circumradius, true};
  }
  if (const auto* t = d.get_if<EquilateralTriangle>()) {
    return {deepest_point(d), polygon_geometry(3, t->side).circumradius * (1.0 + 1e-9), true};
  }
  const Point c = deepest_point(d);
  // A horoball's ideal point is reached only along one exact direction, which
  // the uniform probes below miss. Far along it the Busemann function loses
  // all precision (-B(p, l) ~ e^-t from terms ~ e^t), so reaching depth 12
  // counts as unbounded.
  constexpr double kIdealProbe = 12.0;
  std::vector<const DomainSpec*> parts;
  flatten(d, parts);
  for (const DomainSpec* part : parts) {
    const auto* h = part->get_if<Horoball>();
    if (h && contains(d, geo::exp(geo::toward_ideal(h->ray, c) * kIdealProbe))) return {c, unbounded_radius, false};
  }
  double radius = 0.0;
  constexpr int kDirections = 64;
  for (int k = 0; k < kDirections; ++k) {
    const geo::Geodesic g(geo::direction(c, 2.0 * numeric::kPi * k / kDirections));
    const double hi = chord(d, g).hi;
    if (!std::isfinite(hi)) return {c, unbounded_radius, false};
    radius = std::max(radius, hi);
  }
  // Edges between the probed directions can bulge slightly past the sampled
  // exits; pad so the ball covers D.
  return {c, radius * 1.05, true};
}

Point sample_point(const DomainSpec& d, const SamplingBall& ball, numeric::Rng& rng) {
  const double cosh_excess = std::cosh(std::min(ball.radius, 300.0)) - 1.0;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double rho = numeric::arcosh1p(rng.uniform() * cosh_excess);
    const double angle = 2.0 * numeric::kPi * rng.uniform();
    const Point p = geo::exp(geo::direction(ball.center, angle) * rho);
    if (contains(d, p)) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "rejection sampling found no interior point");
}

Point boundary_point(const DomainSpec& d, const Point& from, double angle) {
  const geo::Geodesic g(geo::direction(from, angle));
  const Chord c = chord(d, g);
  if (!std::isfinite(c.hi)) throw Error(ErrorCode::kUnboundedDomain, "direction never leaves the domain");
  return g.at(c.hi);
}

}  // namespace hypbarrier::dom
