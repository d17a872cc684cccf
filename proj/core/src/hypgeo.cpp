#include "hypbarrier/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hypbarrier/error.hpp"
#include "hypbarrier/numeric.hpp"

namespace hypbarrier::geo {

namespace {

constexpr double kDriftTolerance = 1e-9;

// cosh d(p, q) together with the Minkowski chord length m = |q - p|_B.
// For nearby points 1 + m^2/2 is exact where -B(p, q) cancels; for distant
// points -B(p, q) is used directly (the chord form would cancel instead).
struct PairTerms {
  double cosh_d;
  double chord;   // |q - p|_B, only meaningful when near
  bool near;
  double clamped_by;
};

PairTerms pair_terms(const Point& p, const Point& q) {
  // Far pairs: -B(p, q) is accurate, while the chord below cancels once the
  // coordinates dwarf the separation.
  const double c = -minkowski(p.coords(), q.coords());
  if (c > 3.0) return {c, std::sqrt(2.0 * c - 2.0), false, 0.0};
  const Vec3 delta = q.coords() - p.coords();
  const double scale = delta.max_abs();
  if (scale == 0.0) return {1.0, 0.0, true, 0.0};
  const Vec3 unit = delta / scale;
  const double m2_scaled = minkowski(unit, unit);
  const double clamped = m2_scaled < 0.0 ? -m2_scaled * scale * scale : 0.0;
  const double chord = scale * std::sqrt(std::max(m2_scaled, 0.0));
  return {1.0 + 0.5 * chord * chord, chord, true, clamped};
}

double distance_from_terms(const PairTerms& t) {
  if (t.near) return 2.0 * std::asinh(0.5 * t.chord);
  return std::acosh(t.cosh_d);
}

}  // namespace

double hyperboloid_drift(const Vec3& x) {
  const double expected = std::hypot(1.0, std::hypot(x.x1, x.x2));
  return std::fabs(x.x0 - expected) / std::max(std::fabs(x.x0), 1.0);
}

namespace {

double scaled_drift(const Vec3& x, double scale) {
  const double expected = std::hypot(1.0, std::hypot(x.x1, x.x2));
  return std::fabs(x.x0 - expected) / std::max({std::fabs(x.x0), scale, 1.0});
}

}  // namespace

Point Point::from_coords(const Vec3& x, double scale) {
  if (!(x.x0 > 0.0) || !std::isfinite(x.x0) || !std::isfinite(x.x1) || !std::isfinite(x.x2)) {
    throw Error(ErrorCode::kNumericalDrift, "point is not on the upper hyperboloid sheet");
  }
  const double drift = scaled_drift(x, scale);
  if (drift > kDriftTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "hyperboloid drift %.3g exceeds 1e-9", drift);
    throw Error(ErrorCode::kNumericalDrift, buf);
  }
  return project(x);
}

Point Point::project(const Vec3& x) {
  return Point(Vec3{std::hypot(1.0, std::hypot(x.x1, x.x2)), x.x1, x.x2});
}

Point Point::from_spatial(double x1, double x2) { return project(Vec3{0.0, x1, x2}); }

Tangent::Tangent(const Point& base, const Vec3& vec)
    : base_(base), vec_(vec + base.coords() * minkowski(base.coords(), vec)) {}

double Tangent::norm() const { return std::sqrt(std::max(minkowski(vec_, vec_), 0.0)); }

Tangent Tangent::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero tangent");
  return Tangent(base_, vec_ / n, Unchecked{});
}

Tangent Tangent::operator+(const Tangent& o) const { return Tangent(base_, vec_ + o.vec_, Unchecked{}); }
Tangent Tangent::operator-(const Tangent& o) const { return Tangent(base_, vec_ - o.vec_, Unchecked{}); }

double inner(const Tangent& a, const Tangent& b) { return minkowski(a.vec(), b.vec()); }

Geodesic::Geodesic(const Tangent& dir) : dir_(dir.normalized()) {}

Point Geodesic::at(double t) const {
  const Vec3 x = base().coords() * numeric::cosh_capped(t) + dir_.vec() * numeric::sinh_capped(t);
  return Point::project(x);
}

Tangent Geodesic::velocity(double t) const {
  const Point p = at(t);
  const Vec3 v = base().coords() * numeric::sinh_capped(t) + dir_.vec() * numeric::cosh_capped(t);
  return Tangent(p, v).normalized();
}

GeodesicRay::GeodesicRay(const Geodesic& g) : g_(g) {
  const Vec3 l = g.base().coords() + g.dir().vec();
  ideal_ = l / (-minkowski(g.base().coords(), l));
}

Measured dist_checked(const Point& p, const Point& q) {
  const PairTerms t = pair_terms(p, q);
  return {distance_from_terms(t), t.clamped_by};
}

double dist(const Point& p, const Point& q) { return dist_checked(p, q).value; }

Point exp(const Tangent& v) {
  const double n = v.norm();
  if (n == 0.0) return v.base();
  const double ch = numeric::cosh_capped(n), sh = numeric::sinh_capped(n) / n;
  const Vec3 x = v.base().coords() * ch + v.vec() * sh;
  return Point::from_coords(x, v.base().x0() * ch + v.vec().max_abs() * sh);
}

Tangent log(const Point& p, const Point& q) {
  const PairTerms t = pair_terms(p, q);
  if (t.near) {
    if (t.chord == 0.0) return Tangent::zero(p);
    const double d = 2.0 * std::asinh(0.5 * t.chord);
    // q + B(p,q) p with B(p,q) + 1 = -m^2/2
    const Vec3 u = (q.coords() - p.coords()) - p.coords() * (0.5 * t.chord * t.chord);
    return Tangent(p, u * (d / std::sinh(d)));
  }
  const double d = std::acosh(t.cosh_d);
  const Vec3 u = q.coords() - p.coords() * t.cosh_d;
  const double u_norm = std::sqrt(t.cosh_d - 1.0) * std::sqrt(t.cosh_d + 1.0);
  return Tangent(p, u * (d / u_norm));
}

Tangent transport(const Tangent& v, const Point& q) {
  const PairTerms t = pair_terms(v.base(), q);
  const double coeff = minkowski(q.coords(), v.vec()) / (1.0 + t.cosh_d);
  return Tangent(q, v.vec() + (v.base().coords() + q.coords()) * coeff);
}

Point midpoint(const Point& p, const Point& q) {
  const PairTerms t = pair_terms(p, q);
  const Vec3 s = p.coords() + q.coords();
  return Point::project(s / std::sqrt(2.0 + 2.0 * t.cosh_d));
}

std::array<Tangent, 2> frame(const Point& p) {
  const Vec3& c = p.coords();
  const double k = 1.0 / (c.x0 + 1.0);
  const Vec3 sum = Vec3{1.0, 0.0, 0.0} + c;
  const Vec3 e1 = Vec3{0.0, 1.0, 0.0} + sum * (c.x1 * k);
  const Vec3 e2 = Vec3{0.0, 0.0, 1.0} + sum * (c.x2 * k);
  return {Tangent(p, e1), Tangent(p, e2)};
}

Tangent direction(const Point& p, double angle) {
  const auto f = frame(p);
  return Tangent(p, f[0].vec() * std::cos(angle) + f[1].vec() * std::sin(angle)).normalized();
}

double direction_angle(const Tangent& v) {
  const auto f = frame(v.base());
  return std::atan2(inner(v, f[1]), inner(v, f[0]));
}

double angle_at(const Point& p, const Point& q, const Point& r) {
  const auto f = frame(p);
  const Tangent u = log(p, q);
  const Tangent w = log(p, r);
  const double ua = inner(u, f[0]), ub = inner(u, f[1]);
  const double wa = inner(w, f[0]), wb = inner(w, f[1]);
  return std::fabs(std::atan2(ua * wb - ub * wa, ua * wa + ub * wb));
}

double law_of_cosines_side(double a, double b, double angle) {
  // cosh c - 1 = 2 sinh^2((a-b)/2) + 2 sinh a sinh b sin^2(angle/2)
  const double s_diff = std::sinh(0.5 * (a - b));
  const double s_half = std::sin(0.5 * angle);
  const double excess = 2.0 * s_diff * s_diff +
                        2.0 * numeric::sinh_capped(a) * numeric::sinh_capped(b) * s_half * s_half;
  return numeric::arcosh1p(excess);
}

// --- Isometry -------------------------------------------------------------

namespace {

using Mat3 = std::array<double, 9>;

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[3 * i + k] * b[3 * k + j];
      r[3 * i + j] = s;
    }
  return r;
}

Vec3 multiply(const Mat3& m, const Vec3& x) {
  return {m[0] * x.x0 + m[1] * x.x1 + m[2] * x.x2, m[3] * x.x0 + m[4] * x.x1 + m[5] * x.x2,
          m[6] * x.x0 + m[7] * x.x1 + m[8] * x.x2};
}

Mat3 columns(const Vec3& a, const Vec3& b, const Vec3& c) {
  return {a.x0, b.x0, c.x0, a.x1, b.x1, c.x1, a.x2, b.x2, c.x2};
}

}  // namespace

Isometry::Isometry() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Isometry Isometry::from_matrix(const std::array<double, 9>& m) { return Isometry(m); }

Vec3 Isometry::apply(const Vec3& x) const { return multiply(m_, x); }

Point Isometry::apply(const Point& p) const {
  // m_[0] = cosh of the translation length bounds every entry's magnitude.
  return Point::from_coords(multiply(m_, p.coords()), std::fabs(m_[0]) * p.x0());
}

Tangent Isometry::apply(const Tangent& v) const { return Tangent(apply(v.base()), multiply(m_, v.vec())); }

Geodesic Isometry::apply(const Geodesic& g) const { return Geodesic(apply(g.dir())); }

Isometry Isometry::compose(const Isometry& inner_map) const { return Isometry(multiply(m_, inner_map.m_)); }

Isometry Isometry::inverse() const {
  // Lorentz matrices satisfy M^{-1} = J M^T J with J = diag(-1, 1, 1).
  const double sign[3] = {-1.0, 1.0, 1.0};
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[3 * i + j] = sign[i] * m_[3 * j + i] * sign[j];
  return Isometry(r);
}

Isometry boost_to(const Point& p) {
  const auto f = frame(p);
  return Isometry::from_matrix(columns(p.coords(), f[0].vec(), f[1].vec()));
}

Isometry rotation(const Point& center, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const Isometry spin = Isometry::from_matrix({1, 0, 0, 0, c, -s, 0, s, c});
  const Isometry to = boost_to(center);
  return to.compose(spin).compose(to.inverse());
}

Isometry reflection(const Geodesic& axis) {
  Vec3 n = lorentz_cross(axis.base().coords(), axis.dir().vec());
  n = n / std::sqrt(minkowski(n, n));
  // x -> x - 2 B(x, n) n
  const Vec3 jn{-n.x0, n.x1, n.x2};
  const double nn[3] = {n.x0, n.x1, n.x2};
  const double jj[3] = {jn.x0, jn.x1, jn.x2};
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[3 * i + j] = (i == j ? 1.0 : 0.0) - 2.0 * nn[i] * jj[j];
  return Isometry::from_matrix(m);
}

Point reflect(const Geodesic& axis, const Point& p) { return reflection(axis).apply(p); }

Point rotate(const Point& center, double angle, const Point& p) { return rotation(center, angle).apply(p); }

// --- Busemann functions and horocycles -------------------------------------

double busemann(const GeodesicRay& ray, const Point& p) {
  return std::log(-minkowski(p.coords(), ray.ideal()));
}

Tangent toward_ideal(const GeodesicRay& ray, const Point& p) {
  const Vec3& l = ray.ideal();
  return Tangent(p, l).normalized();
}

Point horocycle_point(const GeodesicRay& ray, double s) {
  const Vec3& b = ray.geodesic().base().coords();
  Vec3 w = lorentz_cross(b, ray.geodesic().dir().vec());
  w = w / std::sqrt(minkowski(w, w));
  return Point::project(b + w * s + ray.ideal() * (0.5 * s * s));
}

// --- Poincare disk ---------------------------------------------------------

DiskPoint to_disk(const Point& p) {
  const double k = 1.0 / (1.0 + p.x0());
  return {p.x1() * k, p.x2() * k};
}

Point from_disk(const DiskPoint& y) {
  const double r2 = y.x * y.x + y.y * y.y;
  if (!(r2 < 1.0)) throw Error(ErrorCode::kOutsideDisk, "disk point must satisfy |y| < 1");
  const double k = 2.0 / (1.0 - r2);
  return Point::project(Vec3{0.0, y.x * k, y.y * k});
}

DiskPoint ideal_to_disk(const Vec3& lightlike) { return {lightlike.x1 / lightlike.x0, lightlike.x2 / lightlike.x0}; }

}  // namespace hypbarrier::geo
