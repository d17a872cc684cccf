#pragma once

// Hyperbolic plane H^2 in the hyperboloid (Minkowski) model.
//
// Points live on the upper sheet {x : -x0^2 + x1^2 + x2^2 = -1, x0 > 0}; the
// tangent space at p is the Minkowski-orthogonal complement of p. All
// functions are pure and thread-safe. The Poincare disk appears only at the
// I/O boundary (to_disk / from_disk).

#include <array>
#include <cmath>
#include <vector>

namespace hypbarrier::geo {

struct Vec3 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x0 + o.x0, x1 + o.x1, x2 + o.x2}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x0 - o.x0, x1 - o.x1, x2 - o.x2}; }
  constexpr Vec3 operator-() const { return {-x0, -x1, -x2}; }
  constexpr Vec3 operator*(double s) const { return {x0 * s, x1 * s, x2 * s}; }
  constexpr Vec3 operator/(double s) const { return {x0 / s, x1 / s, x2 / s}; }
  friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
  constexpr bool operator==(const Vec3&) const = default;

  double max_abs() const { return std::fmax(std::fabs(x0), std::fmax(std::fabs(x1), std::fabs(x2))); }
};

/// Minkowski bilinear form B(a, b) = -a0 b0 + a1 b1 + a2 b2.
constexpr double minkowski(const Vec3& a, const Vec3& b) {
  return -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2;
}

/// Vector Minkowski-orthogonal to both a and b (J applied to the Euclidean cross product).
constexpr Vec3 lorentz_cross(const Vec3& a, const Vec3& b) {
  return {-(a.x1 * b.x2 - a.x2 * b.x1), a.x2 * b.x0 - a.x0 * b.x2, a.x0 * b.x1 - a.x1 * b.x0};
}

/// Relative distance of x from the hyperboloid: |x0 - hypot(1, |x_s|)| / x0.
double hyperboloid_drift(const Vec3& x);

class Point {
 public:
  /// The origin (1, 0, 0).
  Point() = default;

  /// Projects onto the upper sheet by recomputing x0 from the spatial part.
  /// Throws NumericalDrift if the input was off the sheet by more than 1e-9
  /// relative to max(x0, scale), or has x0 <= 0. Pass as `scale` the size of
  /// the terms x was summed from, so rounding in cancelling sums is allowed.
  static Point from_coords(const Vec3& x, double scale = 1.0);
  /// Projection without the drift check; use for intentionally off-sheet input.
  static Point project(const Vec3& x);
  static Point from_spatial(double x1, double x2);

  const Vec3& coords() const { return c_; }
  double x0() const { return c_.x0; }
  double x1() const { return c_.x1; }
  double x2() const { return c_.x2; }

  bool operator==(const Point&) const = default;

 private:
  explicit Point(const Vec3& c) : c_(c) {}
  Vec3 c_{1.0, 0.0, 0.0};
};

class Tangent {
 public:
  Tangent() = default;
  /// Projects vec onto T_base H^2.
  Tangent(const Point& base, const Vec3& vec);
  static Tangent zero(const Point& base) { return Tangent(base, Vec3{}); }

  const Point& base() const { return base_; }
  const Vec3& vec() const { return vec_; }

  double norm() const;
  Tangent normalized() const;

  Tangent operator+(const Tangent& o) const;
  Tangent operator-(const Tangent& o) const;
  Tangent operator*(double s) const { return Tangent(base_, vec_ * s, Unchecked{}); }
  Tangent operator-() const { return Tangent(base_, -vec_, Unchecked{}); }

 private:
  struct Unchecked {};
  Tangent(const Point& base, const Vec3& vec, Unchecked) : base_(base), vec_(vec) {}
  Point base_;
  Vec3 vec_{};
};

/// Riemannian inner product of two tangents at the same base point.
double inner(const Tangent& a, const Tangent& b);

/// Unit-speed geodesic t -> cosh(t) base + sinh(t) dir.
class Geodesic {
 public:
  Geodesic() : dir_(Point(), Vec3{0.0, 1.0, 0.0}) {}
  /// dir is normalized; throws InvalidArgument for a zero direction.
  explicit Geodesic(const Tangent& dir);

  const Point& base() const { return dir_.base(); }
  const Tangent& dir() const { return dir_; }

  Point at(double t) const;
  /// Unit velocity at parameter t (tangent at at(t)).
  Tangent velocity(double t) const;

 private:
  Tangent dir_;
};

/// Ray on [0, inf) with its ideal endpoint: lightlike `ideal`, normalized so
/// that B(base, ideal) = -1 (the Busemann function vanishes at the base).
class GeodesicRay {
 public:
  GeodesicRay() : GeodesicRay(Geodesic()) {}
  explicit GeodesicRay(const Geodesic& g);

  const Geodesic& geodesic() const { return g_; }
  const Vec3& ideal() const { return ideal_; }

 private:
  Geodesic g_;
  Vec3 ideal_;
};

struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
  double norm() const { return std::hypot(x, y); }
};

struct Measured {
  double value;
  /// How far the chord form went negative before being clamped to zero.
  double clamped_by;
};

double dist(const Point& p, const Point& q);
Measured dist_checked(const Point& p, const Point& q);

Point exp(const Tangent& v);
Tangent log(const Point& p, const Point& q);

/// Parallel transport of v along the geodesic segment from v.base() to q.
Tangent transport(const Tangent& v, const Point& q);

Point midpoint(const Point& p, const Point& q);

/// Orthonormal positively oriented frame at p: parallel transport of the
/// origin's (e1, e2) along the segment origin -> p.
std::array<Tangent, 2> frame(const Point& p);

/// Unit tangent at p making `angle` with frame(p)[0].
Tangent direction(const Point& p, double angle);

/// Angle of unit tangent v relative to frame(v.base()).
double direction_angle(const Tangent& v);

/// Interior angle at vertex p of the geodesic triangle (p, q, r).
double angle_at(const Point& p, const Point& q, const Point& r);

/// Third side from two sides and the included angle (hyperbolic law of cosines).
double law_of_cosines_side(double a, double b, double angle);

/// Isometry of H^2 represented by a 3x3 Lorentz matrix (acts on points and
/// tangent vectors alike).
class Isometry {
 public:
  Isometry();  // identity
  static Isometry from_matrix(const std::array<double, 9>& m);

  Point apply(const Point& p) const;
  Tangent apply(const Tangent& v) const;
  Geodesic apply(const Geodesic& g) const;
  Vec3 apply(const Vec3& x) const;

  Isometry compose(const Isometry& inner) const;  // this ∘ inner
  Isometry inverse() const;

  const std::array<double, 9>& matrix() const { return m_; }

 private:
  explicit Isometry(const std::array<double, 9>& m) : m_(m) {}
  std::array<double, 9> m_;
};

/// Reflection fixing the geodesic line through axis.
Isometry reflection(const Geodesic& axis);
/// Rotation about center by angle (counterclockwise in frame(center)).
Isometry rotation(const Point& center, double angle);
/// Orientation-preserving isometry taking the origin to p with frame(origin) -> frame(p).
Isometry boost_to(const Point& p);

Point reflect(const Geodesic& axis, const Point& p);
Point rotate(const Point& center, double angle, const Point& p);

/// b(p) = lim_{t -> inf} d(ray(t), p) - t, in closed form log(-B(p, ideal)).
double busemann(const GeodesicRay& ray, const Point& p);

/// Unit tangent at p pointing at the ray's ideal endpoint (gradient of -b).
Tangent toward_ideal(const GeodesicRay& ray, const Point& p);

/// Point of the horocycle {b = 0} through ray.base() at signed horocyclic
/// arclength s (s = 0 is the base).
Point horocycle_point(const GeodesicRay& ray, double s);

DiskPoint to_disk(const Point& p);
/// Throws OutsideDisk for |y| >= 1.
Point from_disk(const DiskPoint& y);
/// Ideal endpoint of a lightlike vector on the unit circle.
DiskPoint ideal_to_disk(const Vec3& lightlike);

}  // namespace hypbarrier::geo
