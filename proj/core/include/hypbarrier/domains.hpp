#pragma once

// Geodesically convex domains of H^2 and their exact trigonometry.

#include <array>
#include <cstddef>
#include <limits>
#include <string_view>
#include <variant>
#include <vector>

#include "hypbarrier/hypgeo.hpp"
#include "hypbarrier/numeric.hpp"

namespace hypbarrier::dom {

/// contains() requires margin > kBoundaryTolerance so boundary points (for
/// example the base of a horoball's ray) are reported as outside.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Ball{c, r} = {p : d(c, p) < r}.
struct Ball {
  geo::Point center;
  double radius = 1.0;
};

/// {p : <log_q(p), v> < 0}; v is stored normalized. The boundary is the
/// geodesic through q orthogonal to v, and v points out of the domain.
struct HalfSpace {
  geo::Point q;
  geo::Tangent v;
};

/// Open sublevel set {b_ray < 0}. The ray's base lies on the boundary and the
/// ray itself runs into the interior.
struct Horoball {
  geo::GeodesicRay ray;
};

struct EquilateralTriangle {
  std::array<geo::Point, 3> vertices;
  std::array<HalfSpace, 3> edges;
  double side = 0.0;
};

struct RegularPolygon {
  geo::Point center;
  int n = 3;
  double side = 0.0;
  double orientation = 0.0;
  std::vector<geo::Point> vertices;
  std::vector<HalfSpace> edges;
};

class DomainSpec;

struct Intersection {
  std::vector<DomainSpec> parts;
};

class DomainSpec {
 public:
  using Variant = std::variant<Ball, HalfSpace, Horoball, EquilateralTriangle, RegularPolygon, Intersection>;

  /// Unit ball at the origin.
  DomainSpec() : v_(Ball{}) {}

  static DomainSpec ball(const geo::Point& center, double radius);
  static DomainSpec half_space(const geo::Point& q, const geo::Tangent& v);
  static DomainSpec horoball(const geo::GeodesicRay& ray);
  /// Vertices must be pairwise equidistant within 1e-9 (relative to the side).
  static DomainSpec triangle(const std::array<geo::Point, 3>& vertices);
  /// Equilateral triangle with the given centroid; the first vertex lies in
  /// direction `orientation` and the others follow by rotations of 2pi/3.
  static DomainSpec equilateral_triangle(const geo::Point& center, double side, double orientation = 0.0);
  /// Vertex k lies in direction orientation + 2 pi k / n at distance R_n.
  static DomainSpec regular_polygon(const geo::Point& center, int n, double side, double orientation = 0.0);
  static DomainSpec intersection(std::vector<DomainSpec> parts);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&v_); }

  /// Tag used in JSON: ball, half_space, horoball, triangle, polygon, intersection.
  std::string_view kind() const;

 private:
  explicit DomainSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Signed margin, positive inside. Per variant: Ball r - d(c,p); HalfSpace
/// the signed distance to the boundary line; Horoball -b(p); Triangle,
/// Polygon and Intersection the minimum over their constituents. For the
/// first two families and the polygons this is exactly the distance to the
/// boundary; for horoballs it is the Busemann deficit.
double margin(const DomainSpec& d, const geo::Point& p);
bool contains(const DomainSpec& d, const geo::Point& p);

struct TriangleGeometry {
  double L = 0.0;
  double dist_center_to_edge_foot = 0.0;  // d(p*, q), q the midpoint of a side
  double dist_center_to_vertex = 0.0;     // d(p*, a)
};

/// Throws InvalidArgument for L <= 0.
TriangleGeometry triangle_geometry(double L);

struct PolygonGeometry {
  int n = 3;
  double L = 0.0;
  double circumradius = 0.0;  // R_n
  double inradius = 0.0;      // r_n
};

/// Throws InvalidArgument for n < 3 or L <= 0.
PolygonGeometry polygon_geometry(int n, double L);

struct HoroballPair {
  DomainSpec domain;  // intersection of the two opposed horoballs
  std::array<geo::GeodesicRay, 2> rays;
  double inner_radius = 0.0;
  double outer_radius = 0.0;  // arcosh(e^r)
};

/// Two horoballs whose boundaries pass through exp(p*, +-r dir), both
/// containing p*. Throws InvalidArgument for r <= 0.
HoroballPair horoball_pair(const geo::Point& p_star, const geo::Tangent& dir, double r);

/// tanh(outer/2) for the horoball-pair outer ball, equal to sqrt(tanh(r/2)).
double horoball_pair_outer_disk_radius(double r);

struct SupportingHoroball {
  geo::Point q;         // nearest boundary point of d to p*
  DomainSpec horoball;  // contains d, q on its boundary
  double distance = 0.0;
  std::size_t constituent = 0;  // index in the flattened constituent list
};

/// d must be a ball, a horoball, or an intersection of those, containing p*.
/// Ties between constituents go to the first one. For a ball the returned
/// horoball is the one tangent at q whose ray points from q through the
/// ball's center. Throws InvalidArgument or UnboundedDomain.
SupportingHoroball supporting_horoball(const DomainSpec& d, const geo::Point& p_star);

/// Default search cap beyond which a geodesic is treated as never leaving.
inline constexpr double kChordCap = 200.0;

/// {t : g(t) in D} = (lo, hi) for convex D, ends located by bisection on the
/// margin to 1e-12. Infinite ends are returned as +-infinity. Throws
/// GeodesicMissesDomain if no sampled parameter lies inside.
struct Chord {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};
Chord chord(const DomainSpec& d, const geo::Geodesic& g, double cap = kChordCap);

/// Approximate maximizer of the margin (a point well inside d).
geo::Point deepest_point(const DomainSpec& d);

/// Region used for sampling interior points: D intersected with the ball.
/// For bounded domains the ball contains D; otherwise radius is the
/// requested cap.
struct SamplingBall {
  geo::Point center;
  double radius = 0.0;
  bool bounded = true;
};
SamplingBall sampling_ball(const DomainSpec& d, double unbounded_radius);

/// Rejection sample of D within the sampling ball (area-uniform in the ball).
geo::Point sample_point(const DomainSpec& d, const SamplingBall& ball, numeric::Rng& rng);

/// Point where the geodesic from `from` in direction `angle` leaves d.
/// Throws UnboundedDomain if it does not leave within kChordCap.
geo::Point boundary_point(const DomainSpec& d, const geo::Point& from, double angle);

}  // namespace hypbarrier::dom
