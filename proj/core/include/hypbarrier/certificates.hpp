#pragma once

// Closed-form lower bounds on the barrier parameter theta, with the
// geometric intermediates behind each bound exposed for cross-checking.

#include <optional>
#include <string>
#include <vector>

#include "hypbarrier/domains.hpp"

namespace hypbarrier::cert {

enum class Theorem {
  kTriangle,
  kBall,
  kBallLike,
  kHoroconvex,
  kRegularPolygonOdd,
  kRegularPolygonDiv4,
  kRegularPolygonEven,
  kRegularPolygonClosedForm,
  kHalfSpace,  // no theta-barrier exists
  kHoroball,   // no theta-barrier exists
};

const char* to_string(Theorem t);
std::optional<Theorem> parse_theorem(const std::string& s);

struct Quantity {
  std::string name;
  double value = 0.0;
};

/// A bound from one theorem. `bound` = max(0, raw_value); for the
/// non-existence results no_barrier is set and bound is +infinity.
struct Bound {
  Theorem theorem = Theorem::kTriangle;
  double bound = 0.0;
  double raw_value = 0.0;
};

struct Certificate {
  Theorem theorem = Theorem::kTriangle;  // theorem attaining the reported bound
  std::vector<Quantity> inputs;
  std::vector<Quantity> intermediates;
  double bound = 0.0;
  double raw_value = 0.0;
  bool no_barrier = false;
  /// Every theorem evaluated for these inputs, in evaluation order; `bound`
  /// is their maximum (first wins ties).
  std::vector<Bound> applicable;

  std::optional<double> input(const std::string& name) const;
  std::optional<double> intermediate(const std::string& name) const;
};

/// max(0, L/12 - 1/6). Throws InvalidArgument for L <= 0.
Certificate certify_triangle(double L);

/// max(0, r^{3/2} / (2^6 R) - 1/2) for B(p*, r) in D in B(p*, R) with
/// analytic center p*. For r >= 2 reports d(p, q+) (always <= 2).
/// Throws InvalidArgument unless 0 < r <= R.
Certificate certify_ball_like(double r, double R);

/// max(0, sqrt(R)/128 - 1/4); the horoconvex bound is also evaluated.
Certificate certify_ball(double R);

/// max(0, sqrt(r)/512 - 1/8) for a horospherically convex D containing a
/// ball of radius r; reports the horoball-pair outer radius arcosh(e^r).
Certificate certify_horoconvex(double r);

/// Parity-dispatched case bound, the closed form max(0, L/(32 log n) - 1/8),
/// and for n = 3 the triangle bound; reports the maximum.
Certificate certify_polygon(int n, double L);

/// Non-existence certificate for Theorem::kHalfSpace or kHoroball.
Certificate no_barrier(Theorem t);

/// Certificate for a domain family: ball, triangle, polygon, half-space,
/// horoball, or an intersection of balls and horoballs (horoconvex, with r
/// the inradius found numerically). nullopt if no theorem applies.
std::optional<Certificate> certify_domain(const dom::DomainSpec& d);

/// arcosh(cosh(r/2) / cosh((r-1)/2)), evaluated without overflow.
double ball_like_contact_distance(double r);

/// cos^2(angle(p1, p_j)) / cos^2(angle(p1, q')) with j = ceil(n/8) + 1 and q'
/// the midpoint of p_{j-1} p_j. Requires even n >= 6.
double polygon_angle_ratio(int n);

struct EvenCaseReport {
  int n = 0;
  int j = 0;
  double angle_p1_pj = 0.0;  // measured on a constructed polygon
  double angle_p1_qprime = 0.0;
  double angle_q_qprime = 0.0;
  double ratio = 0.0;
  bool ratio_holds = false;  // ratio >= 1/4
  bool angle_holds = false;  // angle(q, q') <= pi/2
  std::optional<double> alpha;          // n >= 12
  bool alpha_in_range = true;           // pi/4 <= alpha <= 5 pi / 12
  std::optional<double> c_expression;   // (cos(pi/n) + C sin(pi/n))^2, n >= 12
  bool c_holds = true;                  // c_expression <= 4
  bool holds = false;
};

/// Throws InvalidArgument unless n is even and >= 6.
EvenCaseReport verify_even_case_inequalities(int n);

}  // namespace hypbarrier::cert
