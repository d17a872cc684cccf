#include "hypbarrier/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypbarrier/error.hpp"
#include "hypbarrier/numeric.hpp"

namespace hypbarrier::cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TheoremName {
  Theorem theorem;
  const char* name;
};

constexpr TheoremName kTheoremNames[] = {
    {Theorem::kTriangle, "Triangle"},
    {Theorem::kBall, "Ball"},
    {Theorem::kBallLike, "BallLike"},
    {Theorem::kHoroconvex, "Horoconvex"},
    {Theorem::kRegularPolygonOdd, "RegularPolygonOdd"},
    {Theorem::kRegularPolygonDiv4, "RegularPolygonDiv4"},
    {Theorem::kRegularPolygonEven, "RegularPolygonEven"},
    {Theorem::kRegularPolygonClosedForm, "RegularPolygonClosedForm"},
    {Theorem::kHalfSpace, "HalfSpace"},
    {Theorem::kHoroball, "Horoball"},
};

Bound make_bound(Theorem t, double raw) { return Bound{t, std::max(0.0, raw), raw}; }

// Fills theorem/bound/raw_value from the maximum applicable bound; the first
// one wins ties.
void select_max(Certificate& c) {
  const Bound* best = &c.applicable.front();
  for (const auto& b : c.applicable) {
    if (b.bound > best->bound) best = &b;
  }
  c.theorem = best->theorem;
  c.bound = best->bound;
  c.raw_value = best->raw_value;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive");
}

std::optional<double> lookup(const std::vector<Quantity>& qs, const std::string& name) {
  for (const auto& q : qs) {
    if (q.name == name) return q.value;
  }
  return std::nullopt;
}

// True for balls, horoballs and intersections built only from them.
bool horoconvex_parts(const dom::DomainSpec& d) {
  if (d.get_if<dom::Ball>() || d.get_if<dom::Horoball>()) return true;
  const auto* inter = d.get_if<dom::Intersection>();
  if (!inter) return false;
  return std::all_of(inter->parts.begin(), inter->parts.end(), horoconvex_parts);
}

}  // namespace

const char* to_string(Theorem t) {
  for (const auto& tn : kTheoremNames) {
    if (tn.theorem == t) return tn.name;
  }
  return "?";
}

std::optional<Theorem> parse_theorem(const std::string& s) {
  for (const auto& tn : kTheoremNames) {
    if (s == tn.name) return tn.theorem;
  }
  return std::nullopt;
}

std::optional<double> Certificate::input(const std::string& name) const { return lookup(inputs, name); }
std::optional<double> Certificate::intermediate(const std::string& name) const { return lookup(intermediates, name); }

Certificate certify_triangle(double L) {
  require_positive(L, "side length L");
  const dom::TriangleGeometry g = dom::triangle_geometry(L);
  Certificate c;
  c.inputs = {{"L", L}};
  c.intermediates = {{"dist_center_to_edge_foot", g.dist_center_to_edge_foot},
                     {"dist_center_to_vertex", g.dist_center_to_vertex}};
  c.applicable = {make_bound(Theorem::kTriangle, L / 12.0 - 1.0 / 6.0)};
  select_max(c);
  return c;
}

double ball_like_contact_distance(double r) {
  // cosh(r/2) / cosh((r-1)/2) = e^{1/2} (1 + e^{-r}) / (1 + e^{1-r})
  const double ratio = std::exp(0.5) * (1.0 + std::exp(-r)) / (1.0 + std::exp(1.0 - r));
  return numeric::arcosh1p(ratio - 1.0);
}

Certificate certify_ball_like(double r, double R) {
  require_positive(r, "inner radius r");
  require_positive(R, "outer radius R");
  if (r > R) throw Error(ErrorCode::kInvalidArgument, "ball-like bound needs r <= R");
  Certificate c;
  c.inputs = {{"r", r}, {"R", R}};
  if (r >= 2.0) {
    const double contact = ball_like_contact_distance(r);
    if (contact > 2.0) throw Error(ErrorCode::kNumericalDrift, "d(p, q+) exceeded 2");
    c.intermediates.push_back({"d_p_q_plus", contact});
  }
  c.applicable = {make_bound(Theorem::kBallLike, std::pow(r, 1.5) / (64.0 * R) - 0.5)};
  select_max(c);
  return c;
}

Certificate certify_ball(double R) {
  require_positive(R, "radius R");
  Certificate c;
  c.inputs = {{"R", R}};
  // F + (F reflected through the center) is a 2 theta-barrier with analytic
  // center c, to which the ball-like bound applies with r = R.
  const double symmetrized = std::sqrt(R) / 64.0 - 0.5;
  c.intermediates = {{"symmetrization_factor", 2.0}, {"symmetrized_ball_like_bound", symmetrized}};
  c.applicable = {make_bound(Theorem::kBall, std::sqrt(R) / 128.0 - 0.25),
                  make_bound(Theorem::kHoroconvex, std::sqrt(R) / 512.0 - 0.125)};
  select_max(c);
  return c;
}

Certificate certify_horoconvex(double r) {
  require_positive(r, "inner radius r");
  Certificate c;
  c.inputs = {{"r", r}};
  c.intermediates = {{"outer_radius", numeric::arcosh_exp(r)}};
  c.applicable = {make_bound(Theorem::kHoroconvex, std::sqrt(r) / 512.0 - 0.125)};
  select_max(c);
  return c;
}

double polygon_angle_ratio(int n) {
  if (n < 6 || n % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "angle ratio needs even n >= 6");
  const int j = (n + 7) / 8 + 1;
  const double a = std::cos(2.0 * numeric::kPi * (j - 1) / n);
  const double b = std::cos(numeric::kPi * (2 * j - 3) / n);
  return (a * a) / (b * b);
}

Certificate certify_polygon(int n, double L) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "polygon needs n >= 3");
  require_positive(L, "side length L");
  const dom::PolygonGeometry g = dom::polygon_geometry(n, L);
  Certificate c;
  c.inputs = {{"n", static_cast<double>(n)}, {"L", L}};
  c.intermediates = {{"R_n", g.circumradius}, {"r_n", g.inradius}};
  const double ratio = g.circumradius / g.inradius;
  if (n % 2 == 1) {
    c.applicable.push_back(make_bound(Theorem::kRegularPolygonOdd, (ratio - 1.0) / 4.0));
  } else if (n % 4 == 0) {
    c.applicable.push_back(make_bound(Theorem::kRegularPolygonDiv4, (ratio - 1.0) / 8.0));
  } else {
    c.applicable.push_back(make_bound(Theorem::kRegularPolygonEven, (0.5 * ratio - 1.0) / 8.0));
  }
  if (n >= 6 && n % 2 == 0) c.intermediates.push_back({"angle_ratio", polygon_angle_ratio(n)});
  c.applicable.push_back(make_bound(Theorem::kRegularPolygonClosedForm, L / (32.0 * std::log(n)) - 0.125));
  if (n == 3) c.applicable.push_back(make_bound(Theorem::kTriangle, L / 12.0 - 1.0 / 6.0));
  select_max(c);
  return c;
}

Certificate no_barrier(Theorem t) {
  if (t != Theorem::kHalfSpace && t != Theorem::kHoroball) {
    throw Error(ErrorCode::kInvalidArgument, "non-existence holds only for half-spaces and horoballs");
  }
  Certificate c;
  c.theorem = t;
  c.no_barrier = true;
  c.bound = kInf;
  c.raw_value = kInf;
  c.applicable = {Bound{t, kInf, kInf}};
  return c;
}

std::optional<Certificate> certify_domain(const dom::DomainSpec& d) {
  if (const auto* b = d.get_if<dom::Ball>()) return certify_ball(b->radius);
  if (const auto* t = d.get_if<dom::EquilateralTriangle>()) return certify_triangle(t->side);
  if (const auto* p = d.get_if<dom::RegularPolygon>()) return certify_polygon(p->n, p->side);
  if (d.get_if<dom::HalfSpace>()) return no_barrier(Theorem::kHalfSpace);
  if (d.get_if<dom::Horoball>()) return no_barrier(Theorem::kHoroball);
  if (!horoconvex_parts(d)) return std::nullopt;
  const double inradius = dom::margin(d, dom::deepest_point(d));
  if (!(inradius > 0.0)) return std::nullopt;
  Certificate c = certify_horoconvex(inradius);
  c.intermediates.push_back({"inradius", inradius});
  return c;
}

EvenCaseReport verify_even_case_inequalities(int n) {
  if (n < 6 || n % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "even case needs even n >= 6");
  const geo::Point c;
  const dom::DomainSpec poly = dom::DomainSpec::regular_polygon(c, n, 1.0);
  const auto& v = poly.get_if<dom::RegularPolygon>()->vertices;
  auto p = [&](int k) { return v[static_cast<std::size_t>(k - 1)]; };  // vertices p_1 .. p_n

  EvenCaseReport r;
  r.n = n;
  r.j = (n + 7) / 8 + 1;
  const geo::Point q_prime = geo::midpoint(p(r.j - 1), p(r.j));
  const geo::Point q = geo::midpoint(p(n / 4 + 1), p((n + 3) / 4 + 1));
  r.angle_p1_pj = geo::angle_at(c, p(1), p(r.j));
  r.angle_p1_qprime = geo::angle_at(c, p(1), q_prime);
  r.angle_q_qprime = geo::angle_at(c, q, q_prime);
  const double a = std::cos(r.angle_p1_pj), b = std::cos(r.angle_p1_qprime);
  r.ratio = (a * a) / (b * b);
  constexpr double kTol = 1e-12;
  r.ratio_holds = r.ratio >= 0.25 - kTol;
  r.angle_holds = r.angle_q_qprime <= 0.5 * numeric::kPi + kTol;
  if (n >= 12) {
    const double alpha = 2.0 * numeric::kPi * (r.j - 1) / n;
    r.alpha = alpha;
    r.alpha_in_range = alpha >= 0.25 * numeric::kPi - kTol && alpha <= 5.0 * numeric::kPi / 12.0 + kTol;
    const double C = std::tan(5.0 * numeric::kPi / 12.0);
    const double e = std::cos(numeric::kPi / n) + C * std::sin(numeric::kPi / n);
    r.c_expression = e * e;
    r.c_holds = e * e <= 4.0;
  }
  r.holds = r.ratio_holds && r.angle_holds && r.alpha_in_range && r.c_holds;
  return r;
}

}  // namespace hypbarrier::cert
