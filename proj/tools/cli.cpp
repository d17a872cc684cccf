#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hypbarrier/certificates.hpp"
#include "hypbarrier/checker.hpp"
#include "hypbarrier/error.hpp"
#include "hypbarrier/numeric.hpp"
#include "hypbarrier/serialization.hpp"
#include "svg.hpp"

namespace hypbarrier::cli {

namespace {

using io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoTheorem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string shortest(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "NaN" : (x > 0 ? "Infinity" : "-Infinity");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Inline JSON text, or @path to read it from a file.
json parse_json_arg(const std::string& text, const std::string& what) {
  std::string src = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1), std::ios::binary);
    if (!in) throw UsageError("cannot read " + what + " file '" + text.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    src = ss.str();
  }
  try {
    return json::parse(src);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, what + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

int need(const std::optional<int>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

/// Exactly one of the named selectors must be set; returns its index.
std::size_t pick_one(const std::vector<std::pair<const char*, bool>>& choices) {
  std::optional<std::size_t> hit;
  std::string names;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    names += (i ? ", " : "") + std::string(choices[i].first);
    if (!choices[i].second) continue;
    if (hit) throw UsageError("choose only one of " + names);
    hit = i;
  }
  if (!hit) throw UsageError("choose one of " + names);
  return *hit;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  bool triangle = false, ball = false, ball_like = false, horoconvex = false, polygon = false;
  bool half_space = false, horoball = false;
  std::optional<double> side, R, r;
  std::optional<int> n;
  std::string domain, output;
};

void add_family_flags(CLI::App* c, CertifyArgs& a) {
  c->add_flag("--triangle", a.triangle, "Equilateral triangle (--side)");
  c->add_flag("--ball", a.ball, "Ball (--R)");
  c->add_flag("--ball-like", a.ball_like, "Ball-like domain (--r, --R)");
  c->add_flag("--horoconvex", a.horoconvex, "Horospherically convex domain (--r)");
  c->add_flag("--polygon", a.polygon, "Regular polygon (--n, --side)");
  c->add_flag("--half-space", a.half_space, "Half-space");
  c->add_flag("--horoball", a.horoball, "Horoball");
  c->add_option("--side", a.side, "Side length L");
  c->add_option("--R", a.R, "Outer radius");
  c->add_option("--r", a.r, "Inner radius");
  c->add_option("--n", a.n, "Number of polygon sides");
  c->add_option("--domain", a.domain, "Domain spec as JSON or @file");
  c->add_option("-o,--output", a.output, "Output path");
}

int do_certify(const CertifyArgs& a, std::ostream& out) {
  const std::size_t k = pick_one({{"--triangle", a.triangle},
                                  {"--ball", a.ball},
                                  {"--ball-like", a.ball_like},
                                  {"--horoconvex", a.horoconvex},
                                  {"--polygon", a.polygon},
                                  {"--half-space", a.half_space},
                                  {"--horoball", a.horoball},
                                  {"--domain", !a.domain.empty()}});
  cert::Certificate c;
  switch (k) {
    case 0: c = cert::certify_triangle(need(a.side, "--side")); break;
    case 1: c = cert::certify_ball(need(a.R, "--R")); break;
    case 2: c = cert::certify_ball_like(need(a.r, "--r"), need(a.R, "--R")); break;
    case 3: c = cert::certify_horoconvex(need(a.r, "--r")); break;
    case 4: c = cert::certify_polygon(need(a.n, "--n"), need(a.side, "--side")); break;
    case 5: c = cert::no_barrier(cert::Theorem::kHalfSpace); break;
    case 6: c = cert::no_barrier(cert::Theorem::kHoroball); break;
    default: {
      const auto d = io::domain_from_json(parse_json_arg(a.domain, "domain"));
      const auto found = cert::certify_domain(d);
      if (!found) throw NoTheorem("no lower-bound theorem applies to this " + std::string(d.kind()) + " domain");
      c = *found;
    }
  }
  emit(dump(io::to_json(c)), a.output, out);
  return c.no_barrier ? kNoTheorem : kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string recipe, interval, candidate, domain, plan, output;
  bool log = false, finite_differences = false;
  std::optional<double> R, scale, standoff, unbounded_radius, theta;
  std::optional<std::size_t> points, geodesics, grid;
  std::optional<std::uint64_t> seed;
};

io::BarrierRecipe check_recipe(const CheckArgs& a) {
  const std::size_t k = pick_one({{"--recipe", !a.recipe.empty()},
                                  {"--interval", !a.interval.empty()},
                                  {"--candidate", !a.candidate.empty()},
                                  {"--log", a.log}});
  io::BarrierRecipe r;
  if (k == 0) {
    r = io::recipe_from_json(parse_json_arg(a.recipe, "recipe"));
  } else if (k == 1) {
    json j{{"kind", "interval"}, {"name", a.interval}};
    r = io::recipe_from_json(j);
  } else {
    json j;
    j["kind"] = k == 2 ? "candidate" : "log";
    if (k == 2) j["candidate"] = a.candidate;
    if (!a.domain.empty()) {
      j["domain"] = parse_json_arg(a.domain, "domain");
    } else if (a.R) {
      j["domain"] = io::to_json(dom::DomainSpec::ball(geo::Point(), *a.R));
    } else {
      throw UsageError("--candidate and --log need --domain or --R");
    }
    r = io::recipe_from_json(j);
  }
  if (a.scale) r.scale = *a.scale;
  if (a.finite_differences) r.finite_differences = true;
  return r;
}

chk::SamplePlan check_plan(const CheckArgs& a) {
  chk::SamplePlan plan = a.plan.empty() ? chk::SamplePlan{} : io::plan_from_json(parse_json_arg(a.plan, "plan"));
  if (a.points) plan.point_count = *a.points;
  if (a.geodesics) plan.geodesics_per_point = *a.geodesics;
  if (a.grid) plan.grid_per_geodesic = *a.grid;
  if (a.standoff) plan.standoff = *a.standoff;
  if (a.unbounded_radius) plan.unbounded_radius = *a.unbounded_radius;
  if (a.seed) plan.seed = *a.seed;
  try {
    plan.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return plan;
}

int do_check(const CheckArgs& a, std::ostream& out) {
  const io::BarrierRecipe recipe = check_recipe(a);
  const chk::SamplePlan plan = check_plan(a);
  const auto built = recipe.build();
  chk::CheckReport report;
  std::optional<dom::DomainSpec> domain;
  if (const auto* F = std::get_if<bar::IntervalBarrier>(&built)) {
    report = chk::check_P_properties(*F, plan, a.theta);
  } else {
    const auto& G = std::get<bar::BarrierFn>(built);
    report = chk::check_P_properties(G, plan, a.theta);
    domain = G.domain();
  }
  json j = io::to_json(report);
  j["recipe"] = io::to_json(recipe);
  if (domain) {
    const auto c = cert::certify_domain(*domain);
    if (c && !c->no_barrier) {
      // sigma^2 theta is the parameter of the barrier rescaled to sigma = 1.
      const double s = report.sigma.value, t = report.theta.value;
      const double e = 2.0 * s * t * report.sigma.error_bar + s * s * report.theta.error_bar;
      json h;
      h["normalized_parameter"] = io::number(s * s * t);
      h["error_bar"] = io::number(e);
      h["certified_theorem"] = cert::to_string(c->theorem);
      h["certified_bound"] = io::number(c->bound);
      h["holds"] = s * s * t + e >= c->bound;
      j["soundness"] = std::move(h);
    }
  }
  emit(dump(j), a.output, out);
  return report.any_fail() ? kPropertyFail : kOk;
}

// ---------------------------------------------------------------- geometry

struct GeometryArgs {
  bool triangle = false, polygon = false, horoball_pair = false, contact = false, even_case = false;
  bool distance = false, law_of_cosines = false;
  std::optional<double> side, r, a, b, angle;
  std::optional<int> n;
  std::string p, q, output;
};

int do_geometry(const GeometryArgs& a, std::ostream& out) {
  const std::size_t k = pick_one({{"--triangle", a.triangle},
                                  {"--polygon", a.polygon},
                                  {"--horoball-pair", a.horoball_pair},
                                  {"--contact", a.contact},
                                  {"--even-case", a.even_case},
                                  {"--dist", a.distance},
                                  {"--law-of-cosines", a.law_of_cosines}});
  json j;
  j["schema_version"] = io::kSchemaVersion;
  switch (k) {
    case 0: {
      const auto g = dom::triangle_geometry(need(a.side, "--side"));
      j["query"] = "triangle";
      j["L"] = io::number(g.L);
      j["dist_center_to_edge_foot"] = io::number(g.dist_center_to_edge_foot);
      j["dist_center_to_vertex"] = io::number(g.dist_center_to_vertex);
      break;
    }
    case 1: {
      const auto g = dom::polygon_geometry(need(a.n, "--n"), need(a.side, "--side"));
      j["query"] = "polygon";
      j["n"] = g.n;
      j["L"] = io::number(g.L);
      j["R_n"] = io::number(g.circumradius);
      j["r_n"] = io::number(g.inradius);
      break;
    }
    case 2: {
      const double r = need(a.r, "--r");
      const auto hp = dom::horoball_pair(geo::Point(), geo::direction(geo::Point(), 0.0), r);
      j["query"] = "horoball_pair";
      j["r"] = io::number(r);
      j["inner_radius"] = io::number(hp.inner_radius);
      j["outer_radius"] = io::number(hp.outer_radius);
      j["inner_disk_radius"] = io::number(std::tanh(0.5 * hp.inner_radius));
      j["outer_disk_radius"] = io::number(dom::horoball_pair_outer_disk_radius(r));
      j["domain"] = io::to_json(hp.domain);
      break;
    }
    case 3: {
      const double r = need(a.r, "--r");
      j["query"] = "contact";
      j["r"] = io::number(r);
      j["d_p_q_plus"] = io::number(cert::ball_like_contact_distance(r));
      break;
    }
    case 4: {
      const auto rep = cert::verify_even_case_inequalities(need(a.n, "--n"));
      j["query"] = "even_case";
      j["n"] = rep.n;
      j["j"] = rep.j;
      j["angle_p1_pj"] = io::number(rep.angle_p1_pj);
      j["angle_p1_qprime"] = io::number(rep.angle_p1_qprime);
      j["angle_q_qprime"] = io::number(rep.angle_q_qprime);
      j["ratio"] = io::number(rep.ratio);
      j["alpha"] = rep.alpha ? io::number(*rep.alpha) : json(nullptr);
      j["c_expression"] = rep.c_expression ? io::number(*rep.c_expression) : json(nullptr);
      j["holds"] = rep.holds;
      break;
    }
    case 5: {
      if (a.p.empty() || a.q.empty()) throw UsageError("--dist needs --p and --q");
      const auto P = io::point_from_json(parse_json_arg(a.p, "--p"));
      const auto Q = io::point_from_json(parse_json_arg(a.q, "--q"));
      j["query"] = "dist";
      j["distance"] = io::number(geo::dist(P, Q));
      break;
    }
    default: {
      j["query"] = "law_of_cosines";
      j["side"] = io::number(geo::law_of_cosines_side(need(a.a, "--a"), need(a.b, "--b"), need(a.angle, "--angle")));
    }
  }
  emit(dump(j), a.output, out);
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string family, L, R, r, n, format = "csv", output;
  bool r_equals_R = false;
};

/// "a", "a,b,c", "a:b:step" or "a:b:xfactor".
std::vector<double> parse_range(const std::string& text, const char* flag) {
  auto num = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw UsageError(std::string("bad number '") + s + "' in " + flag);
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') == std::string::npos) {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(num(item));
  } else {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError(std::string(flag) + " range must be from:to:step");
    const double from = num(parts[0]), to = num(parts[1]);
    if (!parts[2].empty() && parts[2][0] == 'x') {
      const double f = num(parts[2].substr(1));
      if (!(f > 1.0) || !(from > 0.0)) throw UsageError(std::string(flag) + " geometric range needs from > 0, factor > 1");
      for (double v = from; v <= to * (1.0 + 1e-12); v *= f) out.push_back(v);
    } else {
      const double step = num(parts[2]);
      if (!(step > 0.0)) throw UsageError(std::string(flag) + " step must be positive");
      if (to >= from) {
        const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(from + static_cast<double>(i) * step);
      }
    }
  }
  if (out.empty()) throw UsageError(std::string("empty range for ") + flag);
  return out;
}

struct Column {
  std::string name;
  std::optional<double> value;
};

std::optional<double> applicable_bound(const cert::Certificate& c, cert::Theorem t) {
  for (const auto& b : c.applicable) {
    if (b.theorem == t) return b.bound;
  }
  return std::nullopt;
}

std::vector<Column> sweep_row(const std::string& family, const std::vector<double>& in, cert::Certificate& c) {
  std::vector<Column> cols;
  auto common = [&] {
    cols.push_back({"bound", c.bound});
    cols.push_back({"raw_value", c.raw_value});
  };
  if (family == "triangle") {
    c = cert::certify_triangle(in[0]);
    cols = {{"L", in[0]}};
    common();
    cols.push_back({"dist_center_to_edge_foot", c.intermediate("dist_center_to_edge_foot")});
    cols.push_back({"dist_center_to_vertex", c.intermediate("dist_center_to_vertex")});
  } else if (family == "ball") {
    c = cert::certify_ball(in[0]);
    cols = {{"R", in[0]}};
    common();
    cols.push_back({"ball_bound", applicable_bound(c, cert::Theorem::kBall)});
    cols.push_back({"horoconvex_bound", applicable_bound(c, cert::Theorem::kHoroconvex)});
  } else if (family == "ball-like") {
    c = cert::certify_ball_like(in[0], in[1]);
    cols = {{"r", in[0]}, {"R", in[1]}};
    common();
    cols.push_back({"d_p_q_plus", c.intermediate("d_p_q_plus")});
  } else if (family == "polygon") {
    const double n = in[0];
    if (n != std::floor(n)) throw UsageError("polygon n must be an integer");
    c = cert::certify_polygon(static_cast<int>(n), in[1]);
    cols = {{"n", n}, {"L", in[1]}};
    common();
    const int ni = static_cast<int>(n);
    const auto t = ni % 2 == 1 ? cert::Theorem::kRegularPolygonOdd
                   : ni % 4 == 0 ? cert::Theorem::kRegularPolygonDiv4
                                 : cert::Theorem::kRegularPolygonEven;
    cols.push_back({"case_bound", applicable_bound(c, t)});
    cols.push_back({"closed_form_bound", applicable_bound(c, cert::Theorem::kRegularPolygonClosedForm)});
    cols.push_back({"R_n", c.intermediate("R_n")});
    cols.push_back({"r_n", c.intermediate("r_n")});
  } else {
    c = cert::certify_horoconvex(in[0]);
    cols = {{"r", in[0]}};
    common();
    cols.push_back({"outer_radius", c.intermediate("outer_radius")});
  }
  return cols;
}

int do_sweep(const SweepArgs& a, std::ostream& out) {
  std::vector<std::pair<const char*, const std::string*>> axes;
  if (a.family == "triangle") {
    axes = {{"--L", &a.L}};
  } else if (a.family == "ball") {
    axes = {{"--R", &a.R}};
  } else if (a.family == "ball-like") {
    axes = {{"--r", &a.r}};
    if (!a.r_equals_R) axes.push_back({"--R", &a.R});
  } else if (a.family == "polygon") {
    axes = {{"--n", &a.n}, {"--L", &a.L}};
  } else if (a.family == "horoconvex") {
    axes = {{"--r", &a.r}};
  } else {
    throw UsageError("unknown family '" + a.family + "'");
  }
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");

  std::vector<std::vector<double>> grid{{}};
  for (const auto& [flag, text] : axes) {
    if (text->empty()) throw UsageError(std::string("family ") + a.family + " needs " + flag);
    const auto values = parse_range(*text, flag);
    std::vector<std::vector<double>> next;
    for (const auto& prefix : grid) {
      for (double v : values) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    grid = std::move(next);
  }
  if (a.family == "ball-like" && a.r_equals_R) {
    for (auto& row : grid) row.push_back(row[0]);
  }

  std::string csv;
  json rows = json::array();
  bool header = false;
  std::size_t emitted = 0;
  for (const auto& in : grid) {
    // Grid points outside a theorem's hypotheses (r > R) are skipped.
    if (a.family == "ball-like" && in[0] > in[1]) continue;
    cert::Certificate c;
    const auto cols = sweep_row(a.family, in, c);
    if (!header) {
      for (std::size_t i = 0; i < cols.size(); ++i) csv += (i ? "," : "") + cols[i].name;
      csv += ",theorem\n";
      header = true;
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      csv += (i ? "," : "") + (cols[i].value ? shortest(*cols[i].value) : std::string());
    }
    csv += std::string(",") + cert::to_string(c.theorem) + "\n";
    rows.push_back(io::to_json(c));
    ++emitted;
  }
  if (emitted == 0) throw UsageError("sweep grid has no admissible points");
  if (a.format == "csv") {
    emit(csv, a.output, out);
  } else {
    json j;
    j["schema_version"] = io::kSchemaVersion;
    j["family"] = a.family;
    j["rows"] = std::move(rows);
    emit(dump(j), a.output, out);
  }
  return kOk;
}

// ---------------------------------------------------------------- render

struct RenderArgs {
  bool horoball_pair = false, triangle = false, ball = false, ball_like_proof = false, polygon = false;
  std::string tag, domain, output;
  std::optional<double> side, R, r;
  std::optional<int> n;
};

const Style kDomainStyle{"#1f4e9c", "#9ec3f0", 1.5, "", 0.35};
const Style kGuide{"#666666", "none", 1.0, "4 3", 1.0};
const Style kAccent{"#b03020", "none", 1.5, "", 1.0};

std::string render_horoball_pair(double r) {
  const geo::Point c;
  const geo::Tangent dir = geo::direction(c, 0.0);
  const auto hp = dom::horoball_pair(c, dir, r);
  SvgCanvas svg("horoball pair, r = " + shortest(r));
  svg.horoball(hp.rays[0], kDomainStyle, "horoball-1");
  svg.horoball(hp.rays[1], kDomainStyle, "horoball-2");
  svg.ball(c, hp.inner_radius, kGuide, "inner");
  svg.ball(c, hp.outer_radius, kGuide, "outer");
  svg.label(c, "p*");
  svg.label(geo::exp(dir * r), "q+");
  svg.label(geo::exp(dir * -r), "q-");
  return svg.str();
}

std::string render_triangle(double L) {
  const geo::Point c;
  const auto d = dom::DomainSpec::equilateral_triangle(c, L, 0.5 * numeric::kPi);
  const auto& v = d.get_if<dom::EquilateralTriangle>()->vertices;
  const geo::Point q = geo::midpoint(v[1], v[2]);
  SvgCanvas svg("equilateral triangle, L = " + shortest(L));
  svg.domain(d, kDomainStyle);
  svg.segment(v[0], q, kGuide);
  svg.segment(c, v[1], kGuide);
  svg.label(v[0], "a");
  svg.label(v[1], "b");
  svg.label(v[2], "c");
  svg.label(c, "p*");
  svg.label(q, "q");
  return svg.str();
}

std::string render_ball(double R) {
  SvgCanvas svg("ball, R = " + shortest(R));
  svg.domain(dom::DomainSpec::ball(geo::Point(), R), kDomainStyle);
  svg.label(geo::Point(), "p*");
  return svg.str();
}

std::string render_ball_like_proof(double r, double R) {
  if (!(r > 1.0) || R < r) throw UsageError("ball-like-proof needs 1 < r <= R");
  const geo::Point c;
  const geo::Geodesic radial(geo::direction(c, 0.5 * numeric::kPi));
  const double rho = 0.5 * (r - 1.0);
  const geo::Point p = radial.at(rho);
  const geo::Tangent u = radial.velocity(rho);
  const geo::Geodesic gamma(geo::Tangent(p, geo::lorentz_cross(p.coords(), u.vec())));
  const double s = cert::ball_like_contact_distance(r);
  const geo::Point q_plus = gamma.at(s), q_minus = gamma.at(-s);
  SvgCanvas svg("ball-like construction, r = " + shortest(r) + ", R = " + shortest(R));
  svg.ball(c, R, kGuide, "outer");
  svg.ball(c, r, kDomainStyle, "inner");
  svg.ball(c, rho, kGuide, "circle-r-minus-1-half");
  svg.ball(c, 0.5 * r, kGuide, "circle-r-half");
  svg.line(gamma, kAccent);
  svg.segment(c, p, kGuide);
  svg.segment(c, q_plus, kGuide);
  svg.label(c, "p*");
  svg.label(p, "p");
  svg.label(q_plus, "q+");
  svg.label(q_minus, "q-");
  return svg.str();
}

int do_render(const RenderArgs& a, std::ostream& out) {
  static const char* const kTags[] = {"horoball-pair", "triangle-median", "ball", "ball-like-proof", "polygon"};
  std::string tag = a.tag;
  if (!tag.empty() && std::find(std::begin(kTags), std::end(kTags), tag) == std::end(kTags)) {
    throw UsageError("unknown render tag '" + tag + "'");
  }
  const std::size_t k = pick_one({{"--horoball-pair", a.horoball_pair || tag == "horoball-pair"},
                                  {"--triangle", a.triangle || tag == "triangle-median"},
                                  {"--ball", a.ball || tag == "ball"},
                                  {"--ball-like-proof", a.ball_like_proof || tag == "ball-like-proof"},
                                  {"--polygon", a.polygon || tag == "polygon"},
                                  {"--domain", !a.domain.empty()}});
  std::string svg;
  switch (k) {
    case 0: svg = render_horoball_pair(a.r.value_or(1.0)); break;
    case 1: svg = render_triangle(a.side.value_or(6.0)); break;
    case 2: svg = render_ball(a.R.value_or(2.0)); break;
    case 3: svg = render_ball_like_proof(a.r.value_or(4.0), a.R.value_or(std::max(6.0, a.r.value_or(4.0)))); break;
    case 4: {
      const auto d = dom::DomainSpec::regular_polygon(geo::Point(), need(a.n, "--n"), a.side.value_or(2.0));
      SvgCanvas canvas("regular polygon");
      canvas.domain(d, kDomainStyle);
      canvas.label(geo::Point(), "p*");
      svg = canvas.str();
      break;
    }
    default: {
      const auto d = io::domain_from_json(parse_json_arg(a.domain, "domain"));
      SvgCanvas canvas(std::string(d.kind()));
      canvas.domain(d, kDomainStyle);
      svg = canvas.str();
    }
  }
  emit(svg, a.output, out);
  return kOk;
}

// ---------------------------------------------------------------- job

/// Translates a JobSpec into a command line:
///   {"command", "domain"?, "recipe"?, "plan"?, "format"?, "output"?, "seed"?,
///    "options"?: {flag: value | true}}
std::vector<std::string> job_args(const json& j) {
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) {
    throw Error(ErrorCode::kParse, "job needs a string 'command'");
  }
  const std::string cmd = j["command"].get<std::string>();
  static const char* const kCommands[] = {"certify", "check", "geometry", "sweep", "render"};
  if (std::find(std::begin(kCommands), std::end(kCommands), cmd) == std::end(kCommands)) {
    throw Error(ErrorCode::kParse, "unknown job command '" + cmd + "'");
  }
  std::vector<std::string> args{cmd};
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return shortest(v.get<double>());
    throw Error(ErrorCode::kParse, "job option values must be strings or numbers");
  };
  for (const char* key : {"domain", "recipe", "plan"}) {
    if (j.contains(key)) args.insert(args.end(), {std::string("--") + key, j[key].dump()});
  }
  if (j.contains("format")) args.insert(args.end(), {"--format", scalar(j["format"])});
  if (j.contains("seed")) args.insert(args.end(), {"--seed", scalar(j["seed"])});
  if (j.contains("output")) args.insert(args.end(), {"--output", scalar(j["output"])});
  if (j.contains("options")) {
    if (!j["options"].is_object()) throw Error(ErrorCode::kParse, "job options must be an object");
    for (const auto& [k, v] : j["options"].items()) {
      if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back("--" + k);
      } else {
        args.insert(args.end(), {"--" + k, scalar(v)});
      }
    }
  }
  const bool has_input = j.contains("domain") || j.contains("recipe") || j.contains("options");
  if (!has_input) throw Error(ErrorCode::kParse, "job for '" + cmd + "' has no domain, recipe or options");
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Barrier-parameter certificates and barrier checks on the hyperbolic plane", "hypbarrier"};
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Lower bound on the barrier parameter for a domain family");
  add_family_flags(certify, ca);

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "Measure sigma, theta and P1-P3 for a barrier");
  check->add_option("--recipe", ka.recipe, "Barrier recipe as JSON or @file");
  check->add_option("--interval", ka.interval, "Reference barrier: neg_log, neg_log_interval, quadratic");
  check->add_option("--candidate", ka.candidate, "Ball candidate: log-cosh-gap, log-square-gap");
  check->add_flag("--log", ka.log, "Logarithmic barrier of --domain");
  check->add_option("--domain", ka.domain, "Domain spec as JSON or @file");
  check->add_option("--R", ka.R, "Radius of a ball at the origin (with --candidate or --log)");
  check->add_option("--scale", ka.scale, "Multiply the barrier by this factor");
  check->add_flag("--finite-differences", ka.finite_differences, "Ignore analytic derivatives");
  check->add_option("--plan", ka.plan, "Sample plan as JSON or @file");
  check->add_option("--points", ka.points, "Sampled points");
  check->add_option("--geodesics", ka.geodesics, "Geodesics per point");
  check->add_option("--grid", ka.grid, "Parameters per geodesic");
  check->add_option("--standoff", ka.standoff, "Boundary standoff in (0, 1e-2]");
  check->add_option("--unbounded-radius", ka.unbounded_radius, "Sampling radius for unbounded domains");
  check->add_option("--seed", ka.seed, "Sampling seed");
  check->add_option("--theta", ka.theta, "Barrier parameter used for P3 (default: measured)");
  check->add_option("-o,--output", ka.output, "Output path");

  GeometryArgs ga;
  auto* geometry = app.add_subcommand("geometry", "Geometric quantities behind the certificates");
  geometry->add_flag("--triangle", ga.triangle, "Triangle distances (--side)");
  geometry->add_flag("--polygon", ga.polygon, "Polygon radii (--n, --side)");
  geometry->add_flag("--horoball-pair", ga.horoball_pair, "Horoball pair radii (--r)");
  geometry->add_flag("--contact", ga.contact, "d(p, q+) of the ball-like construction (--r)");
  geometry->add_flag("--even-case", ga.even_case, "Even polygon inequalities (--n)");
  geometry->add_flag("--dist", ga.distance, "Distance between --p and --q");
  geometry->add_flag("--law-of-cosines", ga.law_of_cosines, "Third side from --a, --b, --angle");
  geometry->add_option("--side", ga.side, "Side length L");
  geometry->add_option("--r", ga.r, "Radius");
  geometry->add_option("--n", ga.n, "Number of sides");
  geometry->add_option("--a", ga.a, "First side");
  geometry->add_option("--b", ga.b, "Second side");
  geometry->add_option("--angle", ga.angle, "Included angle");
  geometry->add_option("--p", ga.p, "Point as JSON [x0, x1, x2]");
  geometry->add_option("--q", ga.q, "Point as JSON [x0, x1, x2]");
  geometry->add_option("-o,--output", ga.output, "Output path");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Certificate bounds over a parameter grid");
  sweep->add_option("--family", sa.family, "triangle, ball, ball-like, polygon, horoconvex")->required();
  sweep->add_option("--L", sa.L, "Side lengths: a | a,b,c | from:to:step | from:to:xfactor");
  sweep->add_option("--R", sa.R, "Outer radii (same syntax)");
  sweep->add_option("--r", sa.r, "Inner radii (same syntax)");
  sweep->add_option("--n", sa.n, "Polygon sizes (same syntax)");
  sweep->add_flag("--r-equals-R", sa.r_equals_R, "Ball-like sweep along r = R");
  sweep->add_option("--format", sa.format, "csv or json");
  sweep->add_option("-o,--output", sa.output, "Output path");

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "SVG drawing in the Poincare disk");
  render->add_flag("--horoball-pair", ra.horoball_pair, "Two opposed horoballs (--r)");
  render->add_flag("--triangle", ra.triangle, "Triangle with centroid and median foot (--side)");
  render->add_flag("--ball", ra.ball, "Ball at the origin (--R)");
  render->add_flag("--ball-like-proof", ra.ball_like_proof, "Ball-like construction (--r, --R)");
  render->add_flag("--polygon", ra.polygon, "Regular polygon (--n, --side)");
  render->add_option("--tag", ra.tag, "horoball-pair, triangle-median, ball, ball-like-proof, polygon");
  render->add_option("--domain", ra.domain, "Domain spec as JSON or @file");
  render->add_option("--side", ra.side, "Side length");
  render->add_option("--R", ra.R, "Outer radius");
  render->add_option("--r", ra.r, "Inner radius");
  render->add_option("--n", ra.n, "Number of sides");
  render->add_option("-o,--output", ra.output, "Output path");

  std::string job_file;
  auto* job = app.add_subcommand("job", "Run a JSON job spec");
  job->add_option("file", job_file, "Job spec path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (certify->parsed()) return do_certify(ca, out);
    if (check->parsed()) return do_check(ka, out);
    if (geometry->parsed()) return do_geometry(ga, out);
    if (sweep->parsed()) return do_sweep(sa, out);
    if (render->parsed()) return do_render(ra, out);
    return run(job_args(parse_json_arg("@" + job_file, "job")), out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NoTheorem& e) {
    err << "error: " << e.what() << "\n";
    return kNoTheorem;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kParse:
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kOutsideDisk:
      case ErrorCode::kInvalidGroup:
        return kUsageError;
      default:
        return kRuntimeError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace hypbarrier::cli
