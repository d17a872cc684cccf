#include "svg.hpp"

#include <charconv>
#include <cmath>

namespace hypbarrier::cli {

namespace {

struct Screen {
  double x;
  double y;
};

Screen to_screen(geo::DiskPoint p) { return {SvgCanvas::kCenter + SvgCanvas::kScale * p.x, SvgCanvas::kCenter - SvgCanvas::kScale * p.y}; }

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string style_attrs(const Style& s) {
  std::string a = " stroke=\"" + s.stroke + "\" stroke-width=\"" + fmt4(s.width) + "\" fill=\"" + s.fill + "\"";
  if (s.fill != "none" && s.fill_opacity < 1.0) a += " fill-opacity=\"" + fmt4(s.fill_opacity) + "\"";
  if (!s.dash.empty()) a += " stroke-dasharray=\"" + s.dash + "\"";
  return a;
}

std::string id_attr(const std::string& id) { return id.empty() ? std::string() : " id=\"" + escape(id) + "\""; }

}  // namespace

std::string fmt4(double x) {
  if (std::fabs(x) < 5e-5) x = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

DiskCircle ball_image(const geo::Point& c, double r) {
  const geo::DiskPoint p = geo::to_disk(c);
  const double s = geo::dist(geo::Point(), c);
  const double n = p.norm();
  const geo::DiskPoint u = n > 0.0 ? geo::DiskPoint{p.x / n, p.y / n} : geo::DiskPoint{1.0, 0.0};
  const double far = std::tanh(0.5 * (s + r));
  const double near = std::tanh(0.5 * (s - r));
  const double mid = 0.5 * (far + near);
  return {{u.x * mid, u.y * mid}, 0.5 * (far - near)};
}

DiskCircle horoball_image(const geo::GeodesicRay& ray) {
  const geo::DiskPoint l = geo::ideal_to_disk(ray.ideal());
  const geo::DiskPoint b = geo::to_disk(ray.geodesic().base());
  const double bb = b.x * b.x + b.y * b.y;
  const double k = (1.0 - bb) / (2.0 * (1.0 - (b.x * l.x + b.y * l.y)));
  return {{k * l.x, k * l.y}, 1.0 - k};
}

SvgCanvas::SvgCanvas(std::string title) : title_(std::move(title)) {}

void SvgCanvas::circle(geo::DiskPoint c, double r, const Style& s, const std::string& id) {
  const Screen sc = to_screen(c);
  body_.push_back("<circle" + id_attr(id) + " cx=\"" + fmt4(sc.x) + "\" cy=\"" + fmt4(sc.y) + "\" r=\"" +
                  fmt4(kScale * r) + "\"" + style_attrs(s) + "/>");
}

void SvgCanvas::ball(const geo::Point& c, double r, const Style& s, const std::string& id) {
  const DiskCircle dc = ball_image(c, r);
  circle(dc.center, dc.radius, s, id);
}

void SvgCanvas::horoball(const geo::GeodesicRay& ray, const Style& s, const std::string& id) {
  const DiskCircle dc = horoball_image(ray);
  circle(dc.center, dc.radius, s, id);
}

std::string SvgCanvas::arc_to(geo::DiskPoint a, geo::DiskPoint b) const {
  const Screen B = to_screen(b);
  const double det = a.x * b.y - a.y * b.x;
  if (std::fabs(det) < 1e-9) return "L " + fmt4(B.x) + " " + fmt4(B.y);
  // Circle orthogonal to the unit circle: |c|^2 = 1 + rho^2 and |c - a| = rho.
  const double ra = 0.5 * (1.0 + a.x * a.x + a.y * a.y);
  const double rb = 0.5 * (1.0 + b.x * b.x + b.y * b.y);
  const geo::DiskPoint c{(ra * b.y - rb * a.y) / det, (a.x * rb - b.x * ra) / det};
  const double rho = std::hypot(c.x - a.x, c.y - a.y);
  const Screen A = to_screen(a), C = to_screen(c);
  const double cross = (A.x - C.x) * (B.y - C.y) - (A.y - C.y) * (B.x - C.x);
  const std::string R = fmt4(kScale * rho);
  return "A " + R + " " + R + " 0 0 " + (cross > 0.0 ? "1" : "0") + " " + fmt4(B.x) + " " + fmt4(B.y);
}

void SvgCanvas::segment(geo::DiskPoint a, geo::DiskPoint b, const Style& s) {
  const Screen A = to_screen(a);
  Style open = s;
  open.fill = "none";
  body_.push_back("<path d=\"M " + fmt4(A.x) + " " + fmt4(A.y) + " " + arc_to(a, b) + "\"" + style_attrs(open) + "/>");
}

void SvgCanvas::segment(const geo::Point& a, const geo::Point& b, const Style& s) {
  segment(geo::to_disk(a), geo::to_disk(b), s);
}

void SvgCanvas::line(const geo::Geodesic& g, const Style& s) {
  const geo::DiskPoint a = geo::ideal_to_disk(geo::GeodesicRay(g).ideal());
  const geo::DiskPoint b = geo::ideal_to_disk(geo::GeodesicRay(geo::Geodesic(-g.dir())).ideal());
  segment(a, b, s);
}

void SvgCanvas::polygon(const std::vector<geo::Point>& vertices, const Style& s, const std::string& id) {
  if (vertices.empty()) return;
  std::vector<geo::DiskPoint> v;
  for (const auto& p : vertices) v.push_back(geo::to_disk(p));
  const Screen first = to_screen(v.front());
  std::string d = "M " + fmt4(first.x) + " " + fmt4(first.y);
  for (std::size_t i = 0; i < v.size(); ++i) d += " " + arc_to(v[i], v[(i + 1) % v.size()]);
  body_.push_back("<path" + id_attr(id) + " d=\"" + d + " Z\"" + style_attrs(s) + "/>");
}

void SvgCanvas::label(const geo::Point& p, const std::string& text) {
  const Screen sc = to_screen(geo::to_disk(p));
  body_.push_back("<circle cx=\"" + fmt4(sc.x) + "\" cy=\"" + fmt4(sc.y) + "\" r=\"2.5000\" fill=\"#000000\"/>");
  body_.push_back("<text x=\"" + fmt4(sc.x + 5.0) + "\" y=\"" + fmt4(sc.y - 5.0) +
                  "\" font-family=\"serif\" font-size=\"13\">" + escape(text) + "</text>");
}

void SvgCanvas::domain(const dom::DomainSpec& d, const Style& s) {
  if (const auto* b = d.get_if<dom::Ball>()) {
    ball(b->center, b->radius, s, "ball");
  } else if (const auto* h = d.get_if<dom::HalfSpace>()) {
    const geo::Tangent along(h->q, geo::lorentz_cross(h->q.coords(), h->v.vec()));
    line(geo::Geodesic(along), s);
  } else if (const auto* h = d.get_if<dom::Horoball>()) {
    horoball(h->ray, s, "horoball");
  } else if (const auto* t = d.get_if<dom::EquilateralTriangle>()) {
    polygon({t->vertices.begin(), t->vertices.end()}, s, "triangle");
  } else if (const auto* p = d.get_if<dom::RegularPolygon>()) {
    polygon(p->vertices, s, "polygon");
  } else {
    for (const auto& part : d.get_if<dom::Intersection>()->parts) domain(part, s);
  }
}

std::string SvgCanvas::str() const {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n"
      "<title>" + escape(title_) + "</title>\n"
      "<circle id=\"boundary\" cx=\"250.0000\" cy=\"250.0000\" r=\"200.0000\" stroke=\"#000000\" stroke-width=\"1.0000\" fill=\"none\"/>\n";
  for (const auto& line : body_) out += line + "\n";
  out += "</svg>\n";
  return out;
}

}  // namespace hypbarrier::cli
