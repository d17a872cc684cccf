#pragma once

// Poincare-disk drawings as SVG 1.1. The unit disk maps to a circle of
// radius 200 centered at (250, 250); disk y points up.

#include <string>
#include <vector>

#include "hypbarrier/domains.hpp"
#include "hypbarrier/hypgeo.hpp"

namespace hypbarrier::cli {

struct Style {
  std::string stroke = "#222222";
  std::string fill = "none";
  double width = 1.5;
  std::string dash;
  double fill_opacity = 1.0;
};

class SvgCanvas {
 public:
  static constexpr double kCenter = 250.0;
  static constexpr double kScale = 200.0;

  explicit SvgCanvas(std::string title);

  /// Euclidean circle given in disk coordinates.
  void circle(geo::DiskPoint c, double r, const Style& s, const std::string& id = {});
  /// Hyperbolic ball as its Euclidean image.
  void ball(const geo::Point& c, double r, const Style& s, const std::string& id = {});
  /// Horoball as the disk tangent to the boundary at its ideal point.
  void horoball(const geo::GeodesicRay& ray, const Style& s, const std::string& id = {});
  /// Geodesic segment between two disk points (ideal points allowed).
  void segment(geo::DiskPoint a, geo::DiskPoint b, const Style& s);
  void segment(const geo::Point& a, const geo::Point& b, const Style& s);
  /// Complete geodesic through g.
  void line(const geo::Geodesic& g, const Style& s);
  /// Closed geodesic polygon.
  void polygon(const std::vector<geo::Point>& vertices, const Style& s, const std::string& id = {});
  void label(const geo::Point& p, const std::string& text);
  void domain(const dom::DomainSpec& d, const Style& s);

  std::string str() const;

 private:
  std::string arc_to(geo::DiskPoint from, geo::DiskPoint to) const;

  std::string title_;
  std::vector<std::string> body_;
};

/// Euclidean center and radius of the image of B(c, r).
struct DiskCircle {
  geo::DiskPoint center;
  double radius = 0.0;
};
DiskCircle ball_image(const geo::Point& c, double r);
DiskCircle horoball_image(const geo::GeodesicRay& ray);

/// Fixed-point text with four decimals ("-0.0000" printed as "0.0000").
std::string fmt4(double x);

}  // namespace hypbarrier::cli
