#ifndef HOTOPO_GEOMETRY_HPP
#define HOTOPO_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace hotopo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

struct BBox {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void expand(const Vec2& p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  bool contains(const Vec2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  bool overlaps(const BBox& o) const {
    return !(o.xmax < xmin || o.xmin > xmax || o.ymax < ymin || o.ymin > ymax);
  }
};

// Intersection parameters t of the segment a + t*(b-a), t in [0,1], with
// segment c-d.  Returns true and the parameter along a-b when the segments
// cross (including touching endpoints).
bool segment_segment_param(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                           double& t_ab);

// True if segment a-b intersects the closed polygon given by its vertices.
bool segment_intersects_polygon(const Vec2& a, const Vec2& b, const Vec2* poly, int n);

}  // namespace hotopo

#endif
