#include "hotopo/geometry.hpp"

namespace hotopo {

bool segment_segment_param(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                           double& t_ab) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = cross(r, s);
  const Vec2 qp = c - a;
  if (denom == 0.0) {
    // Parallel; collinear overlaps contribute their endpoints via the
    // neighbouring edges, so nothing to report here.
    return false;
  }
  const double t = cross(qp, s) / denom;
  const double u = cross(qp, r) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return false;
  t_ab = t;
  return true;
}

bool segment_intersects_polygon(const Vec2& a, const Vec2& b, const Vec2* poly, int n) {
  double t;
  for (int i = 0; i < n; ++i) {
    if (segment_segment_param(a, b, poly[i], poly[(i + 1) % n], t)) return true;
  }
  // No edge crossing: either disjoint or one fully contains the other.
  // Check a segment endpoint against the polygon (convex or not, winding test
  // via crossing number is overkill here; polygons are convex-ish mesh
  // elements, use the sign test against all edges for triangles/quads).
  auto inside = [&](const Vec2& p) {
    for (int i = 0; i < n; ++i) {
      const Vec2& u = poly[i];
      const Vec2& v = poly[(i + 1) % n];
      if (cross(v - u, p - u) < 0.0) return false;
    }
    return true;
  };
  if (inside(a) || inside(b)) return true;
  // Polygon inside segment's span without edge crossing is impossible for
  // 1D segments, done.
  return false;
}

}  // namespace hotopo
