#include "stability/hn_engine.hpp"

#include <algorithm>

namespace stab::hn {

ChargePlane ChargePlane::nested(NestedChargeSpec spec) {
  spec.validate();
  std::string label = "nested(j=" + std::to_string(spec.j) + ",k=" + std::to_string(spec.k) + ")";
  return ChargePlane([spec = std::move(spec)](const ChargePolynomial& p) { return nested_charge(p, spec); },
                     std::move(label));
}

ExtendedSlope plane_slope(const GaussianRational& z) {
  if (z.im.is_zero() && z.re.sign() > 0) {
    throw Error(Errc::kPreconditionViolated,
                "charge " + format_gaussian(z) + " lies on the positive real axis");
  }
  return slope_of(z);
}

bool on_ray(const GaussianRational& z, const ExtendedSlope& mu) {
  return z.is_zero() || plane_slope(z) == mu;
}

namespace {

using Point = GaussianRational;

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
}

bool point_less(const Point& x, const Point& y) {
  if (x.re != y.re) return x.re < y.re;
  return x.im < y.im;
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p).sign() <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::vector<GaussianRational> extremal_path(std::vector<GaussianRational> points,
                                            const GaussianRational& target) {
  const Point origin{};
  if (target.is_zero()) return {origin};
  points.push_back(origin);
  points.push_back(target);
  for (const auto& p : points) {
    if (p.im.sign() < 0) throw Error(Errc::kNegativeImaginary, "charge below the real axis");
  }
  const auto hull = convex_hull(std::move(points));
  if (hull.size() <= 2) return {origin, target};

  const auto find = [&](const Point& p) {
    const auto it = std::find(hull.begin(), hull.end(), p);
    if (it == hull.end()) throw Error(Errc::kPreconditionViolated, "endpoint is not a hull vertex");
    return static_cast<std::size_t>(it - hull.begin());
  };
  // Counter-clockwise from the target back to the origin runs along the
  // left side of 0 -> target.
  std::vector<Point> path;
  for (std::size_t i = find(target), stop = find(origin);; i = (i + 1) % hull.size()) {
    path.push_back(hull[i]);
    if (i == stop) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace stab::hn
