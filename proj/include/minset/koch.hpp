#pragma once

// Koch curves of base angle theta built from the two-map similarity system
// whose images of the unit segment are the lateral sides of the isosceles
// triangle (0, 1, 1/2 + i tan(theta)/2). Both maps reverse orientation so
// that each child triangle nests inside its parent.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "minset/errors.hpp"
#include "minset/geometry.hpp"

namespace minset {

inline constexpr int kDefaultMaxLevel = 24;
inline constexpr int kDefaultPhiDepth = 53;
inline constexpr int kDefaultPolygonSides = 12;

/// Base angle theta in radians, restricted to (0, pi/4].
template <typename Scalar = double>
class BasicAngle {
 public:
  explicit BasicAngle(Scalar theta) : theta_(theta) {
    const Scalar quarter_pi = std::numbers::pi_v<Scalar> / Scalar(4);
    if (!(theta > Scalar(0) && theta <= quarter_pi))
      throw InvalidArgument("Koch angle must lie in (0, pi/4], got " + std::to_string(double(theta)));
  }

  Scalar radians() const { return theta_; }

  /// Contraction ratio 1/(2 cos theta).
  Scalar lambda() const {
    using std::cos;
    return Scalar(1) / (Scalar(2) * cos(theta_));
  }

  Point2<Scalar> apex() const {
    using std::tan;
    return {Scalar(0.5), tan(theta_) / Scalar(2)};
  }

 private:
  Scalar theta_;
};

using Angle = BasicAngle<double>;

/// z -> translation + scale * R(rotation) * (reflect ? conj(z) : z).
template <typename Scalar = double>
struct Similarity {
  Scalar scale;
  Scalar rotation;
  Point2<Scalar> translation;
  bool reflect;

  Eigen::Matrix<Scalar, 2, 2> linear() const {
    using std::cos;
    using std::sin;
    Eigen::Matrix<Scalar, 2, 2> rot;
    rot << cos(rotation), -sin(rotation), sin(rotation), cos(rotation);
    Eigen::Matrix<Scalar, 2, 2> flip = Eigen::Matrix<Scalar, 2, 2>::Identity();
    if (reflect) flip(1, 1) = Scalar(-1);
    return scale * rot * flip;
  }

  Point2<Scalar> operator()(const Point2<Scalar>& z) const { return translation + linear() * z; }
};

/// The pair (S1, S2): S1 maps [0,1] onto [0, apex], S2 onto [apex, 1].
template <typename Scalar>
std::pair<Similarity<Scalar>, Similarity<Scalar>> similarities(const BasicAngle<Scalar>& angle) {
  const Scalar lam = angle.lambda();
  const Scalar th = angle.radians();
  Similarity<Scalar> left{lam, th, Point2<Scalar>::Zero(), true};
  Similarity<Scalar> right{lam, -th, angle.apex(), true};
  return {left, right};
}

template <typename Scalar = double>
struct BasicNodeSet {
  BasicAngle<Scalar> theta;
  int level;
  std::vector<Point2<Scalar>> nodes;
};

using NodeSet = BasicNodeSet<double>;

/// The 2^level + 1 vertices of the level-`level` Koch polygon in parameter order.
template <typename Scalar>
BasicNodeSet<Scalar> nodes(const BasicAngle<Scalar>& angle, int level, int max_level = kDefaultMaxLevel) {
  if (level < 0) throw InvalidArgument("level must be nonnegative");
  if (level > max_level)
    throw GuardError("level " + std::to_string(level) + " exceeds the configured maximum " +
                     std::to_string(max_level));

  const auto [left, right] = similarities(angle);
  const Eigen::Matrix<Scalar, 2, 2> left_lin = left.linear();
  const Eigen::Matrix<Scalar, 2, 2> right_lin = right.linear();

  std::vector<Point2<Scalar>> current{Point2<Scalar>(0, 0), Point2<Scalar>(1, 0)};
  for (int n = 0; n < level; ++n) {
    std::vector<Point2<Scalar>> next;
    next.reserve(2 * current.size() - 1);
    for (const auto& z : current) next.push_back(left.translation + left_lin * z);
    for (std::size_t k = 1; k < current.size(); ++k) next.push_back(right.translation + right_lin * current[k]);
    current = std::move(next);
  }
  return {angle, level, std::move(current)};
}

/// Natural parametrization by address-map evaluation: the binary digits of t
/// select the word S_{b1} o ... o S_{b_depth}, applied to the anchor 0.
/// Exact on dyadic t once depth reaches the position of the last 1-bit;
/// otherwise within lambda^depth * diam of the first triangle.
template <typename Scalar>
Point2<Scalar> phi(const BasicAngle<Scalar>& angle, Scalar t, int depth = kDefaultPhiDepth) {
  if (!(t >= Scalar(0) && t <= Scalar(1))) throw InvalidArgument("phi: t must lie in [0,1]");
  if (depth < 1) throw InvalidArgument("phi: depth must be at least 1");
  if (t == Scalar(1)) return {Scalar(1), Scalar(0)};

  std::vector<bool> bits(static_cast<std::size_t>(depth));
  Scalar x = t;
  for (int i = 0; i < depth; ++i) {
    x *= Scalar(2);
    bits[i] = x >= Scalar(1);
    if (bits[i]) x -= Scalar(1);
  }

  const auto [left, right] = similarities(angle);
  const Eigen::Matrix<Scalar, 2, 2> left_lin = left.linear();
  const Eigen::Matrix<Scalar, 2, 2> right_lin = right.linear();
  Point2<Scalar> z = Point2<Scalar>::Zero();
  for (int i = depth - 1; i >= 0; --i)
    z = bits[i] ? Point2<Scalar>(right.translation + right_lin * z) : Point2<Scalar>(left_lin * z);
  return z;
}

/// Upper bound on |phi(t) - phi^n(t)| for the level-n polygonal approximation:
/// lambda^n sin(theta) / (1 - lambda).
template <typename Scalar>
Scalar projection_error_bound(const BasicAngle<Scalar>& angle, int level) {
  using std::pow;
  using std::sin;
  const Scalar lam = angle.lambda();
  return pow(lam, Scalar(level)) * sin(angle.radians()) / (Scalar(1) - lam);
}

/// The level-n polygonal parametrization built by repeated perpendicular
/// projection: from the current point on the base of the active triangle,
/// move perpendicular to the base until the lateral side is hit; that side
/// becomes the base of the child triangle. A point landing on the common
/// vertex stays there.
template <typename Scalar>
Point2<Scalar> phi_projection(const BasicAngle<Scalar>& angle, Scalar t, int level) {
  using std::abs;
  using std::tan;
  if (!(t > Scalar(0) && t < Scalar(1))) throw InvalidArgument("phi_projection: t must lie in (0,1)");
  if (level < 1) throw InvalidArgument("phi_projection: level must be at least 1");

  const Scalar half_tan = tan(angle.radians()) / Scalar(2);
  const Scalar vertex_tol = Scalar(1e-12);

  // Apex of the isosceles triangle on base [p, q], on the side of `toward`.
  auto child_apex = [&](const Point2<Scalar>& p, const Point2<Scalar>& q, const Point2<Scalar>& toward) {
    const Point2<Scalar> d = q - p;
    Point2<Scalar> normal(-d.y(), d.x());
    const Point2<Scalar> mid = (p + q) / Scalar(2);
    if (normal.dot(toward - mid) < Scalar(0)) normal = -normal;
    return Point2<Scalar>(mid + half_tan * normal);
  };

  // Parameter v along [a, b] where the line through x with direction dir meets it.
  auto meet = [](const Point2<Scalar>& x, const Point2<Scalar>& dir, const Point2<Scalar>& a,
                 const Point2<Scalar>& b) {
    Eigen::Matrix<Scalar, 2, 2> m;
    m.col(0) = dir;
    m.col(1) = a - b;
    const Point2<Scalar> sol = m.colPivHouseholderQr().solve(a - x);
    return sol(1);
  };

  Point2<Scalar> base_start(0, 0);
  Point2<Scalar> base_end(1, 0);
  Point2<Scalar> apex = angle.apex();
  Point2<Scalar> x(t, 0);

  for (int step = 0; step < level; ++step) {
    const Point2<Scalar> d = base_end - base_start;
    const Point2<Scalar> dir(-d.y(), d.x());
    const Scalar v_left = meet(x, dir, base_start, apex);
    if (abs(v_left - Scalar(1)) <= vertex_tol) return apex;
    if (v_left >= Scalar(0) && v_left < Scalar(1)) {
      x = base_start + v_left * (apex - base_start);
      const Point2<Scalar> new_apex = child_apex(base_start, apex, base_end);
      base_end = apex;
      apex = new_apex;
    } else {
      const Scalar v_right = meet(x, dir, apex, base_end);
      if (abs(v_right) <= vertex_tol) return apex;
      x = apex + v_right * (base_end - apex);
      const Point2<Scalar> new_apex = child_apex(apex, base_end, base_start);
      base_start = apex;
      apex = new_apex;
    }
  }
  return x;
}

/// Open curve through the nodes with t = k / 2^level.
template <typename Scalar>
BasicSampledCurve<Scalar> node_curve(const BasicNodeSet<Scalar>& set) {
  BasicSampledCurve<Scalar> curve;
  const std::size_t n = set.nodes.size();
  curve.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    curve.samples.push_back({Scalar(k) / Scalar(n - 1), set.nodes[k]});
  curve.closed = false;
  return curve;
}

/// Vertices of the regular `sides`-gon with unit side centered at the
/// origin, counter-clockwise, edge 0 horizontal at the bottom.
template <typename Scalar>
std::vector<Point2<Scalar>> regular_polygon(int sides) {
  using std::cos;
  using std::sin;
  if (sides < 3) throw InvalidArgument("polygon needs at least 3 sides");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar radius = Scalar(1) / (Scalar(2) * sin(pi / Scalar(sides)));
  std::vector<Point2<Scalar>> out;
  out.reserve(sides);
  for (int j = 0; j < sides; ++j) {
    const Scalar a = -pi / Scalar(2) - pi / Scalar(sides) + Scalar(2) * pi * Scalar(j) / Scalar(sides);
    out.emplace_back(radius * cos(a), radius * sin(a));
  }
  return out;
}

/// Closed Jordan curve: every edge of the regular polygon replaced by a copy
/// of the level-`level` Koch polygon with its bump pointing away from the
/// center. Edge j covers t in [j/sides, (j+1)/sides).
template <typename Scalar>
BasicSampledCurve<Scalar> pi_theta(const BasicAngle<Scalar>& angle, int sides, int level) {
  if (sides < 3) throw InvalidArgument("pi_theta: sides must be at least 3");
  const auto set = nodes(angle, level);
  const auto verts = regular_polygon<Scalar>(sides);
  const std::size_t per_edge = set.nodes.size() - 1;
  const Scalar total = Scalar(sides) * Scalar(per_edge);

  BasicSampledCurve<Scalar> curve;
  curve.closed = true;
  curve.samples.reserve(sides * per_edge);
  for (int j = 0; j < sides; ++j) {
    const Point2<Scalar>& origin = verts[j];
    const Point2<Scalar> along = verts[(j + 1) % sides] - origin;
    const Point2<Scalar> outward(along.y(), -along.x());
    for (std::size_t k = 0; k < per_edge; ++k) {
      const Point2<Scalar>& w = set.nodes[k];
      const Scalar t = (Scalar(j) * Scalar(per_edge) + Scalar(k)) / total;
      curve.samples.push_back({t, Point2<Scalar>(origin + w.x() * along + w.y() * outward)});
    }
  }
  return curve;
}

/// Elevation of the first segment of the level-`level` Koch polygon above
/// its base. Alternates between theta (odd levels) and 0 (even levels)
/// because S1 o S1 is a pure scaling.
template <typename Scalar>
Scalar first_segment_elevation(const BasicAngle<Scalar>& angle, int level) {
  using std::atan2;
  if (level == 0) return Scalar(0);
  const auto set = nodes(angle, level);
  const Point2<Scalar>& p = set.nodes[1];
  return atan2(p.y(), p.x());
}

/// Interior angle of a closed sampled curve at sample `index`, measured
/// between the incoming and outgoing segments on the polygon's inner side
/// (curve assumed counter-clockwise).
template <typename Scalar>
Scalar interior_angle(const BasicSampledCurve<Scalar>& curve, std::size_t index) {
  using std::atan2;
  const std::size_t n = curve.size();
  const Point2<Scalar>& prev = curve.z((index + n - 1) % n);
  const Point2<Scalar>& here = curve.z(index);
  const Point2<Scalar>& next = curve.z((index + 1) % n);
  const Point2<Scalar> back = prev - here;
  const Point2<Scalar> fwd = next - here;
  // Counter-clockwise sweep from fwd to back is the interior side.
  Scalar a = atan2(fwd.x() * back.y() - fwd.y() * back.x(), fwd.dot(back));
  if (a < Scalar(0)) a += Scalar(2) * std::numbers::pi_v<Scalar>;
  return a;
}

}  // namespace minset
