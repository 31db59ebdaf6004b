#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "minset/errors.hpp"

namespace minset {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point = Point2<double>;

template <typename Scalar>
struct BasicSample {
  Scalar t;
  Point2<Scalar> z;
};

/// Ordered parameter/point pairs along a curve. For closed curves the first
/// sample is implicitly revisited after the last one.
template <typename Scalar>
struct BasicSampledCurve {
  std::vector<BasicSample<Scalar>> samples;
  bool closed = false;

  std::size_t size() const { return samples.size(); }
  const Point2<Scalar>& z(std::size_t i) const { return samples[i].z; }
  Scalar t(std::size_t i) const { return samples[i].t; }

  std::vector<Point2<Scalar>> points() const {
    std::vector<Point2<Scalar>> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.z);
    return out;
  }
};

using Sample = BasicSample<double>;
using SampledCurve = BasicSampledCurve<double>;

/// Throws FormatError unless t is strictly increasing in [0,1] and no two
/// consecutive samples coincide.
template <typename Scalar>
void validate(const BasicSampledCurve<Scalar>& curve) {
  const auto& s = curve.samples;
  if (s.size() < 2) throw FormatError("curve needs at least 2 samples");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].t >= Scalar(0) && s[i].t <= Scalar(1)))
      throw FormatError("sample parameter outside [0,1] at index " + std::to_string(i));
    if (!s[i].z.allFinite()) throw FormatError("non-finite sample point at index " + std::to_string(i));
    if (i > 0) {
      if (!(s[i].t > s[i - 1].t))
        throw FormatError("sample parameters not strictly increasing at index " + std::to_string(i));
      if (s[i].z == s[i - 1].z)
        throw FormatError("consecutive samples coincide at index " + std::to_string(i));
    }
  }
  if (curve.closed && s.front().z == s.back().z)
    throw FormatError("closed curve must not repeat its first sample at the end");
}

template <typename Scalar>
Scalar diameter(const std::vector<Point2<Scalar>>& pts) {
  Scalar best(0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm());
  return best;
}

template <typename Scalar>
Scalar diameter(const BasicSampledCurve<Scalar>& curve) {
  return diameter(curve.points());
}

/// Even-odd ray casting against the closed polygon through `poly`.
template <typename Scalar>
bool point_in_polygon(const Point2<Scalar>& p, const std::vector<Point2<Scalar>>& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const Scalar x_cross = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

/// Distance from p to the segment [a,b].
template <typename Scalar>
Scalar segment_distance(const Point2<Scalar>& p, const Point2<Scalar>& a, const Point2<Scalar>& b) {
  const Point2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  Scalar s = len2 > Scalar(0) ? (p - a).dot(ab) / len2 : Scalar(0);
  s = std::clamp(s, Scalar(0), Scalar(1));
  return (p - (a + s * ab)).norm();
}

/// Distance from p to the polyline through the samples (closing edge included
/// for closed curves).
template <typename Scalar>
Scalar polyline_distance(const Point2<Scalar>& p, const BasicSampledCurve<Scalar>& curve) {
  const std::size_t n = curve.size();
  Scalar best = (p - curve.z(0)).norm();
  const std::size_t edges = curve.closed ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i)
    best = std::min(best, segment_distance(p, curve.z(i), curve.z((i + 1) % n)));
  return best;
}

inline Point2<double> rotate90(const Point2<double>& v) { return {-v.y(), v.x()}; }

}  // namespace minset
