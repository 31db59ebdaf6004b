#pragma once

// Discrete approximations of the Green function with pole at infinity of a
// compact planar curve, and local decay-exponent fits near the curve.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minset/geometry.hpp"

namespace minset {

inline constexpr double kNoiseFloor = 1e-6;

struct LejaSet {
  std::vector<Point> points;
  /// Position of each point in the candidate list.
  std::vector<std::size_t> indices;
  /// log of max over candidates of prod_{j<=k} |z - points[j]|, k = 0..N-1.
  std::vector<double> log_sup_norms;

  std::size_t size() const { return points.size(); }
};

/// Greedy Leja sequence: the first point is a candidate farthest from the
/// candidate centroid, each next one maximizes the product of distances to
/// the points chosen so far. Ties go to the lowest candidate index.
LejaSet leja_points(std::span<const Point> candidates, std::size_t count);

/// Point-charge surrogate of the Green function:
/// (1/N)(sum_{j<N} log|z - p_j| - log sup_norm_{N-1}), clamped at 0.
double v_hat(const Point& z, const LejaSet& leja, std::size_t n);

/// Mean of log|z - w| over w uniform on the segment [a, b] (closed form).
double segment_log_mean(const Point& z, const Point& a, const Point& b);

/// Green-function surrogate resolved below the Leja spacing. The curve is
/// cut into one panel per Leja point (boundaries halfway, in sample index,
/// between neighbouring Leja points), each panel carries a charge spread
/// uniformly in arc length, and the charges are fixed by requiring a
/// constant potential at the Leja points.
class LejaPanelPotential {
 public:
  /// `leja` must have been built from curve.points().
  LejaPanelPotential(const SampledCurve& curve, const LejaSet& leja);

  double operator()(const Point& z) const;

  /// Potential of the discrete measure (before subtracting the constant).
  double log_potential(const Point& z) const;

  double robin_constant() const { return robin_; }
  const Eigen::VectorXd& charges() const { return charges_; }
  std::size_t panel_count() const { return panels_.size(); }

 private:
  struct Piece {
    Point a;
    Point b;
    double weight;  // fraction of the panel's charge
  };
  double panel_potential(std::size_t panel, const Point& z) const;

  std::vector<std::vector<Piece>> panels_;
  Eigen::VectorXd charges_;
  double robin_ = 0;
};

enum class OpenSide { Left, Right };

struct FitOptions {
  /// Probe direction; defaults to the outward normal at the base point.
  std::optional<Point> direction;
  /// Which side counts as outward for open curves.
  OpenSide side = OpenSide::Left;
  double noise_floor = kNoiseFloor;
};

struct LsFit {
  double base_t = 0;
  Point base_point = Point::Zero();
  Point direction = Point::Zero();
  std::vector<double> distances;
  std::vector<double> values;
  std::vector<bool> used;
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Point on the sampled polyline at parameter t.
Point curve_point(const SampledCurve& curve, double t);

/// Unit normal at parameter t: perpendicular to the chord of the neighbouring
/// samples, pointing out of the enclosed region for closed curves and to the
/// requested side for open ones.
Point outward_normal(const SampledCurve& curve, double t, OpenSide side = OpenSide::Left);

/// Least-squares slope of log V against log d for probes base + d * direction.
LsFit ls_fit(const SampledCurve& curve, const LejaPanelPotential& potential, double base_t,
             std::span<const double> distances, const FitOptions& options = {});

LsFit ls_fit(const SampledCurve& curve, const LejaSet& leja, double base_t, std::span<const double> distances,
             const FitOptions& options = {});

struct LsExponentEstimate {
  double exponent = 0;
  std::vector<LsFit> fits;
  std::vector<double> aborted_bases;
  std::vector<std::string> abort_reasons;
};

/// Largest local decay exponent over the base points; bases whose fit
/// aborts are listed with the reason.
LsExponentEstimate ls_exponent_estimate(const SampledCurve& curve, const LejaPanelPotential& potential,
                                        std::span<const double> base_points, std::span<const double> distances,
                                        const FitOptions& options = {});

LsExponentEstimate ls_exponent_estimate(const SampledCurve& curve, const LejaSet& leja,
                                        std::span<const double> base_points, std::span<const double> distances,
                                        const FitOptions& options = {});

/// Probe distances 2^-3 .. 2^-8.
std::vector<double> default_probe_distances();

/// Complex inversion z -> 1/z.
Point invert(const Point& z);

/// The curve with every sample inverted through the unit circle.
SampledCurve inverted_curve(const SampledCurve& curve);

/// Glued function: outer surrogate outside the curve, 0 on it, and the
/// surrogate of the inverted curve at 1/z inside. The curve must enclose 0.
double tilde_v_hat(const Point& z, const SampledCurve& curve, const LejaSet& leja_outer, const LejaSet& leja_inner,
                   std::size_t n);

}  // namespace minset
