#include "minset/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "minset/errors.hpp"
#include "minset/estimators.hpp"

namespace minset {

LejaSet leja_points(std::span<const Point> candidates, std::size_t count) {
  const std::size_t m = candidates.size();
  if (count < 2) throw InvalidArgument("leja_points: need at least 2 points");
  if (count > m) throw InvalidArgument("leja_points: more points requested than candidates");

  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(candidates[a].x(), candidates[a].y()) < std::tie(candidates[b].x(), candidates[b].y());
  });
  if (candidates[order.front()] == candidates[order.back()])
    throw InvalidArgument("leja_points: degenerate candidate set (all points equal)");
  for (std::size_t i = 1; i < m; ++i)
    if (candidates[order[i]] == candidates[order[i - 1]])
      throw InvalidArgument("leja_points: duplicate candidate points");

  Point centroid = Point::Zero();
  for (const auto& c : candidates) centroid += c;
  centroid /= static_cast<double>(m);

  std::size_t first = 0;
  double far = -1;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = (candidates[i] - centroid).norm();
    if (d > far) {
      far = d;
      first = i;
    }
  }

  LejaSet set;
  set.points.reserve(count);
  set.indices.reserve(count);
  set.log_sup_norms.reserve(count);

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_prod(m, 0.0);
  std::size_t chosen = first;
  for (std::size_t k = 0; k < count; ++k) {
    set.points.push_back(candidates[chosen]);
    set.indices.push_back(chosen);
    const Point& p = candidates[chosen];
    std::size_t next = 0;
    double best = neg_inf;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = (candidates[i] - p).norm();
      log_prod[i] = d > 0 ? log_prod[i] + std::log(d) : neg_inf;
      if (log_prod[i] > best) {
        best = log_prod[i];
        next = i;
      }
    }
    set.log_sup_norms.push_back(best);
    chosen = next;
  }
  return set;
}

double v_hat(const Point& z, const LejaSet& leja, std::size_t n) {
  if (n < 2 || n > leja.size()) throw InvalidArgument("v_hat: N must lie in [2, |leja|]");
  double sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = (z - leja.points[j]).norm();
    if (d == 0) return 0;
    sum += std::log(d);
  }
  return std::max(0.0, (sum - leja.log_sup_norms[n - 1]) / static_cast<double>(n));
}

double segment_log_mean(const Point& z, const Point& a, const Point& b) {
  // With u = b - a and zeta = (z - a)/u, the mean is
  // log|u| + Re[zeta log zeta - (zeta - 1) log(zeta - 1)] - 1.
  const Point u = b - a;
  const double len2 = u.squaredNorm();
  const Point w = z - a;
  const double x = w.dot(u) / len2;
  const double y = (u.x() * w.y() - u.y() * w.x()) / len2;
  auto x_log_r = [](double re, double im) {
    const double r = std::hypot(re, im);
    return r > 0 ? re * std::log(r) : 0.0;
  };
  // arg(zeta) - arg(zeta - 1), continuous off the segment.
  const double subtended = std::atan2(y * (x - 1) - x * y, x * (x - 1) + y * y);
  return 0.5 * std::log(len2) + x_log_r(x, y) - x_log_r(x - 1, y) - y * subtended - 1.0;
}

namespace {

// Point at fractional sample position f along the polyline.
Point polyline_at(const SampledCurve& curve, double f) {
  const std::size_t m = curve.size();
  const double fl = std::floor(f);
  const double frac = f - fl;
  const auto i = static_cast<std::ptrdiff_t>(fl);
  auto wrap = [&](std::ptrdiff_t k) { return static_cast<std::size_t>(((k % static_cast<std::ptrdiff_t>(m)) + m) % m); };
  const Point& a = curve.z(wrap(i));
  if (frac == 0) return a;
  const Point& b = curve.z(wrap(i + 1));
  return a + frac * (b - a);
}

}  // namespace

LejaPanelPotential::LejaPanelPotential(const SampledCurve& curve, const LejaSet& leja) {
  const std::size_t m = curve.size();
  const std::size_t n = leja.size();
  if (n < 2) throw InvalidArgument("LejaPanelPotential: need at least 2 Leja points");
  for (std::size_t j = 0; j < n; ++j)
    if (leja.indices[j] >= m || curve.z(leja.indices[j]) != leja.points[j])
      throw InvalidArgument("LejaPanelPotential: Leja set was not built from this curve's samples");

  std::vector<std::size_t> sorted = leja.indices;
  std::sort(sorted.begin(), sorted.end());

  panels_.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto here = static_cast<double>(sorted[q]);
    double lo;
    double hi;
    if (curve.closed) {
      const double prev = q == 0 ? static_cast<double>(sorted[n - 1]) - m : static_cast<double>(sorted[q - 1]);
      const double next = q == n - 1 ? static_cast<double>(sorted[0]) + m : static_cast<double>(sorted[q + 1]);
      lo = (prev + here) / 2;
      hi = (here + next) / 2;
    } else {
      lo = q == 0 ? 0.0 : (static_cast<double>(sorted[q - 1]) + here) / 2;
      hi = q == n - 1 ? static_cast<double>(m - 1) : (here + static_cast<double>(sorted[q + 1])) / 2;
    }
    std::vector<Point> verts{polyline_at(curve, lo)};
    for (double k = std::floor(lo) + 1; k < hi; k += 1) verts.push_back(polyline_at(curve, k));
    verts.push_back(polyline_at(curve, hi));

    double total = 0;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) total += (verts[i + 1] - verts[i]).norm();
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      const double len = (verts[i + 1] - verts[i]).norm();
      if (len > 0) panels_[q].push_back({verts[i], verts[i + 1], len / total});
    }
  }

  // Collocation at the Leja points (in curve order): sum_j q_j U_j(p_i) - R = 0,
  // sum_j q_j = 1.
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = curve.z(sorted[i]);
    for (std::size_t j = 0; j < n; ++j) system(i, j) = panel_potential(j, p);
    system(i, n) = -1;
  }
  system.row(n).head(n).setOnes();
  rhs(n) = 1;
  const Eigen::VectorXd sol = system.partialPivLu().solve(rhs);
  if (!sol.allFinite()) throw GuardError("LejaPanelPotential: singular collocation system");
  charges_ = sol.head(n);
  robin_ = sol(n);
}

double LejaPanelPotential::panel_potential(std::size_t panel, const Point& z) const {
  double sum = 0;
  for (const auto& piece : panels_[panel]) sum += piece.weight * segment_log_mean(z, piece.a, piece.b);
  return sum;
}

double LejaPanelPotential::log_potential(const Point& z) const {
  double sum = 0;
  for (std::size_t j = 0; j < panels_.size(); ++j) sum += charges_(j) * panel_potential(j, z);
  return sum;
}

double LejaPanelPotential::operator()(const Point& z) const { return std::max(0.0, log_potential(z) - robin_); }

Point curve_point(const SampledCurve& curve, double t) {
  const std::size_t m = curve.size();
  if (!(t >= 0 && t <= 1)) throw InvalidArgument("curve_point: t must lie in [0,1]");
  if (t <= curve.t(0)) {
    if (!curve.closed || t == curve.t(0)) return curve.z(0);
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (t >= curve.t(i) && t <= curve.t(i + 1)) {
      const double s = (t - curve.t(i)) / (curve.t(i + 1) - curve.t(i));
      return curve.z(i) + s * (curve.z(i + 1) - curve.z(i));
    }
  }
  if (!curve.closed) return curve.z(m - 1);
  // Closing edge from the last sample to the first, parameter wrapping past 1.
  const double t0 = curve.t(m - 1);
  const double t1 = curve.t(0) + 1.0;
  const double tt = t < curve.t(0) ? t + 1.0 : t;
  const double s = (tt - t0) / (t1 - t0);
  return curve.z(m - 1) + s * (curve.z(0) - curve.z(m - 1));
}

Point outward_normal(const SampledCurve& curve, double t, OpenSide side) {
  const std::size_t m = curve.size();
  std::size_t before = 0;
  std::size_t after = 1;
  bool found = false;
  for (std::size_t i = 0; i < m && !found; ++i) {
    if (curve.t(i) == t) {
      if (curve.closed) {
        before = (i + m - 1) % m;
        after = (i + 1) % m;
      } else {
        before = i == 0 ? 0 : i - 1;
        after = i + 1 == m ? m - 1 : i + 1;
      }
      found = true;
    } else if (i + 1 < m && t > curve.t(i) && t < curve.t(i + 1)) {
      before = i;
      after = i + 1;
      found = true;
    }
  }
  if (!found) {
    if (!curve.closed) throw InvalidArgument("outward_normal: t outside the sampled range");
    before = m - 1;
    after = 0;
  }
  const Point chord = curve.z(after) - curve.z(before);
  Point normal = rotate90(chord).normalized();
  if (curve.closed) {
    const Point base = curve_point(curve, t);
    const double eps = 1e-7 * std::max(1.0, chord.norm());
    if (point_in_polygon<double>(base + eps * normal, curve.points())) normal = -normal;
  } else if (side == OpenSide::Right) {
    normal = -normal;
  }
  return normal;
}

std::vector<double> default_probe_distances() {
  std::vector<double> out;
  for (int k = 3; k <= 8; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

LsFit ls_fit(const SampledCurve& curve, const LejaPanelPotential& potential, double base_t,
             std::span<const double> distances, const FitOptions& options) {
  if (distances.size() < 4) throw InvalidArgument("ls_fit: need at least 4 probe distances");
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!(distances[i] > 0 && distances[i] <= 1)) throw InvalidArgument("ls_fit: distances must lie in (0,1]");
    if (i > 0 && !(distances[i] < distances[i - 1]))
      throw InvalidArgument("ls_fit: distances must be strictly decreasing");
  }

  LsFit fit;
  fit.base_t = base_t;
  fit.base_point = curve_point(curve, base_t);
  fit.direction = options.direction ? options.direction->normalized() : outward_normal(curve, base_t, options.side);

  std::vector<double> xs;
  std::vector<double> ys;
  for (double d : distances) {
    const double v = potential(fit.base_point + d * fit.direction);
    fit.distances.push_back(d);
    fit.values.push_back(v);
    const bool keep = v > options.noise_floor;
    fit.used.push_back(keep);
    if (keep) {
      xs.push_back(std::log(d));
      ys.push_back(std::log(v));
    }
  }
  if (xs.size() < 3) throw GuardError("ls_fit: fewer than 3 probes above the noise floor");

  Eigen::MatrixXd design(xs.size(), 2);
  Eigen::VectorXd target(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    design(i, 0) = xs[i];
    design(i, 1) = 1.0;
    target(i) = ys[i];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
  fit.slope = coef(0);
  fit.intercept = coef(1);
  const Eigen::VectorXd resid = target - design * coef;
  const double mean = target.mean();
  const double total = (target.array() - mean).square().sum();
  fit.r_squared = total > 0 ? 1.0 - resid.squaredNorm() / total : 1.0;
  return fit;
}

LsFit ls_fit(const SampledCurve& curve, const LejaSet& leja, double base_t, std::span<const double> distances,
             const FitOptions& options) {
  return ls_fit(curve, LejaPanelPotential(curve, leja), base_t, distances, options);
}

LsExponentEstimate ls_exponent_estimate(const SampledCurve& curve, const LejaSet& leja,
                                        std::span<const double> base_points, std::span<const double> distances,
                                        const FitOptions& options) {
  return ls_exponent_estimate(curve, LejaPanelPotential(curve, leja), base_points, distances, options);
}

LsExponentEstimate ls_exponent_estimate(const SampledCurve& curve, const LejaPanelPotential& potential,
                                        std::span<const double> base_points, std::span<const double> distances,
                                        const FitOptions& options) {
  if (base_points.empty()) throw InvalidArgument("ls_exponent_estimate: need at least one base point");
  LsExponentEstimate out;
  out.exponent = -std::numeric_limits<double>::infinity();
  for (double t : base_points) {
    try {
      auto fit = ls_fit(curve, potential, t, distances, options);
      out.exponent = std::max(out.exponent, fit.slope);
      out.fits.push_back(std::move(fit));
    } catch (const GuardError& e) {
      out.aborted_bases.push_back(t);
      out.abort_reasons.emplace_back(e.what());
    }
  }
  if (out.fits.empty()) throw GuardError("ls_exponent_estimate: every fit aborted");
  return out;
}

Point invert(const Point& z) {
  const double r2 = z.squaredNorm();
  if (r2 == 0) throw InvalidArgument("invert: z must be nonzero");
  return Point(z.x() / r2, -z.y() / r2);
}

SampledCurve inverted_curve(const SampledCurve& curve) {
  SampledCurve out = curve;
  for (auto& s : out.samples) s.z = invert(s.z);
  return out;
}

double tilde_v_hat(const Point& z, const SampledCurve& curve, const LejaSet& leja_outer, const LejaSet& leja_inner,
                   std::size_t n) {
  if (z.squaredNorm() == 0) throw InvalidArgument("tilde_v_hat: z must be nonzero");
  if (!curve.closed) throw InvalidArgument("tilde_v_hat: curve must be closed");
  const double diam = hull_diameter(curve.points());
  if (polyline_distance(z, curve) <= 1e-12 * diam) return 0;
  if (point_in_polygon<double>(z, curve.points())) return v_hat(invert(z), leja_inner, n);
  return v_hat(z, leja_outer, n);
}

}  // namespace minset
