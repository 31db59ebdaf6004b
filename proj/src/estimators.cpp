#include "minset/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "minset/constants.hpp"
#include "minset/errors.hpp"
#include "minset/parallel.hpp"

namespace minset {
namespace {

constexpr std::size_t kRowChunks = 64;
constexpr std::size_t kSampleChunk = 4096;

// Best value with an index tuple witness; ties resolve to the smaller tuple.
template <std::size_t N>
struct Extreme {
  double value = 0;
  std::array<std::size_t, N> idx{};
  bool set = false;
};

template <std::size_t N>
void keep_max(Extreme<N>& best, double value, const std::array<std::size_t, N>& idx) {
  if (!best.set || value > best.value || (value == best.value && idx < best.idx)) {
    best.value = value;
    best.idx = idx;
    best.set = true;
  }
}

template <std::size_t N>
void keep_min(Extreme<N>& best, double value, const std::array<std::size_t, N>& idx) {
  if (!best.set || value < best.value || (value == best.value && idx < best.idx)) {
    best.value = value;
    best.idx = idx;
    best.set = true;
  }
}

double param_gap(const SampledCurve& curve, std::size_t i, std::size_t j) {
  const double dt = std::abs(curve.t(i) - curve.t(j));
  return curve.closed ? std::min(dt, 1.0 - dt) : dt;
}

struct HolderPartial {
  Extreme<2> lo;
  Extreme<2> hi;
  std::size_t pairs = 0;
};

void visit_pair(const SampledCurve& curve, double gamma, std::size_t i, std::size_t j, HolderPartial& part) {
  if (i > j) std::swap(i, j);
  const double gap = param_gap(curve, i, j);
  if (!(gap > 0)) throw InvalidArgument("empirical_holder: duplicate parameter values");
  const double ratio = (curve.z(i) - curve.z(j)).norm() / std::pow(gap, gamma);
  keep_min(part.lo, ratio, {i, j});
  keep_max(part.hi, ratio, {i, j});
  ++part.pairs;
}

std::uniform_int_distribution<std::size_t> index_dist(std::size_t m) {
  return std::uniform_int_distribution<std::size_t>(0, m - 1);
}

}  // namespace

std::string describe(const SamplingMode& mode) {
  if (std::holds_alternative<Exhaustive>(mode)) return "exhaustive";
  return "sampled";
}

HolderEstimate empirical_holder(const SampledCurve& curve, double gamma, const SamplingMode& mode) {
  if (curve.size() < 2) throw InvalidArgument("empirical_holder: need at least 2 samples");
  if (!(gamma > 0 && gamma <= 1)) throw InvalidArgument("empirical_holder: gamma must lie in (0,1]");
  const std::size_t m = curve.size();

  HolderEstimate est;
  est.gamma_used = gamma;
  est.mode_used = mode;
  if (std::holds_alternative<Exhaustive>(mode) && m > kMaxExhaustivePairSamples) {
    est.mode_used = Sampled{0, kForcedHolderPairs};
    est.forced_sampled = true;
  }

  std::vector<HolderPartial> parts;
  if (std::holds_alternative<Exhaustive>(est.mode_used)) {
    parts.resize(std::min(kRowChunks, m));
    const std::size_t stride = parts.size();
    for_each_chunk(parts.size(), [&](std::size_t c) {
      for (std::size_t i = c; i < m; i += stride)
        for (std::size_t j = i + 1; j < m; ++j) visit_pair(curve, gamma, i, j, parts[c]);
    });
  } else {
    const auto& s = std::get<Sampled>(est.mode_used);
    if (s.count == 0) throw InvalidArgument("empirical_holder: sample count must be positive");
    const std::size_t chunks = (s.count + kSampleChunk - 1) / kSampleChunk;
    parts.resize(chunks);
    for_each_chunk(chunks, [&](std::size_t c) {
      std::mt19937_64 rng(chunk_seed(s.seed, c));
      auto dist = index_dist(m);
      const std::size_t n = std::min(kSampleChunk, s.count - c * kSampleChunk);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = dist(rng);
        std::size_t j = dist(rng);
        while (j == i) j = dist(rng);
        visit_pair(curve, gamma, i, j, parts[c]);
      }
    });
  }

  HolderPartial total;
  for (const auto& p : parts) {
    if (p.lo.set) keep_min(total.lo, p.lo.value, p.lo.idx);
    if (p.hi.set) keep_max(total.hi, p.hi.value, p.hi.idx);
    total.pairs += p.pairs;
  }
  est.ratio_min = total.lo.value;
  est.ratio_max = total.hi.value;
  est.argmin_pair = {curve.t(total.lo.idx[0]), curve.t(total.lo.idx[1])};
  est.argmax_pair = {curve.t(total.hi.idx[0]), curve.t(total.hi.idx[1])};
  est.pair_count = total.pairs;
  return est;
}

double hull_diameter(std::vector<Point> pts) {
  if (pts.size() < 2) return 0;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return std::tie(a.x(), a.y()) < std::tie(b.x(), b.y());
  });
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, (hull[i] - hull[j]).norm());
  return best;
}

double default_delta(const SampledCurve& curve) { return hull_diameter(curve.points()) / 4.0; }

namespace {

struct AhlforsPartial {
  Extreme<3> best;  // (i, k, j)
  std::size_t triples = 0;
  std::size_t pairs = 0;
  std::size_t degenerate = 0;
};

struct AhlforsContext {
  const SampledCurve& curve;
  double delta;
  double degenerate_below;
};

// Visits the interior of the arc from i to k (i < k). `inner` selects the
// index range i+1..k-1; otherwise k+1..m-1, 0..i-1.
void scan_arc(const AhlforsContext& ctx, std::size_t i, std::size_t k, bool inner, AhlforsPartial& part) {
  const auto& c = ctx.curve;
  const std::size_t m = c.size();
  const Point& zi = c.z(i);
  const Point& zk = c.z(k);
  const double base = (zi - zk).norm();
  auto visit = [&](std::size_t j) {
    const Point& zj = c.z(j);
    const double v = ((zi - zj).norm() + (zj - zk).norm()) / base;
    keep_max(part.best, v, {i, k, j});
    ++part.triples;
  };
  if (inner) {
    for (std::size_t j = i + 1; j < k; ++j) visit(j);
  } else {
    for (std::size_t j = k + 1; j < m; ++j) visit(j);
    for (std::size_t j = 0; j < i; ++j) visit(j);
  }
}

// Classifies the pair; returns false when it does not bound any admissible triple.
bool admissible(const AhlforsContext& ctx, std::size_t i, std::size_t k, AhlforsPartial& part) {
  const double d = (ctx.curve.z(i) - ctx.curve.z(k)).norm();
  if (d > ctx.delta) return false;
  if (d <= ctx.degenerate_below) {
    ++part.degenerate;
    return false;
  }
  return true;
}

bool inner_arc_is_smaller(double inner_diam, double outer_diam, std::size_t inner_count, std::size_t outer_count) {
  if (inner_diam != outer_diam) return inner_diam < outer_diam;
  return inner_count <= outer_count;
}

void exhaustive_open_row(const AhlforsContext& ctx, std::size_t i, AhlforsPartial& part) {
  const std::size_t m = ctx.curve.size();
  for (std::size_t k = i + 2; k < m; ++k) {
    if (!admissible(ctx, i, k, part)) continue;
    ++part.pairs;
    scan_arc(ctx, i, k, true, part);
  }
}

void exhaustive_closed_row(const AhlforsContext& ctx, std::size_t i, const std::vector<double>& prefix_diam,
                           AhlforsPartial& part) {
  const auto& c = ctx.curve;
  const std::size_t m = c.size();
  // outer_diam[k]: diameter of samples k..m-1, 0..i.
  std::vector<double> outer_diam(m + 1, 0.0);
  outer_diam[m] = prefix_diam[i];
  for (std::size_t k = m; k-- > i + 1;) {
    double d = outer_diam[k + 1];
    for (std::size_t j = k + 1; j < m; ++j) d = std::max(d, (c.z(k) - c.z(j)).norm());
    for (std::size_t j = 0; j <= i; ++j) d = std::max(d, (c.z(k) - c.z(j)).norm());
    outer_diam[k] = d;
  }
  double inner_diam = 0;
  for (std::size_t k = i + 1; k < m; ++k) {
    for (std::size_t j = i; j < k; ++j) inner_diam = std::max(inner_diam, (c.z(j) - c.z(k)).norm());
    if (!admissible(ctx, i, k, part)) continue;
    const std::size_t inner_count = k - i + 1;
    const std::size_t outer_count = m - (k - i) + 1;
    const bool inner = inner_arc_is_smaller(inner_diam, outer_diam[k], inner_count, outer_count);
    if ((inner ? inner_count : outer_count) < 3) continue;
    ++part.pairs;
    scan_arc(ctx, i, k, inner, part);
  }
}

bool choose_inner_sampled(const SampledCurve& c, std::size_t i, std::size_t k) {
  const std::size_t m = c.size();
  std::vector<Point> inner_pts;
  std::vector<Point> outer_pts;
  for (std::size_t j = i; j <= k; ++j) inner_pts.push_back(c.z(j));
  for (std::size_t j = k; j < m; ++j) outer_pts.push_back(c.z(j));
  for (std::size_t j = 0; j <= i; ++j) outer_pts.push_back(c.z(j));
  return inner_arc_is_smaller(hull_diameter(inner_pts), hull_diameter(outer_pts), inner_pts.size(),
                              outer_pts.size());
}

}  // namespace

AhlforsEstimate empirical_ahlfors(const SampledCurve& curve, std::optional<double> delta, const SamplingMode& mode) {
  const std::size_t m = curve.size();
  if (m < 3) throw InvalidArgument("empirical_ahlfors: need at least 3 samples");
  const double diam = hull_diameter(curve.points());
  const double delta_used = delta.value_or(diam / 4.0);
  if (!(delta_used > 0)) throw InvalidArgument("empirical_ahlfors: delta must be positive");

  AhlforsEstimate est;
  est.delta_used = delta_used;
  est.mode_used = mode;
  if (std::holds_alternative<Exhaustive>(mode) && m > kMaxExhaustiveTripleSamples) {
    est.mode_used = Sampled{0, kForcedAhlforsPairs};
    est.forced_sampled = true;
  }

  const AhlforsContext ctx{curve, delta_used, kDegenerateFraction * diam};
  std::vector<AhlforsPartial> parts;

  if (std::holds_alternative<Exhaustive>(est.mode_used)) {
    std::vector<double> prefix_diam;
    if (curve.closed) {
      prefix_diam.assign(m, 0.0);
      for (std::size_t i = 1; i < m; ++i) {
        double d = prefix_diam[i - 1];
        for (std::size_t j = 0; j < i; ++j) d = std::max(d, (curve.z(i) - curve.z(j)).norm());
        prefix_diam[i] = d;
      }
    }
    parts.resize(std::min(kRowChunks, m));
    const std::size_t stride = parts.size();
    for_each_chunk(parts.size(), [&](std::size_t c) {
      for (std::size_t i = c; i < m; i += stride) {
        if (curve.closed)
          exhaustive_closed_row(ctx, i, prefix_diam, parts[c]);
        else
          exhaustive_open_row(ctx, i, parts[c]);
      }
    });
  } else {
    const auto& s = std::get<Sampled>(est.mode_used);
    if (s.count == 0) throw InvalidArgument("empirical_ahlfors: sample count must be positive");
    const std::size_t chunks = (s.count + kSampleChunk - 1) / kSampleChunk;
    const std::size_t max_attempts_per_pair = 64;
    parts.resize(chunks);
    for_each_chunk(chunks, [&](std::size_t c) {
      std::mt19937_64 rng(chunk_seed(s.seed, c));
      auto dist = index_dist(m);
      const std::size_t n = std::min(kSampleChunk, s.count - c * kSampleChunk);
      for (std::size_t drawn = 0; drawn < n; ++drawn) {
        for (std::size_t attempt = 0; attempt < max_attempts_per_pair; ++attempt) {
          std::size_t i = dist(rng);
          std::size_t k = dist(rng);
          if (i > k) std::swap(i, k);
          if (k - i < 1) continue;
          if (!admissible(ctx, i, k, parts[c])) continue;
          const bool inner = curve.closed ? choose_inner_sampled(curve, i, k) : true;
          const std::size_t interior = inner ? k - i - 1 : m - (k - i) - 1;
          if (interior == 0) continue;
          ++parts[c].pairs;
          scan_arc(ctx, i, k, inner, parts[c]);
          break;
        }
      }
    });
  }

  AhlforsPartial total;
  for (const auto& p : parts) {
    if (p.best.set) keep_max(total.best, p.best.value, p.best.idx);
    total.triples += p.triples;
    total.pairs += p.pairs;
    total.degenerate += p.degenerate;
  }
  if (!total.best.set) throw GuardError("empirical_ahlfors: no admissible triple under delta");

  est.c_hat = total.best.value;
  est.arg_triple = {curve.t(total.best.idx[0]), curve.t(total.best.idx[2]), curve.t(total.best.idx[1])};
  est.triple_count = total.triples;
  est.pair_count = total.pairs;
  est.degenerate_pairs = total.degenerate;
  return est;
}

std::vector<SweepRow> convergence_sweep(const Angle& angle, std::span<const int> levels) {
  if (levels.empty()) throw InvalidArgument("convergence_sweep: levels must be nonempty");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw InvalidArgument("convergence_sweep: levels must be increasing");

  const double gamma = gamma_of(angle);
  std::vector<SweepRow> rows;
  for (int level : levels) {
    const auto curve = node_curve(nodes(angle, level));
    rows.push_back({level, curve.size(), empirical_holder(curve, gamma), empirical_ahlfors(curve)});
  }
  return rows;
}

}  // namespace minset
