#pragma once

// Direct measurement of Hoelder ratios and the Ahlfors three-point constant
// on curve samples. All results are inner estimates of the true constants:
// only sampled pairs and triples are visited.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "minset/geometry.hpp"
#include "minset/koch.hpp"

namespace minset {

struct Exhaustive {};

struct Sampled {
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

using SamplingMode = std::variant<Exhaustive, Sampled>;

std::string describe(const SamplingMode& mode);

/// Exhaustive triple enumeration is O(m^3); above this many samples the
/// Ahlfors estimator switches to sampled mode.
inline constexpr std::size_t kMaxExhaustiveTripleSamples = 4097;
/// Exhaustive pair enumeration cap for the Hoelder estimator.
inline constexpr std::size_t kMaxExhaustivePairSamples = 65537;
inline constexpr std::size_t kForcedAhlforsPairs = 20000;
inline constexpr std::size_t kForcedHolderPairs = 1000000;
/// Pairs closer than this fraction of the curve diameter are treated as
/// coincident by the Ahlfors estimator.
inline constexpr double kDegenerateFraction = 1e-12;

struct HolderEstimate {
  double gamma_used = 0;
  double ratio_min = 0;
  double ratio_max = 0;
  std::pair<double, double> argmin_pair{};
  std::pair<double, double> argmax_pair{};
  std::size_t pair_count = 0;
  SamplingMode mode_used;
  bool forced_sampled = false;
};

struct AhlforsEstimate {
  double c_hat = 1;
  double delta_used = 0;
  std::array<double, 3> arg_triple{};
  std::size_t triple_count = 0;
  std::size_t pair_count = 0;
  std::size_t degenerate_pairs = 0;
  SamplingMode mode_used;
  bool forced_sampled = false;
};

/// Extremes of |z_i - z_j| / dt^gamma over distinct sample pairs. dt is
/// |t_i - t_j|, or the shorter way around the parameter circle for closed
/// curves.
HolderEstimate empirical_holder(const SampledCurve& curve, double gamma, const SamplingMode& mode = Exhaustive{});

double default_delta(const SampledCurve& curve);

/// Maximum of (|z1-z2| + |z2-z3|) / |z1-z3| over z1, z3 with
/// |z1 - z3| <= delta and z2 strictly inside the connecting arc (for closed
/// curves, the arc of smaller sample diameter; ties go to the arc with fewer
/// samples). In sampled mode `count` endpoint pairs are drawn and every
/// intermediate sample of each arc is visited.
AhlforsEstimate empirical_ahlfors(const SampledCurve& curve, std::optional<double> delta = std::nullopt,
                                  const SamplingMode& mode = Exhaustive{});

struct SweepRow {
  int level;
  std::size_t samples;
  HolderEstimate holder;
  AhlforsEstimate ahlfors;
};

/// Holder and Ahlfors estimates on the Koch node sets of each level, with
/// gamma = gamma_of(theta) and the default delta.
std::vector<SweepRow> convergence_sweep(const Angle& angle, std::span<const int> levels);

/// Exact diameter of a planar point set via its convex hull.
double hull_diameter(std::vector<Point> pts);

}  // namespace minset
