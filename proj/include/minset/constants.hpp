#pragma once

// Closed-form constants for bi-Hoelder parametrized Jordan curves: Koch
// Hoelder bounds, the Ahlfors three-point constant they imply, Lesley's
// conformal-map exponents, the Lojasiewicz-Siciak exponent, and the
// minimum-set decision.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "minset/errors.hpp"
#include "minset/koch.hpp"

namespace minset {

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr double kCrossoverTolerance = 1e-8;
inline constexpr double kMinGamma = 1e-6;

/// A|t-s|^gamma <= |phi(t) - phi(s)| <= B|t-s|^gamma.
template <typename Scalar = double>
struct BasicBiHolderBounds {
  Scalar A;
  Scalar B;
  Scalar gamma;
};

using BiHolderBounds = BasicBiHolderBounds<double>;

template <typename Scalar>
void validate(const BasicBiHolderBounds<Scalar>& b) {
  if (!(b.A > Scalar(0))) throw InvalidArgument("bounds: A must be positive");
  if (!(b.B > Scalar(0))) throw InvalidArgument("bounds: B must be positive");
  if (!(b.A <= b.B)) throw InvalidArgument("bounds: A must not exceed B");
  if (!(b.gamma > Scalar(kMinGamma) && b.gamma <= Scalar(1)))
    throw InvalidArgument("bounds: gamma must lie in (1e-6, 1]");
}

/// Finds the sign change of f on [lo, hi] by bisection. f(lo) is never
/// evaluated, so lo may be a limit point outside f's domain; the caller
/// supplies its sign.
template <typename Scalar, typename F>
Scalar bisect(F&& f, Scalar lo, Scalar hi, Scalar tol, bool negative_at_lo = true) {
  const Scalar f_hi = f(hi);
  if ((f_hi > Scalar(0)) != negative_at_lo) throw GuardError("bisect: bracket does not straddle a root");
  while (hi - lo > tol) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    const bool mid_negative = f(mid) < Scalar(0);
    if (mid_negative == negative_at_lo)
      lo = mid;
    else
      hi = mid;
  }
  return lo + (hi - lo) / Scalar(2);
}

template <typename Scalar>
Scalar gamma_of(const BasicAngle<Scalar>& angle) {
  using std::cos;
  using std::log2;
  using std::sin;
  // log2(2 cos t) = 1/2 + log2(cos u - sin u), u = t - pi/4; exact at t = pi/4.
  const Scalar u = angle.radians() - std::numbers::pi_v<Scalar> / Scalar(4);
  return Scalar(0.5) + log2(cos(u) - sin(u));
}

template <typename Scalar>
Scalar hausdorff_dim(const BasicAngle<Scalar>& angle) {
  return Scalar(1) / gamma_of(angle);
}

namespace detail {

// cos(2t)cos(t) - 8cos^2(t)sin(t)/(2cos(t) - 1); meaningful for any t near 0.
template <typename Scalar>
Scalar koch_first_branch(Scalar th) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(th);
  return cos(Scalar(2) * th) * c - Scalar(8) * c * c * sin(th) / (Scalar(2) * c - Scalar(1));
}

template <typename Scalar>
Scalar quarter_sec_squared(Scalar th) {
  using std::cos;
  const Scalar c = cos(th);
  return Scalar(1) / (Scalar(4) * c * c);
}

template <typename Scalar>
Scalar high_angle_lower(Scalar th) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(th);
  return sin(Scalar(3) * th) / (Scalar(8) * c * c * c);
}

}  // namespace detail

/// cos2θcosθ − 8cos²θsinθ/(2cosθ−1), the small-angle candidate for A.
template <typename Scalar>
Scalar koch_A_first_branch(const BasicAngle<Scalar>& angle) {
  return detail::koch_first_branch(angle.radians());
}

template <typename Scalar>
Scalar koch_A(const BasicAngle<Scalar>& angle) {
  const Scalar th = angle.radians();
  if (th < std::numbers::pi_v<Scalar> / Scalar(8))
    return std::max(detail::koch_first_branch(th), detail::quarter_sec_squared(th));
  return detail::high_angle_lower(th);
}

template <typename Scalar>
Scalar koch_B(const BasicAngle<Scalar>& angle) {
  using std::cos;
  using std::sin;
  const Scalar th = angle.radians();
  const Scalar c = cos(th);
  return Scalar(1) / c + Scalar(8) * c * c * sin(th) / (Scalar(2) * c - Scalar(1));
}

template <typename Scalar>
BasicBiHolderBounds<Scalar> koch_bounds(const BasicAngle<Scalar>& angle) {
  return {koch_A(angle), koch_B(angle), gamma_of(angle)};
}

// Legacy lower constant; the upper one is the constant 4.
template <typename Scalar>
Scalar ponomarev_A(const BasicAngle<Scalar>& angle) {
  const Scalar th = angle.radians();
  if (th < std::numbers::pi_v<Scalar> / Scalar(8)) return detail::quarter_sec_squared(th);
  return detail::high_angle_lower(th);
}

template <typename Scalar = double>
constexpr Scalar ponomarev_B() {
  return Scalar(4);
}

template <typename Scalar>
BasicBiHolderBounds<Scalar> ponomarev_bounds(const BasicAngle<Scalar>& angle) {
  return {ponomarev_A(angle), ponomarev_B<Scalar>(), gamma_of(angle)};
}

/// Three-point constant implied by bi-Hoelder bounds: 2^(1-gamma) B / A.
template <typename Scalar>
Scalar ahlfors_constant(const BasicBiHolderBounds<Scalar>& b) {
  using std::pow;
  validate(b);
  return pow(Scalar(2), Scalar(1) - b.gamma) * b.B / b.A;
}

namespace detail {

template <typename Scalar>
Scalar inverse_arcsin(Scalar c, const char* who) {
  using std::asin;
  if (!(c >= Scalar(1))) throw InvalidArgument(std::string(who) + ": Ahlfors constant must be >= 1");
  return asin(Scalar(1) / c);
}

}  // namespace detail

/// Hoelder exponent of the conformal maps onto the two complementary domains:
/// 2 arcsin²(1/c) / (π² − π arcsin(1/c)).
template <typename Scalar>
Scalar lesley_forward_exponent(Scalar c) {
  const Scalar s = detail::inverse_arcsin(c, "lesley_forward_exponent");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return Scalar(2) * s * s / (pi * pi - pi * s);
}

/// Hoelder exponent of the inverse maps: π / (2π − 2 arcsin(1/c)).
template <typename Scalar>
Scalar lesley_inverse_exponent(Scalar c) {
  const Scalar s = detail::inverse_arcsin(c, "lesley_inverse_exponent");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return pi / (Scalar(2) * pi - Scalar(2) * s);
}

/// If f is Lip(alpha), the inverse of the exterior map is Lip(1/(2 - alpha)).
template <typename Scalar>
Scalar cross_exponent(Scalar alpha) {
  if (!(alpha > Scalar(0) && alpha < Scalar(1))) throw InvalidArgument("cross_exponent: alpha must lie in (0,1)");
  return Scalar(1) / (Scalar(2) - alpha);
}

/// Lojasiewicz-Siciak exponent of the closed inner domain:
/// (π² − π arcsin(1/c)) / (2 arcsin²(1/c)). Increasing in c.
template <typename Scalar>
Scalar ls_alpha(Scalar c) {
  const Scalar s = detail::inverse_arcsin(c, "ls_alpha");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return (pi * pi - pi * s) / (Scalar(2) * s * s);
}

/// Solution of ls_alpha(c) = 2: 1 / sin((√17 − 1)π/8).
template <typename Scalar = double>
Scalar c_star() {
  using std::sin;
  using std::sqrt;
  return Scalar(1) / sin((sqrt(Scalar(17)) - Scalar(1)) * std::numbers::pi_v<Scalar> / Scalar(8));
}

enum class Verdict { CertifiedMinimumSet, NotCertified };

inline const char* to_string(Verdict v) {
  return v == Verdict::CertifiedMinimumSet ? "CertifiedMinimumSet" : "NotCertified";
}

template <typename Scalar = double>
struct BasicCertificate {
  BasicBiHolderBounds<Scalar> bounds;
  Scalar ahlfors_c;
  Scalar lesley_forward;
  Scalar lesley_inverse;
  Scalar ls_alpha;
  Scalar threshold_c_star;
  Verdict verdict;
  std::optional<Scalar> hausdorff_dim;
  std::optional<Scalar> theta;
  // Legacy constants for the same Koch angle; never used for the verdict.
  std::optional<BasicBiHolderBounds<Scalar>> legacy_bounds;
  std::optional<Scalar> legacy_ahlfors_c;
  bool rigorous = true;
};

using Certificate = BasicCertificate<double>;

/// Minimum-set decision: certified iff 2^(1-gamma) B / A < c*.
template <typename Scalar>
BasicCertificate<Scalar> certify(const BasicBiHolderBounds<Scalar>& b) {
  validate(b);
  BasicCertificate<Scalar> cert{};
  cert.bounds = b;
  cert.ahlfors_c = ahlfors_constant(b);
  cert.ls_alpha = ls_alpha(cert.ahlfors_c);
  cert.lesley_forward = lesley_forward_exponent(cert.ahlfors_c);
  cert.lesley_inverse = lesley_inverse_exponent(cert.ahlfors_c);
  cert.threshold_c_star = c_star<Scalar>();
  cert.verdict = cert.ahlfors_c < cert.threshold_c_star ? Verdict::CertifiedMinimumSet : Verdict::NotCertified;
  return cert;
}

/// Certificate for the Koch curve of the given angle, carrying the legacy
/// constants and the Hausdorff dimension alongside.
template <typename Scalar>
BasicCertificate<Scalar> certify_koch(const BasicAngle<Scalar>& angle) {
  auto cert = certify(koch_bounds(angle));
  cert.theta = angle.radians();
  cert.hausdorff_dim = hausdorff_dim(angle);
  cert.legacy_bounds = ponomarev_bounds(angle);
  cert.legacy_ahlfors_c = ahlfors_constant(*cert.legacy_bounds);
  return cert;
}

/// Critical Koch angle: root of ahlfors_constant(koch_bounds(θ)) = c* on (0, 0.09].
template <typename Scalar = double>
Scalar theta_tilde(Scalar tol = Scalar(kBisectionTolerance)) {
  const Scalar target = c_star<Scalar>();
  auto excess = [&](Scalar th) { return ahlfors_constant(koch_bounds(BasicAngle<Scalar>(th))) - target; };
  return bisect(excess, Scalar(0), Scalar(0.09), tol);
}

/// (θ₀, θ₁): where the small-angle branch of A meets 1/(4cos²θ), and where
/// it changes sign. Both bracketed on [0.01, π/8].
template <typename Scalar = double>
std::pair<Scalar, Scalar> theta_crossovers(Scalar tol = Scalar(kCrossoverTolerance)) {
  const Scalar lo = Scalar(0.01);
  const Scalar hi = std::numbers::pi_v<Scalar> / Scalar(8);
  auto gap = [](Scalar th) { return detail::koch_first_branch(th) - detail::quarter_sec_squared(th); };
  auto branch = [](Scalar th) { return detail::koch_first_branch(th); };
  if (!(gap(lo) > Scalar(0)) || !(branch(lo) > Scalar(0))) throw GuardError("theta_crossovers: bad bracket");
  return {bisect(gap, lo, hi, tol, false), bisect(branch, lo, hi, tol, false)};
}

/// Smirnov's dimension bound for a K-quasicircle: 1 + ((K−1)/(K+1))².
template <typename Scalar>
Scalar quasicircle_dim_bound(Scalar K) {
  if (!(K >= Scalar(1))) throw InvalidArgument("quasicircle_dim_bound: K must be >= 1");
  const Scalar r = (K - Scalar(1)) / (K + Scalar(1));
  return Scalar(1) + r * r;
}

/// Angle above which the Koch curve's dimension exceeds 10/9: arccos(2^(-1/10)).
template <typename Scalar = double>
Scalar theta_dim_threshold() {
  using std::acos;
  using std::pow;
  return acos(pow(Scalar(2), Scalar(-0.1)));
}

}  // namespace minset
