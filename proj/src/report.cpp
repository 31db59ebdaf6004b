#include "minset/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <numbers>

namespace minset {

std::vector<ThresholdRow> threshold_table() {
  const auto [theta0, theta1] = theta_crossovers<double>();
  return {
      {"c_star", "Ahlfors constant below which the LS exponent is < 2", c_star<double>(), 0.0},
      {"theta_tilde", "largest Koch angle certified by the new bounds", theta_tilde<double>(), kBisectionTolerance},
      {"theta_0", "angle where 1/(4cos^2) starts to dominate the lower Hoelder constant", theta0,
       kCrossoverTolerance},
      {"theta_1", "angle where the small-angle lower constant turns negative", theta1, kCrossoverTolerance},
      {"theta_dim", "arccos(2^(-1/10)); Koch dimension exceeds 10/9 above it", theta_dim_threshold<double>(), 0.0},
      {"pi_over_8", "branch switch of the lower Hoelder constant", std::numbers::pi / 8, 0.0},
      {"dim_bound_K2", "quasicircle dimension bound at K = 2 (10/9)", quasicircle_dim_bound(2.0), 0.0},
  };
}

std::string six_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

nlohmann::json to_json(const BiHolderBounds& b) { return {{"A", b.A}, {"B", b.B}, {"gamma", b.gamma}}; }

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j = {
      {"bounds", to_json(c.bounds)},
      {"ahlfors_c", c.ahlfors_c},
      {"lesley_forward", c.lesley_forward},
      {"lesley_inverse", c.lesley_inverse},
      {"ls_alpha", c.ls_alpha},
      {"threshold_c_star", c.threshold_c_star},
      {"verdict", to_string(c.verdict)},
      {"rigorous", c.rigorous},
      {"label", c.rigorous ? "RIGOROUS" : "NON-RIGOROUS"},
      {"arithmetic", "binary64 closed form"},
  };
  if (c.lesley_forward > 0 && c.lesley_forward < 1) j["cross_exponent"] = cross_exponent(c.lesley_forward);
  if (c.theta) j["theta"] = *c.theta;
  if (c.hausdorff_dim) j["hausdorff_dim"] = *c.hausdorff_dim;
  if (c.legacy_bounds) {
    j["legacy"] = to_json(*c.legacy_bounds);
    j["legacy"]["ahlfors_c"] = *c.legacy_ahlfors_c;
  }
  return j;
}

nlohmann::json to_json(const SamplingMode& m) {
  if (const auto* s = std::get_if<Sampled>(&m)) return {{"kind", "sampled"}, {"seed", s->seed}, {"count", s->count}};
  return {{"kind", "exhaustive"}};
}

nlohmann::json to_json(const HolderEstimate& h) {
  return {{"gamma_used", h.gamma_used},
          {"ratio_min", h.ratio_min},
          {"ratio_max", h.ratio_max},
          {"argmin_pair", {h.argmin_pair.first, h.argmin_pair.second}},
          {"argmax_pair", {h.argmax_pair.first, h.argmax_pair.second}},
          {"pair_count", h.pair_count},
          {"mode", to_json(h.mode_used)},
          {"forced_sampled", h.forced_sampled},
          {"estimate_kind", "inner estimate of (A, B) over sampled pairs"}};
}

nlohmann::json to_json(const AhlforsEstimate& a) {
  return {{"c_hat", a.c_hat},
          {"delta_used", a.delta_used},
          {"arg_triple", {a.arg_triple[0], a.arg_triple[1], a.arg_triple[2]}},
          {"triple_count", a.triple_count},
          {"pair_count", a.pair_count},
          {"degenerate_pairs", a.degenerate_pairs},
          {"degenerate_fraction", kDegenerateFraction},
          {"mode", to_json(a.mode_used)},
          {"forced_sampled", a.forced_sampled},
          {"estimate_kind", "lower estimate of the three-point constant"}};
}

nlohmann::json to_json(const LsFit& f) {
  nlohmann::json probes = nlohmann::json::array();
  for (std::size_t i = 0; i < f.distances.size(); ++i)
    probes.push_back({{"distance", f.distances[i]}, {"value", f.values[i]}, {"used", static_cast<bool>(f.used[i])}});
  return {{"base_t", f.base_t},
          {"base_point", {f.base_point.x(), f.base_point.y()}},
          {"direction", {f.direction.x(), f.direction.y()}},
          {"probes", probes},
          {"slope", f.slope},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared}};
}

nlohmann::json to_json(const LsExponentEstimate& e) {
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : e.fits) fits.push_back(to_json(f));
  nlohmann::json aborted = nlohmann::json::array();
  for (std::size_t i = 0; i < e.aborted_bases.size(); ++i)
    aborted.push_back({{"base_t", e.aborted_bases[i]}, {"reason", e.abort_reasons[i]}});
  return {{"exponent", e.exponent}, {"fits", fits}, {"aborted", aborted}};
}

nlohmann::json to_json(const ThresholdRow& r) {
  return {{"name", r.name},
          {"description", r.description},
          {"value", r.value},
          {"display", six_digits(r.value)},
          {"tolerance", r.tolerance}};
}

nlohmann::json make_report(const std::string& command, const nlohmann::json& args, const std::string& input_digest,
                           std::uint64_t seed) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"tool", kToolName},   {"version", kToolVersion},     {"command", command}, {"args", args},
          {"input_digest", input_digest}, {"seed", seed}, {kTimestampField, stamp}};
}

nlohmann::json strip_timestamps(nlohmann::json report) {
  if (report.is_object()) {
    report.erase(kTimestampField);
    for (auto& [k, v] : report.items()) v = strip_timestamps(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = strip_timestamps(v);
  }
  return report;
}

}  // namespace minset
