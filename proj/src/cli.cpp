#include "minset/cli.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "minset/constants.hpp"
#include "minset/curve_io.hpp"
#include "minset/errors.hpp"
#include "minset/estimators.hpp"
#include "minset/koch.hpp"
#include "minset/potential.hpp"
#include "minset/report.hpp"

namespace minset {
namespace {

using nlohmann::json;

constexpr double kCheckSlack = 1e-9;

struct Output {
  std::ostream& out;
  std::ostream& err;
};

void emit_report(const Output& io, const std::string& path, const json& report) {
  if (path.empty()) return;
  const std::string text = report.dump(2) + "\n";
  if (path == "-")
    io.out << text;
  else
    write_text_file(path, text);
}

SamplingMode parse_mode(const std::string& mode, std::uint64_t seed, std::size_t count) {
  if (mode == "exhaustive") return Exhaustive{};
  if (mode == "sampled") return Sampled{seed, count};
  throw InvalidArgument("mode must be 'exhaustive' or 'sampled'");
}

// ---- thresholds ----------------------------------------------------------

struct ThresholdsArgs {
  std::string json_out;
};

int cmd_thresholds(const ThresholdsArgs& a, const Output& io) {
  const auto rows = threshold_table();
  json report = make_report("thresholds", {{"json_out", a.json_out}}, digest("thresholds"), 0);
  report["thresholds"] = json::array();
  for (const auto& r : rows) {
    report["thresholds"].push_back(to_json(r));
    io.out << std::left << std::setw(14) << r.name << std::setw(12) << six_digits(r.value) << r.description << '\n';
  }
  emit_report(io, a.json_out, report);
  return kExitOk;
}

// ---- certify -------------------------------------------------------------

struct CertifyArgs {
  std::optional<double> theta;
  std::optional<double> A;
  std::optional<double> B;
  std::optional<double> gamma;
  std::string curve;
  std::string mode = "exhaustive";
  std::size_t count = 100000;
  std::uint64_t seed = 0;
  std::string json_out;
};

int cmd_certify(const CertifyArgs& a, const Output& io) {
  const bool explicit_bounds = a.A || a.B;
  const bool from_curve = !a.curve.empty();
  const int sources = int(a.theta.has_value()) + int(explicit_bounds) + int(from_curve);
  if (sources != 1) throw InvalidArgument("certify: give exactly one of --theta, --A/--B/--gamma, --curve/--gamma");

  json args = {{"mode", a.mode}, {"count", a.count}, {"seed", a.seed}};
  std::string digest_input;
  Certificate cert;
  json report_extra = json::object();

  if (a.theta) {
    if (a.gamma) throw InvalidArgument("certify: --gamma conflicts with --theta");
    args["theta"] = *a.theta;
    cert = certify_koch(Angle(*a.theta));
  } else if (explicit_bounds) {
    if (!(a.A && a.B && a.gamma)) throw InvalidArgument("certify: --A, --B and --gamma go together");
    args["A"] = *a.A;
    args["B"] = *a.B;
    args["gamma"] = *a.gamma;
    cert = certify(BiHolderBounds{*a.A, *a.B, *a.gamma});
  } else {
    if (!a.gamma) throw InvalidArgument("certify: --curve needs --gamma");
    args["curve"] = a.curve;
    args["gamma"] = *a.gamma;
    digest_input = read_text_file(a.curve);
    const CurveFile file = read_curve_file(a.curve);
    const auto holder = empirical_holder(file.curve, *a.gamma, parse_mode(a.mode, a.seed, a.count));
    if (!(holder.ratio_min > 0)) throw GuardError("certify: curve has coincident samples, empirical A is zero");
    cert = certify(BiHolderBounds{holder.ratio_min, holder.ratio_max, *a.gamma});
    cert.rigorous = false;
    report_extra["holder"] = to_json(holder);
  }

  json report = make_report("certify", args, digest(args.dump() + digest_input), a.seed);
  report["certificate"] = to_json(cert);
  for (auto& [k, v] : report_extra.items()) report[k] = v;

  io.out << std::setprecision(10) << "A = " << cert.bounds.A << "  B = " << cert.bounds.B
         << "  gamma = " << cert.bounds.gamma << '\n'
         << "Ahlfors c = " << cert.ahlfors_c << "  (threshold c* = " << cert.threshold_c_star << ")\n"
         << "LS exponent alpha = " << cert.ls_alpha << "  Lesley exponents: forward " << cert.lesley_forward
         << ", inverse " << cert.lesley_inverse << '\n'
         << "verdict: " << to_string(cert.verdict) << (cert.rigorous ? "" : "  [NON-RIGOROUS]") << '\n';
  emit_report(io, a.json_out, report);
  return cert.verdict == Verdict::CertifiedMinimumSet ? kExitOk : kExitNotCertified;
}

// ---- koch ----------------------------------------------------------------

struct KochArgs {
  double theta = 0;
  int level = 0;
  std::optional<int> sides;
  std::string svg_out;
  std::string json_out;
};

int cmd_koch(const KochArgs& a, const Output& io) {
  const Angle angle(a.theta);
  const SampledCurve curve = a.sides ? pi_theta(angle, *a.sides, a.level) : node_curve(nodes(angle, a.level));
  const double stroke = std::pow(angle.lambda(), a.level) / 2;

  CurveFile file{curve, {{"theta", six_digits(a.theta)}, {"level", std::to_string(a.level)}}};
  if (a.sides) file.metadata["sides"] = std::to_string(*a.sides);
  if (!a.json_out.empty()) {
    if (a.json_out == "-")
      io.out << to_json(file).dump(1) << '\n';
    else
      write_curve_file(a.json_out, file);
  }
  if (!a.svg_out.empty()) write_text_file(a.svg_out, svg_document(curve, stroke));

  if (a.json_out != "-") {
    io.out << (curve.closed ? "closed" : "open") << " curve, " << curve.size() << " samples, lambda = "
           << std::setprecision(10) << angle.lambda() << ", dimension = " << hausdorff_dim(angle) << '\n';
    if (a.sides) {
      const double expected = std::numbers::pi * (*a.sides - 2) / *a.sides + 2 * first_segment_elevation(angle, a.level);
      io.out << "corner angle = " << interior_angle(curve, 0) << " (polygon + 2 x first-segment elevation = "
             << expected << ")\n";
    }
  }
  return kExitOk;
}

// ---- estimate ------------------------------------------------------------

struct EstimateArgs {
  std::optional<double> theta;
  std::string curve;
  int level = 10;
  std::string what = "both";
  std::optional<double> delta;
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  std::string mode = "exhaustive";
  std::size_t count = 100000;
  std::string json_out;
};

int cmd_estimate(const EstimateArgs& a, const Output& io) {
  if (a.theta.has_value() == !a.curve.empty()) throw InvalidArgument("estimate: give exactly one of --theta, --curve");
  if (a.what != "holder" && a.what != "ahlfors" && a.what != "both")
    throw InvalidArgument("estimate: --what must be holder, ahlfors or both");
  const SamplingMode mode = parse_mode(a.mode, a.seed, a.count);

  json args = {{"level", a.level}, {"what", a.what}, {"seed", a.seed}, {"mode", a.mode}, {"count", a.count}};
  if (a.delta) args["delta"] = *a.delta;
  std::string digest_input;
  SampledCurve curve;
  std::optional<BiHolderBounds> analytic;
  std::optional<double> gamma = a.gamma;
  if (a.theta) {
    const Angle angle(*a.theta);
    args["theta"] = *a.theta;
    curve = node_curve(nodes(angle, a.level));
    analytic = koch_bounds(angle);
    if (!gamma) gamma = analytic->gamma;
  } else {
    args["curve"] = a.curve;
    digest_input = read_text_file(a.curve);
    curve = read_curve_file(a.curve).curve;
  }
  if (gamma) args["gamma"] = *gamma;

  json report = make_report("estimate", args, digest(args.dump() + digest_input), a.seed);
  report["samples"] = curve.size();
  report["closed"] = curve.closed;
  json checks = json::object();

  if (a.what != "ahlfors") {
    if (!gamma) throw InvalidArgument("estimate: Hoelder estimation on a curve file needs --gamma");
    const auto h = empirical_holder(curve, *gamma, mode);
    report["holder"] = to_json(h);
    io.out << std::setprecision(10) << "ratio_min = " << h.ratio_min << "  ratio_max = " << h.ratio_max << "  ("
           << h.pair_count << " pairs, " << describe(h.mode_used) << ")\n";
    if (analytic) {
      checks["ratio_min_ge_A"] = h.ratio_min >= analytic->A - kCheckSlack;
      checks["ratio_max_le_B"] = h.ratio_max <= analytic->B + kCheckSlack;
      io.out << "  analytic A = " << analytic->A << "  B = " << analytic->B << '\n';
    }
  }
  if (a.what != "holder") {
    const auto est = empirical_ahlfors(curve, a.delta, mode);
    report["ahlfors"] = to_json(est);
    report["ahlfors"]["delta_policy"] = a.delta ? "user" : "diam/4";
    io.out << std::setprecision(10) << "c_hat = " << est.c_hat << "  (delta = " << est.delta_used << ", "
           << est.triple_count << " triples, " << describe(est.mode_used) << ")\n";
    if (analytic) {
      const double c = ahlfors_constant(*analytic);
      checks["c_hat_le_c"] = est.c_hat <= c + kCheckSlack;
      io.out << "  analytic c = " << c << '\n';
    }
  }
  if (analytic) {
    report["analytic"] = to_json(*analytic);
    report["analytic"]["ahlfors_c"] = ahlfors_constant(*analytic);
    report["checks"] = checks;
    report["checks"]["slack"] = kCheckSlack;
  }
  emit_report(io, a.json_out, report);
  return kExitOk;
}

// ---- ls ------------------------------------------------------------------

struct LsArgs {
  std::optional<double> theta;
  std::string curve;
  std::string oracle;
  std::size_t leja_n = 128;
  int level = 5;
  int sides = kDefaultPolygonSides;
  std::size_t candidates = 512;
  std::vector<double> bases;
  std::vector<double> distances;
  std::uint64_t seed = 0;
  std::string json_out;
};

SampledCurve circle_curve(std::size_t m) {
  SampledCurve c;
  c.closed = true;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(m);
    c.samples.push_back({t, Point(std::cos(2 * std::numbers::pi * t), std::sin(2 * std::numbers::pi * t))});
  }
  return c;
}

SampledCurve segment_curve(std::size_t m) {
  SampledCurve c;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(m - 1);
    c.samples.push_back({t, Point(-1.0 + 2.0 * t, 0.0)});
  }
  return c;
}

int cmd_ls(const LsArgs& a, const Output& io) {
  const int sources = int(a.theta.has_value()) + int(!a.curve.empty()) + int(!a.oracle.empty());
  if (sources != 1) throw InvalidArgument("ls: give exactly one of --theta, --curve, --oracle");

  json args = {{"leja_n", a.leja_n}, {"seed", a.seed}};
  std::string digest_input;
  SampledCurve curve;
  std::vector<double> bases = a.bases;
  std::optional<double> exact_at_2;
  if (!a.oracle.empty()) {
    args["oracle"] = a.oracle;
    args["candidates"] = a.candidates;
    if (a.oracle == "circle") {
      curve = circle_curve(a.candidates);
      exact_at_2 = std::log(2.0);
      if (bases.empty()) bases = {0.0, 0.125, 0.25, 0.375, 0.5};
    } else if (a.oracle == "segment") {
      curve = segment_curve(a.candidates);
      exact_at_2 = std::log(2.0 + std::sqrt(3.0));
      if (bases.empty()) bases = {0.25, 0.5, 0.75};
    } else {
      throw InvalidArgument("ls: --oracle must be circle or segment");
    }
  } else if (a.theta) {
    args["theta"] = *a.theta;
    args["level"] = a.level;
    args["sides"] = a.sides;
    curve = pi_theta(Angle(*a.theta), a.sides, a.level);
  } else {
    args["curve"] = a.curve;
    digest_input = read_text_file(a.curve);
    curve = read_curve_file(a.curve).curve;
  }
  if (bases.empty()) {
    const std::size_t count = std::min<std::size_t>(16, curve.size());
    for (std::size_t k = 0; k < count; ++k) bases.push_back(curve.t(k * curve.size() / count));
  }
  const std::vector<double> distances = a.distances.empty() ? default_probe_distances() : a.distances;
  args["bases"] = bases;
  args["distances"] = distances;

  const LejaSet leja = leja_points(curve.points(), a.leja_n);
  const LejaPanelPotential potential(curve, leja);
  const auto estimate = ls_exponent_estimate(curve, potential, bases, distances);

  json report = make_report("ls", args, digest(args.dump() + digest_input), a.seed);
  json leja_json = {{"n", leja.size()}, {"log_sup_norms", leja.log_sup_norms}, {"indices", leja.indices}};
  json pts = json::array();
  for (const auto& p : leja.points) pts.push_back({p.x(), p.y()});
  leja_json["points"] = pts;
  report["leja"] = leja_json;
  report["surrogate"] = {{"kind", "leja-panel-collocation"},
                         {"robin_constant", potential.robin_constant()},
                         {"min_charge", potential.charges().minCoeff()},
                         {"noise_floor", kNoiseFloor}};
  report["ls"] = to_json(estimate);

  io.out << std::setprecision(6) << "LS exponent estimate = " << estimate.exponent << "  (" << estimate.fits.size()
         << " fits, " << estimate.aborted_bases.size() << " aborted)\n";
  for (const auto& f : estimate.fits) io.out << "  t = " << f.base_t << "  slope = " << f.slope << '\n';

  if (a.oracle == "segment") {
    FitOptions along;
    along.direction = Point(1.0, 0.0);
    const auto endpoint = ls_fit(curve, potential, 1.0, distances, along);
    report["endpoint_fit"] = to_json(endpoint);
    io.out << "  endpoint slope (along +x) = " << endpoint.slope << '\n';
  }
  if (exact_at_2) {
    const double v = v_hat(Point(2.0, 0.0), leja, leja.size());
    report["oracle_check"] = {{"z", {2.0, 0.0}}, {"v_hat", v}, {"exact", *exact_at_2}, {"n", leja.size()}};
    io.out << "  v_hat(2) = " << v << "  exact = " << *exact_at_2 << '\n';
  }
  if (a.theta) {
    const auto cert = certify_koch(Angle(*a.theta));
    report["certificate"] = to_json(cert);
    io.out << "  analytic LS exponent = " << cert.ls_alpha << '\n';
  }
  emit_report(io, a.json_out, report);
  return kExitOk;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  double theta_min = 0.0005;
  double theta_max = 0.02;
  int steps = 40;
  std::string json_out;
};

int cmd_sweep(const SweepArgs& a, const Output& io) {
  if (a.steps < 1) throw InvalidArgument("sweep: --steps must be positive");
  if (!(a.theta_min <= a.theta_max)) throw InvalidArgument("sweep: --theta-min must not exceed --theta-max");
  json args = {{"theta_min", a.theta_min}, {"theta_max", a.theta_max}, {"steps", a.steps}};
  json report = make_report("sweep", args, digest(args.dump()), 0);
  const double critical = theta_tilde<double>();
  report["theta_tilde"] = critical;
  report["rows"] = json::array();
  io.out << std::left << std::setw(14) << "theta" << std::setw(14) << "c" << std::setw(14) << "alpha"
         << "verdict\n";
  for (int i = 0; i <= a.steps; ++i) {
    const double th = a.steps == 0 ? a.theta_min : a.theta_min + (a.theta_max - a.theta_min) * i / a.steps;
    const auto cert = certify_koch(Angle(th));
    report["rows"].push_back(to_json(cert));
    io.out << std::setw(14) << six_digits(th) << std::setw(14) << six_digits(cert.ahlfors_c) << std::setw(14)
           << six_digits(cert.ls_alpha) << to_string(cert.verdict) << '\n';
  }
  io.out << "critical angle = " << six_digits(critical) << '\n';
  emit_report(io, a.json_out, report);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-set certification for bi-Hoelder Jordan curves and Koch curves", "minset"};
  app.require_subcommand(1);
  const Output io{out, err};
  int code = kExitOk;

  ThresholdsArgs thr;
  auto* thr_cmd = app.add_subcommand("thresholds", "Print the critical constants");
  thr_cmd->add_option("--json-out", thr.json_out, "Report JSON path ('-' for stdout)");

  CertifyArgs cer;
  auto* cer_cmd = app.add_subcommand("certify", "Decide whether a curve is certified as a minimum set");
  cer_cmd->add_option("--theta", cer.theta, "Koch angle in (0, pi/4]");
  cer_cmd->add_option("--A", cer.A, "Lower Hoelder constant");
  cer_cmd->add_option("--B", cer.B, "Upper Hoelder constant");
  cer_cmd->add_option("--gamma", cer.gamma, "Hoelder exponent");
  cer_cmd->add_option("--curve", cer.curve, "Curve JSON file (bounds estimated, NON-RIGOROUS)");
  cer_cmd->add_option("--mode", cer.mode, "exhaustive|sampled (curve mode)");
  cer_cmd->add_option("--count", cer.count, "Sampled pair count");
  cer_cmd->add_option("--seed", cer.seed, "Seed for sampled mode");
  cer_cmd->add_option("--json-out", cer.json_out, "Report JSON path ('-' for stdout)");

  KochArgs koc;
  auto* koc_cmd = app.add_subcommand("koch", "Emit Koch node sets or the closed Koch polygon");
  koc_cmd->add_option("--theta", koc.theta, "Koch angle in (0, pi/4]")->required();
  koc_cmd->add_option("--level", koc.level, "Refinement level")->required();
  koc_cmd->add_option("--sides", koc.sides, "Build the closed curve on a regular polygon with this many sides");
  koc_cmd->add_option("--svg-out", koc.svg_out, "SVG output path");
  koc_cmd->add_option("--json-out", koc.json_out, "Curve JSON output path ('-' for stdout)");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Empirical Hoelder ratios and Ahlfors constant");
  est_cmd->add_option("--theta", est.theta, "Koch angle; uses the level-n node set");
  est_cmd->add_option("--curve", est.curve, "Curve JSON file");
  est_cmd->add_option("--level", est.level, "Koch level (default 10)");
  est_cmd->add_option("--what", est.what, "holder|ahlfors|both");
  est_cmd->add_option("--delta", est.delta, "Three-point scale (default diam/4)");
  est_cmd->add_option("--gamma", est.gamma, "Hoelder exponent (default gamma(theta))");
  est_cmd->add_option("--seed", est.seed, "Seed for sampled mode");
  est_cmd->add_option("--mode", est.mode, "exhaustive|sampled");
  est_cmd->add_option("--count", est.count, "Sampled pair count");
  est_cmd->add_option("--json-out", est.json_out, "Report JSON path ('-' for stdout)");

  LsArgs lsa;
  auto* ls_cmd = app.add_subcommand("ls", "Fit local decay exponents of the Green-function surrogate");
  ls_cmd->add_option("--theta", lsa.theta, "Koch angle; uses the closed Koch polygon");
  ls_cmd->add_option("--curve", lsa.curve, "Curve JSON file");
  ls_cmd->add_option("--oracle", lsa.oracle, "circle|segment");
  ls_cmd->add_option("--leja-n", lsa.leja_n, "Number of Leja points (default 128)");
  ls_cmd->add_option("--level", lsa.level, "Koch level for --theta (default 5)");
  ls_cmd->add_option("--sides", lsa.sides, "Polygon sides for --theta (default 12)");
  ls_cmd->add_option("--candidates", lsa.candidates, "Candidate count for oracles (default 512)");
  ls_cmd->add_option("--bases", lsa.bases, "Base parameters t")->delimiter(',');
  ls_cmd->add_option("--distances", lsa.distances, "Probe distances, decreasing")->delimiter(',');
  ls_cmd->add_option("--seed", lsa.seed, "Recorded seed (the construction is deterministic)");
  ls_cmd->add_option("--json-out", lsa.json_out, "Report JSON path ('-' for stdout)");

  SweepArgs swp;
  auto* swp_cmd = app.add_subcommand("sweep", "Certificates over a grid of Koch angles");
  swp_cmd->add_option("--theta-min", swp.theta_min, "Smallest angle");
  swp_cmd->add_option("--theta-max", swp.theta_max, "Largest angle");
  swp_cmd->add_option("--steps", swp.steps, "Number of grid intervals");
  swp_cmd->add_option("--json-out", swp.json_out, "Report JSON path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*thr_cmd) code = cmd_thresholds(thr, io);
    else if (*cer_cmd) code = cmd_certify(cer, io);
    else if (*koc_cmd) code = cmd_koch(koc, io);
    else if (*est_cmd) code = cmd_estimate(est, io);
    else if (*ls_cmd) code = cmd_ls(lsa, io);
    else if (*swp_cmd) code = cmd_sweep(swp, io);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return code;
}

}  // namespace minset
