#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "minset/cli.hpp"
#include "minset/curve_io.hpp"
#include "minset/koch.hpp"
#include "minset/report.hpp"

using namespace minset;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "minset");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "minset_test_cli";
  fs::create_directories(dir);
  return (dir / name).string();
}

json load(const std::string& path) { return json::parse(read_text_file(path)); }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"certify"}).code == kExitUsage);
  CHECK(run({"certify", "--theta", "0.1", "--A", "1", "--B", "1", "--gamma", "1"}).code == kExitUsage);
  CHECK(run({"certify", "--theta", "0.1", "--gamma", "1"}).code == kExitUsage);
  CHECK(run({"certify", "--A", "1", "--B", "2"}).code == kExitUsage);
  CHECK(run({"certify", "--theta", "1.0"}).code == kExitUsage);
  CHECK(run({"certify", "--A", "2", "--B", "1", "--gamma", "1"}).code == kExitUsage);
  CHECK(run({"estimate", "--theta", "0.1", "--what", "neither"}).code == kExitUsage);
  CHECK(run({"ls", "--oracle", "square"}).code == kExitUsage);
  CHECK(run({"koch", "--theta", "0.1"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("certify exit codes") {
  CHECK(run({"certify", "--theta", "0.002"}).code == kExitOk);
  CHECK(run({"certify", "--theta", "0.01"}).code == kExitNotCertified);
  CHECK(run({"certify", "--theta", "0.3"}).code == kExitNotCertified);
  const auto smooth = run({"certify", "--A", "1", "--B", "1", "--gamma", "1"});
  CHECK(smooth.code == kExitOk);
  CHECK(smooth.out.find("Ahlfors c = 1 ") != std::string::npos);
}

TEST_CASE("certify from a curve is labelled non-rigorous") {
  const std::string curve = scratch("seg.json");
  CHECK(run({"koch", "--theta", "0.001", "--level", "6", "--json-out", curve}).code == kExitOk);
  const std::string rep = scratch("cert.json");
  const auto r = run({"certify", "--curve", curve, "--gamma", "1", "--json-out", rep});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("NON-RIGOROUS") != std::string::npos);
  CHECK(load(rep).at("certificate").at("label") == "NON-RIGOROUS");
  CHECK(run({"certify", "--curve", scratch("missing.json"), "--gamma", "1"}).code == kExitError);
}

TEST_CASE("koch outputs") {
  const std::string svg = scratch("k1.svg");
  CHECK(run({"koch", "--theta", "0.2", "--level", "1", "--svg-out", svg}).code == kExitOk);
  const std::string text = read_text_file(svg);
  const auto start = text.find("points=\"") + 8;
  const std::string pts = text.substr(start, text.find('"', start) - start);
  CHECK(std::count(pts.begin(), pts.end(), ',') == 3);

  const std::string closed = scratch("k12.json");
  CHECK(run({"koch", "--theta", "0.1", "--level", "3", "--sides", "12", "--json-out", closed}).code == kExitOk);
  const auto file = read_curve_file(closed);
  CHECK(file.curve.closed);
  CHECK(file.curve.size() == 12 * 8);

  CHECK(run({"koch", "--theta", "0.1", "--level", "2", "--json-out", "/nonexistent/dir/x.json"}).code == kExitError);
  CHECK(run({"koch", "--theta", "0.1", "--level", "30"}).code == kExitGuard);
}

TEST_CASE("estimate against analytic bounds") {
  const std::string rep = scratch("est.json");
  CHECK(run({"estimate", "--theta", "0.1", "--level", "10", "--what", "both", "--json-out", rep}).code == kExitOk);
  const auto j = load(rep);
  CHECK(j.at("checks").at("ratio_min_ge_A") == true);
  CHECK(j.at("checks").at("ratio_max_le_B") == true);
  CHECK(j.at("checks").at("c_hat_le_c") == true);
  CHECK(j.at("ahlfors").at("delta_policy") == "diam/4");
  CHECK(j.at("ahlfors").at("delta_used").get<double>() == doctest::Approx(0.25));
  CHECK(run({"estimate", "--theta", "0.1", "--delta", "1e-9", "--what", "ahlfors"}).code == kExitGuard);
}

TEST_CASE("round trip through the curve file reproduces estimates") {
  const std::string curve = scratch("rt.json");
  CHECK(run({"koch", "--theta", "0.15", "--level", "7", "--json-out", curve}).code == kExitOk);
  const std::string a = scratch("rt_a.json");
  const std::string b = scratch("rt_b.json");
  const auto gamma = std::to_string(gamma_of(Angle(0.15)));
  CHECK(run({"estimate", "--theta", "0.15", "--level", "7", "--gamma", gamma, "--json-out", a}).code == kExitOk);
  CHECK(run({"estimate", "--curve", curve, "--gamma", gamma, "--json-out", b}).code == kExitOk);
  const auto ja = load(a);
  const auto jb = load(b);
  CHECK(ja.at("holder") == jb.at("holder"));
  CHECK(ja.at("ahlfors") == jb.at("ahlfors"));
}

TEST_CASE("sampled estimate is reproducible") {
  const std::string a = scratch("s_a.json");
  const std::string b = scratch("s_b.json");
  const std::vector<std::string> args = {"estimate", "--theta", "0.2", "--level", "9", "--mode", "sampled",
                                         "--seed", "17", "--count", "20000"};
  auto with = [&](const std::string& out) {
    auto v = args;
    v.push_back("--json-out");
    v.push_back(out);
    return v;
  };
  CHECK(run(with(a)).code == kExitOk);
  CHECK(run(with(b)).code == kExitOk);
  CHECK(strip_timestamps(load(a)).dump() == strip_timestamps(load(b)).dump());
}

TEST_CASE("ls oracles") {
  const std::string rep = scratch("ls.json");
  CHECK(run({"ls", "--oracle", "segment", "--json-out", rep}).code == kExitOk);
  const auto j = load(rep);
  const double end = j.at("endpoint_fit").at("slope");
  CHECK(end > 0.4);
  CHECK(end < 0.6);
  CHECK(j.at("ls").at("exponent").get<double>() == doctest::Approx(1.0).epsilon(0.1));
  const auto r = run({"ls", "--theta", "0.002", "--leja-n", "128"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("LS exponent estimate") != std::string::npos);
}

TEST_CASE("thresholds and sweep") {
  const auto t = run({"thresholds"});
  CHECK(t.code == kExitOk);
  for (const char* s : {"1.06237", "0.00377697", "0.0910383", "0.120774", "0.368044", "0.392699", "1.11111"})
    CHECK(t.out.find(s) != std::string::npos);
  const std::string rep = scratch("sweep.json");
  CHECK(run({"sweep", "--theta-min", "0.001", "--theta-max", "0.01", "--steps", "9", "--json-out", rep}).code ==
        kExitOk);
  const auto j = load(rep);
  CHECK(j.at("rows").size() == 10);
  CHECK(j.at("rows")[0].at("verdict") == "CertifiedMinimumSet");
  CHECK(j.at("rows")[9].at("verdict") == "NotCertified");
}
