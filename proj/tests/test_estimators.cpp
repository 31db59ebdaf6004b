#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "minset/constants.hpp"
#include "minset/estimators.hpp"
#include "minset/parallel.hpp"

using namespace minset;
using doctest::Approx;
using std::numbers::pi;

namespace {

SampledCurve segment(std::size_t m) {
  SampledCurve c;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = double(k) / double(m - 1);
    c.samples.push_back({t, Point(t, 0)});
  }
  return c;
}

void set_threads(const char* n) { ::setenv("MINSET_THREADS", n, 1); }

// Exhaustive numpy evaluations of the same quantities.
constexpr double kPi6Level8Min = 0.483459078354427;
constexpr double kPi6Level8Max = 1.0120921947927;
constexpr double kTheta01Level8Max = 1.00084013688793;
constexpr double kTheta01Min = 0.979643648041724;
constexpr double kNearCriticalChat = 1.00002857748054;

}  // namespace

TEST_CASE("worker count honours the environment") {
  set_threads("3");
  CHECK(worker_count() == 3);
  set_threads("1");
  CHECK(worker_count() == 1);
  ::unsetenv("MINSET_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("chunk seeds differ") {
  CHECK(chunk_seed(1, 0) != chunk_seed(1, 1));
  CHECK(chunk_seed(1, 0) != chunk_seed(2, 0));
  CHECK(chunk_seed(5, 9) == chunk_seed(5, 9));
}

TEST_CASE("straight segment") {
  const auto c = segment(101);
  const auto h = empirical_holder(c, 1.0);
  CHECK(h.ratio_min == Approx(1.0).epsilon(1e-12));
  CHECK(h.ratio_max == Approx(1.0).epsilon(1e-12));
  CHECK(h.pair_count == 101 * 100 / 2);
  const auto a = empirical_ahlfors(c);
  CHECK(std::abs(a.c_hat - 1) < 1e-12);
  CHECK(a.delta_used == Approx(0.25));
}

TEST_CASE("right-angle corner") {
  SampledCurve c;
  c.samples = {{0.0, Point(0, 0)}, {0.5, Point(1, 0)}, {1.0, Point(1, 1)}};
  const auto a = empirical_ahlfors(c, 10.0);
  CHECK(a.c_hat == Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(a.triple_count == 1);
  CHECK(a.arg_triple[1] == 0.5);
}

TEST_CASE("closed square uses the smaller arc") {
  SampledCurve c;
  c.closed = true;
  c.samples = {{0.0, Point(0, 0)}, {0.25, Point(1, 0)}, {0.5, Point(1, 1)}, {0.75, Point(0, 1)}};
  const auto a = empirical_ahlfors(c, 10.0);
  CHECK(a.c_hat == Approx(std::sqrt(2.0)).epsilon(1e-14));
  const auto h = empirical_holder(c, 1.0);
  // Adjacent corners: |dz| = 1 over dt = 1/4; opposite: sqrt(2) over 1/2.
  CHECK(h.ratio_max == Approx(4.0));
  CHECK(h.ratio_min == Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("argument checks") {
  const auto c = segment(10);
  CHECK_THROWS_AS(empirical_holder(c, 0.0), InvalidArgument);
  CHECK_THROWS_AS(empirical_ahlfors(c, -1.0), InvalidArgument);
  CHECK_THROWS_AS(empirical_holder(c, 1.0, Sampled{1, 0}), InvalidArgument);
  CHECK_THROWS_AS(empirical_ahlfors(segment(2)), InvalidArgument);
  CHECK_THROWS_AS(empirical_ahlfors(c, 1e-6), GuardError);
}

TEST_CASE("Koch sandwich") {
  for (double th : {0.002, 0.05, 0.1, pi / 8, pi / 6}) {
    const Angle a(th);
    const auto b = koch_bounds(a);
    for (int level : {4, 8, 10}) {
      const auto h = empirical_holder(node_curve(nodes(a, level)), b.gamma);
      CHECK(h.ratio_min >= b.A - 1e-9);
      CHECK(h.ratio_max <= b.B + 1e-9);
      CHECK(h.ratio_min <= h.ratio_max);
    }
  }
}

TEST_CASE("regression against independent enumeration") {
  const Angle a6(pi / 6);
  const auto h = empirical_holder(node_curve(nodes(a6, 8)), gamma_of(a6));
  CHECK(h.ratio_min == Approx(kPi6Level8Min).epsilon(1e-12));
  CHECK(h.ratio_max == Approx(kPi6Level8Max).epsilon(1e-12));

  const Angle a(0.1);
  const auto h8 = empirical_holder(node_curve(nodes(a, 8)), gamma_of(a));
  CHECK(h8.ratio_min == Approx(kTheta01Min).epsilon(1e-12));
  CHECK(h8.ratio_max == Approx(kTheta01Level8Max).epsilon(1e-12));
}

TEST_CASE("Ahlfors bound on Koch nodes") {
  for (double th : {0.002, 0.05, 0.1, pi / 8, pi / 6}) {
    const Angle a(th);
    const auto est = empirical_ahlfors(node_curve(nodes(a, 8)));
    CHECK(est.c_hat >= 1);
    CHECK(est.c_hat <= ahlfors_constant(koch_bounds(a)) + 1e-9);
  }
}

TEST_CASE("near the critical angle") {
  const auto est = empirical_ahlfors(node_curve(nodes(Angle(0.00378), 10)));
  CHECK(est.c_hat >= 1.0);
  CHECK(est.c_hat <= c_star() + 0.01);
  CHECK(est.c_hat == Approx(kNearCriticalChat).epsilon(1e-12));
}

TEST_CASE("space-filling angle") {
  const auto est = empirical_ahlfors(node_curve(nodes(Angle(pi / 4), 8)));
  CHECK(est.c_hat >= std::sqrt(2.0) - 0.01);
  CHECK(est.degenerate_pairs > 0);
}

TEST_CASE("convergence sweep") {
  const int levels[] = {4, 6, 8};
  const auto rows = convergence_sweep(Angle(0.1), levels);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].samples > rows[i - 1].samples);
    CHECK(rows[i].holder.ratio_min <= rows[i - 1].holder.ratio_min + 1e-12);
    CHECK(rows[i].holder.ratio_max >= rows[i - 1].holder.ratio_max - 1e-12);
    CHECK(rows[i].ahlfors.c_hat >= rows[i - 1].ahlfors.c_hat - 1e-12);
  }
  const int bad[] = {6, 4};
  CHECK_THROWS_AS(convergence_sweep(Angle(0.1), bad), InvalidArgument);
}

TEST_CASE("sampled mode is deterministic across thread counts") {
  const auto curve = node_curve(nodes(Angle(0.2), 9));
  const Sampled mode{42, 30000};
  set_threads("1");
  const auto h1 = empirical_holder(curve, 0.9, mode);
  const auto a1 = empirical_ahlfors(curve, std::nullopt, Sampled{42, 500});
  set_threads("4");
  const auto h4 = empirical_holder(curve, 0.9, mode);
  const auto a4 = empirical_ahlfors(curve, std::nullopt, Sampled{42, 500});
  ::unsetenv("MINSET_THREADS");
  CHECK(h1.ratio_min == h4.ratio_min);
  CHECK(h1.ratio_max == h4.ratio_max);
  CHECK(h1.argmin_pair == h4.argmin_pair);
  CHECK(h1.pair_count == 30000);
  CHECK(a1.c_hat == a4.c_hat);
  CHECK(a1.arg_triple == a4.arg_triple);

  const auto other = empirical_holder(curve, 0.9, Sampled{43, 30000});
  CHECK((other.ratio_min != h1.ratio_min || other.ratio_max != h1.ratio_max));
}

TEST_CASE("exhaustive mode is deterministic across thread counts") {
  const auto curve = pi_theta(Angle(0.15), 12, 4);
  set_threads("1");
  const auto a1 = empirical_ahlfors(curve);
  set_threads("4");
  const auto a4 = empirical_ahlfors(curve);
  ::unsetenv("MINSET_THREADS");
  CHECK(a1.c_hat == a4.c_hat);
  CHECK(a1.arg_triple == a4.arg_triple);
  CHECK(a1.triple_count == a4.triple_count);
}

TEST_CASE("forced sampling above the triple cap") {
  const auto curve = node_curve(nodes(Angle(0.05), 13));
  const auto est = empirical_ahlfors(curve);
  CHECK(est.forced_sampled);
  CHECK(std::holds_alternative<Sampled>(est.mode_used));
  CHECK(est.c_hat <= ahlfors_constant(koch_bounds(Angle(0.05))) + 1e-9);
}

TEST_CASE("hull diameter") {
  std::vector<Point> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  CHECK(hull_diameter(pts) == Approx(std::sqrt(2.0)));
  std::vector<Point> line = {{0, 0}, {1, 0}, {3, 0}};
  CHECK(hull_diameter(line) == Approx(3.0));
  const auto c = pi_theta(Angle(0.2), 7, 3);
  CHECK(hull_diameter(c.points()) == Approx(diameter(c)).epsilon(1e-14));
}
