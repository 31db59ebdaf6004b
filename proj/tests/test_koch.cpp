#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <cstdint>
#include <random>

#include "minset/koch.hpp"

using namespace minset;
using std::numbers::pi;

TEST_CASE("angle range") {
  CHECK_THROWS_AS(Angle(0.0), InvalidArgument);
  CHECK_THROWS_AS(Angle(-0.1), InvalidArgument);
  CHECK_THROWS_AS(Angle(pi / 4 + 1e-9), InvalidArgument);
  CHECK_NOTHROW(Angle(pi / 4));
}

TEST_CASE("similarities") {
  SUBCASE("quarter turn") {
    const Angle a(pi / 4);
    const auto [s1, s2] = similarities(a);
    CHECK(s1.scale == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(a.apex().x() == doctest::Approx(0.5));
    CHECK(a.apex().y() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK((s1(Point(1, 0)) - a.apex()).norm() < 1e-15);
    CHECK((s2(Point(0, 0)) - a.apex()).norm() < 1e-15);
    CHECK((s2(Point(1, 0)) - Point(1, 0)).norm() < 1e-15);
  }
  SUBCASE("sixth turn") {
    const Angle a(pi / 6);
    CHECK(a.lambda() == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(a.apex().y() == doctest::Approx(0.288675134594813).epsilon(1e-14));
  }
  SUBCASE("flat limit") {
    const Angle a(1e-9);
    CHECK(a.lambda() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(a.apex().y()) < 1e-9);
  }
}

TEST_CASE("nodes") {
  const Angle a(0.3);
  const auto n0 = nodes(a, 0);
  REQUIRE(n0.nodes.size() == 2);
  CHECK(n0.nodes[0] == Point(0, 0));
  CHECK(n0.nodes[1] == Point(1, 0));

  const auto n1 = nodes(a, 1);
  REQUIRE(n1.nodes.size() == 3);
  CHECK((n1.nodes[1] - Point(0.5, std::tan(0.3) / 2)).norm() < 1e-15);

  CHECK_THROWS_AS(nodes(a, 25), GuardError);
  CHECK_THROWS_AS(nodes(a, -1), InvalidArgument);
}

TEST_CASE("level-2 node against complex composition") {
  const double th = pi / 6;
  const std::complex<double> apex(0.5, std::tan(th) / 2);
  // S1(w) = apex * conj(w); node[1] of level 2 is S1(S1(1)).
  const auto s1 = [&](std::complex<double> w) { return apex * std::conj(w); };
  const std::complex<double> expected = s1(s1(1.0));
  const auto n2 = nodes(Angle(th), 2);
  CHECK(std::abs(n2.nodes[1].x() - expected.real()) < 1e-15);
  CHECK(std::abs(n2.nodes[1].y() - expected.imag()) < 1e-15);
  // S1 o S1 is a pure scaling by lambda^2.
  CHECK(n2.nodes[1].x() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(n2.nodes[1].y()) < 1e-15);
}

TEST_CASE("refinement and segment length") {
  for (double th : {0.01, 0.1, pi / 8, pi / 6, pi / 4}) {
    const Angle a(th);
    for (int n = 0; n < 10; ++n) {
      const auto coarse = nodes(a, n);
      const auto fine = nodes(a, n + 1);
      REQUIRE(fine.nodes.size() == 2 * coarse.nodes.size() - 1);
      double err = 0;
      for (std::size_t k = 0; k < coarse.nodes.size(); ++k)
        err = std::max(err, (coarse.nodes[k] - fine.nodes[2 * k]).norm());
      CHECK(err < 1e-12);

      const double len = std::pow(a.lambda(), n);
      double rel = 0;
      for (std::size_t k = 0; k + 1 < coarse.nodes.size(); ++k)
        rel = std::max(rel, std::abs((coarse.nodes[k + 1] - coarse.nodes[k]).norm() - len) / len);
      CHECK(rel < 1e-12);
    }
  }
}

TEST_CASE("phi endpoints, apex and nodes") {
  for (double th : {0.05, 0.2, pi / 4}) {
    const Angle a(th);
    CHECK(phi(a, 0.0).norm() == 0.0);
    CHECK(phi(a, 1.0) == Point(1, 0));
    CHECK((phi(a, 0.5) - a.apex()).norm() < 1e-15);
    CHECK_THROWS_AS(phi(a, 1.5), InvalidArgument);
    for (int n = 0; n <= 12; ++n) {
      const auto set = nodes(a, n);
      const double scale = std::ldexp(1.0, -n);
      double err = 0;
      for (std::size_t k = 0; k < set.nodes.size(); ++k)
        err = std::max(err, (phi(a, k * scale) - set.nodes[k]).norm());
      CHECK(err < 1e-12);
    }
  }
}

TEST_CASE("phi symmetry and convergence") {
  std::mt19937_64 rng(7);
  // t on the 2^-52 grid so that 1 - t is exact and the full address fits
  // the default depth.
  std::uniform_int_distribution<std::uint64_t> grid(0, std::uint64_t(1) << 52);
  for (double th : {0.05, pi / 6, pi / 4}) {
    const Angle a(th);
    double sym = 0;
    double conv_excess = -1;
    for (int i = 0; i < 1000; ++i) {
      const double t = std::ldexp(double(grid(rng)), -52);
      const Point p = phi(a, t);
      const Point q = phi(a, 1.0 - t);
      sym = std::max(sym, (Point(1.0 - p.x(), p.y()) - q).norm());
      const int d = 12 + i % 20;
      const double gap = (phi(a, t, d) - phi(a, t, d + 10)).norm();
      // Anchor-0 truncation stays within lambda^d times diam of the first triangle (1).
      conv_excess = std::max(conv_excess, gap - std::pow(a.lambda(), d));
    }
    CHECK(sym < 1e-12);
    CHECK(conv_excess <= 0);
  }
}

TEST_CASE("phi_projection") {
  SUBCASE("apex is stationary") {
    for (int n : {1, 3, 9}) {
      const Angle a(0.3);
      CHECK((phi_projection(a, 0.5, n) - a.apex()).norm() < 1e-14);
    }
  }
  SUBCASE("matches nodes") {
    for (double th : {0.05, pi / 6}) {
      const Angle a(th);
      for (int n = 1; n <= 8; ++n) {
        const auto set = nodes(a, n);
        double err = 0;
        for (std::size_t k = 1; k + 1 < set.nodes.size(); ++k)
          err = std::max(err, (phi_projection(a, std::ldexp(double(k), -n), n) - set.nodes[k]).norm());
        CHECK(err < 1e-10);
      }
    }
  }
  SUBCASE("error bound at random t") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(1e-6, 1 - 1e-6);
    for (double th : {0.05, 0.3, pi / 4}) {
      const Angle a(th);
      double excess = -1;
      for (int i = 0; i < 500; ++i) {
        const double t = unif(rng);
        const int n = 1 + i % 14;
        excess = std::max(excess, (phi_projection(a, t, n) - phi(a, t)).norm() - projection_error_bound(a, n));
      }
      CHECK(excess <= 1e-12);
    }
  }
  CHECK_THROWS_AS(phi_projection(Angle(0.1), 0.0, 3), InvalidArgument);
  CHECK_THROWS_AS(phi_projection(Angle(0.1), 0.5, 0), InvalidArgument);
}

TEST_CASE("closed Koch polygon") {
  SUBCASE("hexagon at level 0") {
    const auto c = pi_theta(Angle(0.2), 6, 0);
    REQUIRE(c.size() == 6);
    CHECK(c.closed);
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK((c.z((j + 1) % 6) - c.z(j)).norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(c.z(j).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("sample count") {
    for (int sides : {3, 7, 12})
      for (int level : {0, 1, 4}) CHECK(pi_theta(Angle(0.1), sides, level).size() == std::size_t(sides) << level);
  }
  SUBCASE("edge parameter ranges") {
    const auto c = pi_theta(Angle(0.1), 12, 3);
    CHECK(c.t(0) == 0.0);
    CHECK(c.t(8) == doctest::Approx(1.0 / 12));
    CHECK_NOTHROW(validate(c));
  }
  SUBCASE("bumps point outward") {
    const auto c = pi_theta(Angle(0.4), 12, 1);
    const double r = 1 / (2 * std::sin(pi / 12));
    for (std::size_t j = 0; j < 12; ++j) CHECK(c.z(2 * j + 1).norm() > r * std::cos(pi / 12));
  }
  SUBCASE("corner angle") {
    const Angle a(0.1);
    for (int level : {1, 2, 3}) {
      const auto c = pi_theta(a, 12, level);
      const double expected = pi * 10 / 12 + 2 * first_segment_elevation(a, level);
      for (std::size_t j = 0; j < 12; ++j)
        CHECK(interior_angle(c, j << level) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(first_segment_elevation(a, 1) == doctest::Approx(0.1).epsilon(1e-14));
  }
  CHECK_THROWS_AS(pi_theta(Angle(0.1), 2, 1), InvalidArgument);
}
