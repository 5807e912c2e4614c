#include "mgk/hyptrig.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace mgk;
using std::numbers::pi;

TEST_SUITE("hyptrig") {

TEST_CASE("triangle side cosh closed forms") {
  CHECK(triangle_side_cosh(pi / 4, pi / 4, pi / 4) == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-14));

  const double a = 0.4935;
  CHECK(std::abs(triangle_side_cosh(a, a, a) - std::cos(a) / (1 - std::cos(a))) < 1e-12);

  // Euclidean degeneration
  CHECK(triangle_side_cosh(pi / 3 - 1e-6, pi / 3 - 1e-6, pi / 3 - 1e-6) - 1 < 1e-5);
}

TEST_CASE("triangle side cosh domain") {
  CHECK_THROWS_AS(triangle_side_cosh(pi / 3, pi / 3, pi / 3), DomainError);
  CHECK_THROWS_AS(triangle_side_cosh(0.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(triangle_side_cosh(-0.1, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(triangle_side_cosh(0.5, pi, 0.5), DomainError);
  CHECK_THROWS_AS(triangle_side_cosh(std::nan(""), 0.5, 0.5), DomainError);
}

TEST_CASE("sine rule on random triangles") {
  gen::Rng rng(11);
  for (int n = 0; n < 500; ++n) {
    const double a1 = gen::uniform(rng, 0.01, 1.5), a2 = gen::uniform(rng, 0.01, 1.5);
    const double a3 = gen::uniform(rng, 0.01, std::min(1.5, pi - a1 - a2 - 0.01));
    if (a3 <= 0.01) continue;
    const auto c = triangle_sides(a1, a2, a3);
    const double r1 = sinh_from_cosh(c[0]) / std::sin(a1);
    const double r2 = sinh_from_cosh(c[1]) / std::sin(a2);
    const double r3 = sinh_from_cosh(c[2]) / std::sin(a3);
    CHECK(std::abs(r1 - r2) < 1e-12 * std::max(1.0, r1));
    CHECK(std::abs(r1 - r3) < 1e-12 * std::max(1.0, r1));
  }
  const auto c = triangle_sides(0.3, 0.5, 0.7);
  CHECK(std::abs(sinh_from_cosh(c[0]) / std::sin(0.3) - sinh_from_cosh(c[2]) / std::sin(0.7)) < 1e-12);
}

TEST_CASE("triangle sides follow their angles under relabeling") {
  const auto c = triangle_sides(0.3, 0.5, 0.7);
  const auto d = triangle_sides(0.7, 0.3, 0.5);
  CHECK(d[0] == doctest::Approx(c[2]).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(c[0]).epsilon(1e-15));
  CHECK(d[2] == doctest::Approx(c[1]).epsilon(1e-15));
  const auto e = triangle_sides(0.4, 0.4, 0.4);
  CHECK(e[0] == e[1]);
  CHECK(e[1] == e[2]);
}

TEST_CASE("triangle side cosh decreases in the opposite angle") {
  gen::Rng rng(12);
  for (int n = 0; n < 200; ++n) {
    const double a2 = gen::uniform(rng, 0.1, 1.0), a3 = gen::uniform(rng, 0.1, 1.0);
    const double top = pi - a2 - a3;
    const double a1 = gen::uniform(rng, 0.05, top - 0.05);
    const double h = 1e-6;
    CHECK(triangle_side_cosh(a1 + h, a2, a3) < triangle_side_cosh(a1 - h, a2, a3));
  }
}

TEST_CASE("regular hexagon identity") {
  gen::Rng rng(13);
  for (int n = 0; n < 200; ++n) {
    const double c = gen::uniform(rng, 1.001, 50);
    CHECK(std::abs(hexagon_side_cosh(c, c, c) - c / (c - 1)) < 1e-14 * (c / (c - 1)) * 4);
  }
  CHECK(hexagon_side_cosh(3.0, 2.0, 5.0) == hexagon_side_cosh(3.0, 5.0, 2.0));
  CHECK_THROWS_AS(hexagon_side_cosh(1.0, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(hexagon_side_cosh(2.0, 0.5, 2.0), DomainError);
}

TEST_CASE("return path cosh at the (2,1) complete structure") {
  const double b = oracle::complete_table()[0].beta_bar;
  const double c = std::cos(b) / (1 - std::cos(b));
  CHECK(length_from_cosh(hexagon_side_cosh(c, c, c)) ==
        doctest::Approx(oracle::complete_table()[0].return_path).epsilon(1e-13));
  CHECK_THROWS_AS(length_from_cosh(0.99), DomainError);
}

}
