#include "mgk/deformation.hpp"

#include "mgk/cusp_invariants.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mgk;
using std::numbers::pi;

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_SUITE("deformation") {

TEST_CASE("signature and layout") {
  CHECK_THROWS_AS(Signature({1, 1}).check(), InputError);
  CHECK_THROWS_AS(Signature({3, 0}).check(), InputError);
  CHECK_NOTHROW(Signature({3, 2}).check());
  CHECK(Signature({4, 3}).dim() == 37);
  CHECK(Signature({4, 3}).n_residuals() == 31);
  CHECK(alpha_index(1, 2) == 8);
  CHECK(gamma_index(1, 0) == 9);
  CHECK(beta_index(3) == 36);
}

TEST_CASE("complete solutions match the frozen oracle") {
  for (const auto& o : oracle::complete_table()) {
    CAPTURE(o.g);
    CAPTURE(o.k);
    const Signature sig{o.g, o.k};
    const auto cs = solve_complete(sig);
    CHECK(std::abs(cs.alpha_bar - o.alpha_bar) < 1e-14);
    CHECK(std::abs(cs.beta_bar - o.beta_bar) < 1e-14);
    CHECK(inf_norm(residuals(sig, cs.x0)) < 1e-12);
    CHECK(cs.alpha_bar < cs.beta_bar);
    CHECK(cs.beta_bar < 2 * cs.alpha_bar);
    CHECK(2 * cs.alpha_bar <= pi / 3);
    CHECK(std::abs(6 * (o.g - o.k) * cs.beta_bar + 6 * o.k * cs.alpha_bar - 2 * pi) < 1e-13);
  }
}

TEST_CASE("residuals respond to beta linearly in the angle sum row") {
  const Signature sig{3, 1};
  Eigen::VectorXd x = solve_complete(sig).x0;
  const Eigen::VectorXd r0 = residuals(sig, x);
  x[beta_index(1)] += 1e-3;
  const Eigen::VectorXd r1 = residuals(sig, x);
  CHECK(std::abs((r1[10] - r0[10]) - 6 * 2 * 1e-3) < 1e-14);
  CHECK(inf_norm(r1.head(6) - r0.head(6)) > 1e-6);
  CHECK(inf_norm(r1.segment(6, 4) - r0.segment(6, 4)) == 0);
}

TEST_CASE("symmetric point with wrong beta leaves only length rows") {
  const Signature sig{2, 1};
  Eigen::VectorXd x = Eigen::VectorXd::Constant(13, pi / 3);
  for (int l = 0; l < 2; ++l)
    for (int j = 0; j < 3; ++j) x[alpha_index(l, j)] = 0.4;
  x[12] = (2 * pi - 6 * 0.4) / 6;  // angle sum holds
  const Eigen::VectorXd r = residuals(sig, x);
  CHECK(inf_norm(r.head(6)) > 1e-3);
  CHECK(inf_norm(r.tail(5)) < 1e-15);
}

TEST_CASE("residuals reject out-of-range coordinates") {
  const Signature sig{2, 1};
  Eigen::VectorXd x = solve_complete(sig).x0;
  x[3] = -0.1;
  CHECK_THROWS_AS(residuals(sig, x), DomainError);
  CHECK_THROWS_AS(residuals(sig, Eigen::VectorXd::Constant(5, 0.5)), InputError);
}

TEST_CASE("analytic Jacobian agrees with central differences") {
  gen::Rng rng(31);
  for (const auto& sig : {Signature{2, 1}, Signature{3, 2}, Signature{5, 3}}) {
    for (int n = 0; n < 5; ++n) {
      const Eigen::VectorXd x = gen::perturbed_point(rng, sig, 0.05);
      const Eigen::MatrixXd J = residual_jacobian(sig, x);
      const Eigen::MatrixXd Jf =
          finite_difference_jacobian([&](const Eigen::VectorXd& y) { return residuals(sig, y); }, x);
      CHECK((J - Jf).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, J.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("filling Jacobian agrees with central differences") {
  gen::Rng rng(32);
  const Signature sig{3, 2};
  const DehnTarget target{gen::long_coefficients(rng, 20, 40), std::nullopt};
  const Eigen::VectorXd x = gen::perturbed_point(rng, sig, 0.03);
  const Eigen::MatrixXd J = filling_jacobian(sig, target, x);
  const Eigen::MatrixXd Jf = finite_difference_jacobian(
      [&](const Eigen::VectorXd& y) { return filling_residuals(sig, target, y); }, x);
  CHECK((J - Jf).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("uv at x0 and at cusp-symmetric points") {
  const Signature sig{3, 2};
  const auto x0 = solve_complete(sig).x0;
  for (int i = 0; i < 2; ++i) {
    const auto [u, v] = uv(x0, i);
    CHECK(std::abs(u) < 1e-15);
    CHECK(std::abs(v) < 1e-15);
    CHECK_FALSE(dehn_coefficients(x0, i).has_value());
  }
  gen::Rng rng(33);
  Eigen::VectorXd x = gen::perturbed_point(rng, sig, 0.1);
  x.segment<6>(6) = x.segment<6>(0);
  const auto [u, v] = uv(x, 0);
  CHECK(std::abs(u) < 1e-15);
  CHECK(std::abs(v) < 1e-15);
  CHECK_THROWS_AS(uv(x, 2), InputError);
}

TEST_CASE("uv Jacobian agrees with central differences") {
  gen::Rng rng(34);
  const Signature sig{2, 1};
  const Eigen::VectorXd x = gen::perturbed_point(rng, sig, 0.1);
  const Eigen::MatrixXd D = uv_jacobian(x, 0);
  const Eigen::MatrixXd Df = finite_difference_jacobian(
      [&](const Eigen::VectorXd& y) {
        const auto [u, v] = uv(y, 0);
        return Eigen::Vector4d(u.real(), u.imag(), v.real(), v.imag());
      },
      x);
  CHECK((D - Df).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fillings reproduce the frozen prototype solves") {
  for (const auto& o : oracle::filled_table()) {
    CAPTURE(o.p);
    CAPTURE(o.q);
    const Signature sig{o.g, o.k};
    FillingSpec spec(sig.k);
    spec.back() = Slope(o.p, o.q);
    const auto res = solve_filling(sig, spec);
    CHECK(res.residual < 1e-10);
    CHECK(std::abs(res.x[beta_index(sig.k)] - o.beta) < 1e-9);
    const auto [u, v] = uv(res.x, sig.k - 1);
    CHECK(std::abs(u - o.u) < 1e-9);
    CHECK(std::abs(v - o.v) < 1e-9);
    const auto pq = dehn_coefficients(res.x, sig.k - 1);
    REQUIRE(pq);
    CHECK(std::abs((*pq)[0] - o.p) < 1e-9);
    CHECK(std::abs((*pq)[1] - o.q) < 1e-9);
  }
}

TEST_CASE("all-complete spec returns x0") {
  const Signature sig{3, 2};
  const auto res = solve_filling(sig, FillingSpec(2));
  CHECK(inf_norm(res.x - solve_complete(sig).x0) < 1e-14);
}

TEST_CASE("filling validation") {
  const Signature sig{2, 1};
  CHECK_THROWS_AS(solve_filling(sig, {Slope(2, 1)}), InputError);
  CHECK_THROWS_AS(solve_filling(sig, {Slope(1, 0)}), InputError);
  CHECK_THROWS_AS(solve_filling(sig, FillingSpec(2)), InputError);
  CHECK_THROWS_AS(Slope(4, 2), InputError);
  CHECK_THROWS_AS(Slope(0, 0), InputError);
  CHECK_THROWS_AS(solve_target(sig, {Eigen::Vector2d(0, 0)}), InputError);
  SolverOptions opt;
  opt.allow_short = true;
  CHECK_NOTHROW(solve_filling(sig, {Slope(3, 1)}, opt));
}

TEST_CASE("opposite orientation of a slope gives the same solve") {
  const Signature sig{2, 1};
  const auto a = solve_target(sig, {Eigen::Vector2d(7, 2)});
  const auto b = solve_target(sig, {Eigen::Vector2d(-7, -2)});
  // (u,v) -> conj-related structure: the angle vectors differ by the tetrahedron swap.
  Eigen::VectorXd swapped = b.x;
  swapped.head(6) = b.x.segment<6>(6);
  swapped.segment<6>(6) = b.x.head(6);
  CHECK(inf_norm(a.x - swapped) < 1e-9);
  CHECK(Slope(-7, -2) == Slope(7, 2));
}

TEST_CASE("continuation failure carries the last good multiplier") {
  const Signature sig{2, 1};
  SolverOptions opt;
  opt.max_newton = 1;
  opt.min_step = 0.5;
  try {
    solve_target(sig, {Eigen::Vector2d(3, 1)}, opt);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK((std::isnan(e.last_good_t) || e.last_good_t >= 1));
  }
}

TEST_CASE("|u| shrinks along (n,0)") {
  const Signature sig{2, 1};
  double prev = 1e9;
  for (double n : {10.0, 20.0, 40.0}) {
    const auto res = solve_target(sig, {Eigen::Vector2d(n, 0)});
    const double au = std::abs(uv(res.x, 0).first);
    CHECK(au < prev);
    prev = au;
  }
}

TEST_CASE("distinct fillings give distinct u") {
  gen::Rng rng(35);
  const Signature sig{3, 2};
  std::vector<std::pair<cd, cd>> seen;
  for (int n = 0; n < 12; ++n) {
    const Eigen::VectorXd x = gen::solved_point(rng, sig);
    const std::pair<cd, cd> u{uv(x, 0).first, uv(x, 1).first};
    for (const auto& s : seen) CHECK(std::abs(s.first - u.first) + std::abs(s.second - u.second) > 1e-8);
    seen.push_back(u);
  }
}

TEST_CASE("isolation pattern on cusp 1 of (3,2)") {
  const Signature sig{3, 2};
  for (const auto& s : {Slope(3, 1), Slope(5, 1), Slope(8, 3), Slope(7, -2), Slope(11, 4)}) {
    const auto res = solve_filling(sig, {std::nullopt, s});
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(res.x[alpha_index(l, j)] - res.x[0]) < 1e-9);
        CHECK(std::abs(res.x[gamma_index(l, j)] - pi / 3) < 1e-9);
      }
  }
}

TEST_CASE("tangent basis spans the Jacobian nullspace") {
  for (const auto& sig : {Signature{2, 1}, Signature{3, 2}, Signature{4, 3}, Signature{6, 3}}) {
    const auto cs = solve_complete(sig);
    const Eigen::MatrixXd Z = tangent_basis(sig);
    const Eigen::MatrixXd J = residual_jacobian(sig, cs.x0);
    CHECK(Z.cols() == 2 * sig.k);
    CHECK((J * Z).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(Z.row(sig.dim() - 1).cwiseAbs().maxCoeff() == 0);
    const auto ns = nullspace(J);
    CHECK(ns.nullity == 2 * sig.k);
    CHECK(ns.gap > 1e6);
    CHECK(subspace_distance(ns.basis, Z) < 1e-8);
  }
}

TEST_CASE("tangent basis satisfies the defining relations of Z") {
  const Signature sig{3, 2};
  const double a = solve_complete(sig).alpha_bar;
  const Eigen::MatrixXd Z = tangent_basis(sig);
  for (Eigen::Index c = 0; c < Z.cols(); ++c)
    for (int i = 0; i < 2; ++i) {
      const auto z = Z.col(c).segment<12>(12 * i);
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(std::sqrt(3.0) * std::cos(a) * z[j] - std::sin(a) * z[3 + j]) < 1e-14);
      for (int m = 0; m < 6; ++m) CHECK(std::abs(z[m] + z[6 + m]) < 1e-15);
      CHECK(std::abs(z[0] + z[1] + z[2]) < 1e-15);
    }
}

TEST_CASE("nullspace report on a known matrix") {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2, 4);
  J(0, 0) = 3;
  J(1, 1) = 1;
  const auto ns = nullspace(J);
  CHECK(ns.nullity == 2);
  CHECK(subspace_distance(ns.basis, Eigen::MatrixXd::Identity(4, 4).rightCols(2)) < 1e-15);
  CHECK(subspace_distance(Eigen::MatrixXd::Identity(4, 4).leftCols(2),
                          Eigen::MatrixXd::Identity(4, 4).rightCols(2)) == doctest::Approx(1.0));
}

TEST_CASE("varsigma first derivative lies in Z and has zero block sums") {
  for (const auto& sig : {Signature{2, 1}, Signature{4, 3}}) {
    const auto d = varsigma_derivatives(sig);
    const Eigen::MatrixXd Z = tangent_basis(sig);
    const Eigen::VectorXd proj = Z * Z.colPivHouseholderQr().solve(d.first);
    CHECK(inf_norm(proj - d.first) < 1e-13);
    CHECK(std::abs(d.first[0] + d.first[1] + d.first[2]) < 1e-15);
  }
}

TEST_CASE("varsigma second derivative closed form relation") {
  const Signature sig{3, 2};
  const double a = solve_complete(sig).alpha_bar;
  const auto d = varsigma_derivatives(sig);
  const double lhs = std::sqrt(3.0) * std::cos(a) * d.second[0] - std::sin(a) * d.second[3];
  CHECK(std::abs(lhs - 2 * std::sqrt(3.0) * std::sin(a) * (4 * std::cos(a) * std::cos(a) - 1)) < 1e-13);
  CHECK(d.second[0] == d.second[6]);
  CHECK(inf_norm(d.second.tail(sig.dim() - 12)) == 0);
}

TEST_CASE("varsigma curve points solve the system on the symmetric slice") {
  const Signature sig{3, 2};
  const auto cs = solve_complete(sig);
  for (double t : {-0.05, 0.0, 0.03}) {
    const Eigen::VectorXd x = varsigma_curve(sig, t);
    CHECK(inf_norm(residuals(sig, x)) < 1e-12);
    CHECK(std::abs(x[1] - x[2]) < 1e-12);
    CHECK(std::abs(x[12] - x[13]) < 1e-12);
    CHECK(std::abs(x[13] - x[14]) < 1e-12);
    CHECK(std::abs(x[0] - x[6] - 4 * std::sin(cs.alpha_bar) * t) < 1e-12);
  }
  CHECK(inf_norm(varsigma_curve(sig, 0.0) - cs.x0) < 1e-12);
}

TEST_CASE("varsigma curve: numeric derivatives match the closed forms") {
  for (const auto& sig : {Signature{2, 1}, Signature{3, 2}}) {
    const auto cs = solve_complete(sig);
    const auto d = varsigma_derivatives(sig);
    const double h = 0.005;
    const Eigen::VectorXd p1 = varsigma_curve(sig, h), m1 = varsigma_curve(sig, -h);
    const Eigen::VectorXd p2 = varsigma_curve(sig, 2 * h), m2 = varsigma_curve(sig, -2 * h);
    const Eigen::VectorXd first = (8 * (p1 - m1) - (p2 - m2)) / (12 * h);
    const Eigen::VectorXd s1 = (p1 + m1 - 2 * cs.x0) / (h * h);
    const Eigen::VectorXd s2 = (p2 + m2 - 2 * cs.x0) / (4 * h * h);
    CHECK(inf_norm(first - d.first) < 1e-6);
    CHECK(inf_norm((4 * s1 - s2) / 3 - d.second) < 1e-4);
  }
}

}
