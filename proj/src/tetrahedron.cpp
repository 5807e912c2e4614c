#include "mgk/tetrahedron.hpp"

#include "mgk/hyptrig.hpp"

#include <cmath>
#include <numbers>

namespace mgk {

namespace {

int mod3(int j) { return ((j % 3) + 3) % 3; }

// log(sinh L) without overflow for large L
double log_sinh(double L) {
  if (!(L > 0)) throw DomainError("sigma needs positive lengths");
  return L + std::log1p(-std::exp(-2 * L)) - std::numbers::ln2;
}

}  // namespace

TruncatedTetrahedron TruncatedTetrahedron::from_angles(const Eigen::VectorXd& x, int l) {
  TruncatedTetrahedron t;
  for (int j = 0; j < 3; ++j) {
    t.alpha[j] = x[alpha_index(l, j)];
    t.gamma[j] = x[gamma_index(l, j)];
  }
  return t;
}

TruncatedTetrahedron TruncatedTetrahedron::compact_regular(double beta) {
  TruncatedTetrahedron t;
  t.ideal_vertex = false;
  t.alpha = {beta, beta, beta};
  t.gamma = {beta, beta, beta};
  return t;
}

std::vector<std::string> validate(const TruncatedTetrahedron& tet, double tol) {
  std::vector<std::string> bad;
  const double pi = std::numbers::pi;
  for (int j = 0; j < 3; ++j) {
    if (!(tet.alpha[j] > 0 && tet.alpha[j] < pi))
      bad.push_back("alpha[" + std::to_string(j) + "] outside (0,pi)");
    if (!(tet.gamma[j] > 0 && tet.gamma[j] < pi))
      bad.push_back("gamma[" + std::to_string(j) + "] outside (0,pi)");
  }
  const double s0 = tet.gamma[0] + tet.gamma[1] + tet.gamma[2];
  if (tet.ideal_vertex) {
    if (std::abs(s0 - pi) > tol) bad.push_back("ideal vertex angle sum != pi");
  } else if (!(s0 < pi)) {
    bad.push_back("vertex 0 angle sum >= pi");
  }
  for (int m = 0; m < 3; ++m) {
    const auto t = truncation_triangle(tet, m);
    if (!(t[0] + t[1] + t[2] < pi))
      bad.push_back("vertex " + std::to_string(m + 1) + " angle sum >= pi");
  }
  return bad;
}

std::array<double, 3> truncation_triangle(const TruncatedTetrahedron& tet, int m) {
  m = mod3(m);
  return {tet.gamma[m], tet.alpha[mod3(m + 1)], tet.alpha[mod3(m + 2)]};
}

double boundary_edge_cosh(const TruncatedTetrahedron& tet, int j) {
  const auto t = truncation_triangle(tet, j + 2);
  return triangle_side_cosh(t[0], t[1], t[2]);
}

double internal_edge_cosh(double b1, double b2, double b3) {
  return hexagon_side_cosh(b1, b2, b3);
}

ExceptionalHexagonData exceptional_hexagon(const TruncatedTetrahedron& tet, int j) {
  if (!tet.ideal_vertex) throw DomainError("exceptional hexagons need an ideal vertex");
  j = mod3(j);
  ExceptionalHexagonData h;
  h.theta_e1 = tet.gamma[mod3(j + 1)];
  h.theta_e2 = tet.gamma[mod3(j + 2)];
  h.theta_e4 = tet.alpha[mod3(j + 1)];
  h.theta_e5 = tet.alpha[mod3(j + 2)];
  h.L_e46 = length_from_cosh(boundary_edge_cosh(tet, j));
  h.L_e56 = length_from_cosh(boundary_edge_cosh(tet, j + 2));
  return h;
}

double sigma(const ExceptionalHexagonData& h) {
  check_angle(h.theta_e1);
  check_angle(h.theta_e2);
  check_angle(h.theta_e4);
  check_angle(h.theta_e5);
  return log_sinh(h.L_e56) - log_sinh(h.L_e46) +
         std::log(std::sin(h.theta_e2) * std::sin(h.theta_e5) /
                  (std::sin(h.theta_e1) * std::sin(h.theta_e4)));
}

}  // namespace mgk
