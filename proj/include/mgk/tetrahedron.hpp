#ifndef MGK_TETRAHEDRON_HPP
#define MGK_TETRAHEDRON_HPP

#include "mgk/core.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mgk {

// Partially truncated tetrahedron. Vertices v0..v3; f^j = v0 v_j carries
// gamma[j], e^j = v_{j+1} v_{j+2} carries alpha[j] (indices mod 3, 1-based
// v_j mapped to j in [0,3)). With ideal_vertex set, v0 is the ideal vertex.
struct TruncatedTetrahedron {
  bool ideal_vertex = true;
  std::array<double, 3> alpha{};
  std::array<double, 3> gamma{};

  static TruncatedTetrahedron from_angles(const Eigen::VectorXd& x, int l);
  static TruncatedTetrahedron compact_regular(double beta);
};

// Empty iff the angle assignment is realized geometrically.
std::vector<std::string> validate(const TruncatedTetrahedron& tet, double tol = 1e-10);

// Truncation triangle at non-ideal vertex m: angles (gamma^m, alpha^{m+1}, alpha^{m+2}).
std::array<double, 3> truncation_triangle(const TruncatedTetrahedron& tet, int m);

// Boundary edge in the compact face opposite gamma^{j+2}.
double boundary_edge_cosh(const TruncatedTetrahedron& tet, int j);

// Internal edge of the compact hexagon opposite boundary edge b1.
double internal_edge_cosh(double b1, double b2, double b3);

struct ExceptionalHexagonData {
  double theta_e1 = 0, theta_e2 = 0, theta_e4 = 0, theta_e5 = 0;
  double L_e46 = 0, L_e56 = 0;
};

// Data of the exceptional face F^j (the face through v0 containing e^j).
ExceptionalHexagonData exceptional_hexagon(const TruncatedTetrahedron& tet, int j);

double sigma(const ExceptionalHexagonData& hex);

}  // namespace mgk

#endif
