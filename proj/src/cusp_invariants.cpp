#include "mgk/cusp_invariants.hpp"

#include "mgk/deformation.hpp"
#include "mgk/hyptrig.hpp"

#include <cmath>
#include <numbers>

namespace mgk {

namespace {

constexpr double kPi = std::numbers::pi;

cd reduce_mod_2pi_i(cd z) {
  double im = std::remainder(z.imag(), 2 * kPi);
  if (im <= -kPi) im += 2 * kPi;
  return {z.real(), im};
}

}  // namespace

HolonomyDilation holonomy_dilations(const Eigen::VectorXd& x, int i) {
  double A[3], B[3];
  for (int j = 0; j < 3; ++j) {
    A[j] = x[gamma_index(2 * i, j)];
    B[j] = x[gamma_index(2 * i + 1, j)];
    check_angle(A[j]);
    check_angle(B[j]);
  }
  using std::sin;
  const double ma = sin(A[0]) * sin(B[1]) / (sin(A[1]) * sin(B[0]));
  const double mb = sin(A[1]) * sin(B[2]) / (sin(A[2]) * sin(B[1]));
  return {std::polar(ma, A[2] - B[2]), std::polar(mb, A[0] - B[0])};
}

cd canonical_modulus(cd tau) {
  if (!(tau.imag() > 0)) throw DomainError("modulus must lie in the upper half-plane");
  constexpr double eps = 1e-12;
  for (int it = 0; it < 100; ++it) {
    tau -= std::round(tau.real());
    if (std::norm(tau) < 1 - eps)
      tau = -1.0 / tau;
    else
      break;
  }
  if (tau.real() < -0.5 + eps) tau += 1.0;
  if (std::abs(std::norm(tau) - 1) < eps && tau.real() < 0) tau = -1.0 / tau;
  return tau;
}

CuspShape cusp_modulus(const Eigen::VectorXd& x, int i, double complete_tol) {
  const auto [u, v] = uv(x, i);
  if (!(std::abs(u) < complete_tol))
    throw DomainError("cusp " + std::to_string(i + 1) + " is not complete; no Euclidean modulus");
  double A[3], B[3];
  for (int j = 0; j < 3; ++j) {
    A[j] = x[gamma_index(2 * i, j)];
    B[j] = x[gamma_index(2 * i + 1, j)];
  }
  // Link of the first tetrahedron, positively oriented, P_j at the f^{j+1} edge.
  const cd P1(0, 0), P2(1, 0);
  const cd P3 = std::polar(std::sin(A[1]) / std::sin(A[2]), A[0]);
  // The second link is the half-turn image across P2P3 (labels reversed):
  // its f^1 corner sits at P2 + P3 - P1 and must carry the same angles.
  const cd P4 = P2 + P3 - P1;
  const double side = std::abs(P4 - P3) / std::abs(P4 - P2);
  if (std::abs(side - std::sin(B[2]) / std::sin(B[1])) > 1e-6)
    throw DomainError("cusp triangles do not close up");
  CuspShape s;
  s.raw_tau = (P3 - P2) / (P2 - P1);
  s.tau = canonical_modulus(s.raw_tau);
  return s;
}

std::pair<long, long> dual_pair(long p, long q) {
  // extended Euclid: p*x + q*y = g
  long old_r = p, r = q, old_x = 1, xx = 0, old_y = 0, yy = 1;
  while (r != 0) {
    const long quo = old_r / r;
    long t = old_r - quo * r;
    old_r = r;
    r = t;
    t = old_x - quo * xx;
    old_x = xx;
    xx = t;
    t = old_y - quo * yy;
    old_y = yy;
    yy = t;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_x = -old_x;
    old_y = -old_y;
  }
  if (old_r != 1) throw InputError("coefficients are not coprime");
  return {old_y, -old_x};
}

ComplexLength complex_length_with(const Eigen::VectorXd& x, int i, long r, long s) {
  const auto [u, v] = uv(x, i);
  cd cl = reduce_mod_2pi_i(double(r) * u + double(s) * v);
  if (cl.real() < 0) cl = reduce_mod_2pi_i(-cl);
  return {cl};
}

ComplexLength complex_length(const Eigen::VectorXd& x, int i, long p, long q) {
  const auto [u, v] = uv(x, i);
  if (std::abs(double(p) * u + double(q) * v - cd(0, 2 * kPi)) > 1e-6 &&
      std::abs(-double(p) * u - double(q) * v - cd(0, 2 * kPi)) > 1e-6)
    throw DomainError("cusp " + std::to_string(i + 1) + " is not filled with " +
                      std::to_string(p) + "/" + std::to_string(q));
  const auto [r, s] = dual_pair(p, q);
  return complex_length_with(x, i, r, s);
}

double boundary_edge_cosh_of_beta(double beta) {
  return std::cos(beta) / (1 - std::cos(beta));
}

double return_path_length_of_beta(double beta) {
  check_angle(beta);
  const double c = boundary_edge_cosh_of_beta(beta);
  if (!(c > 1 + 1e-12)) throw DomainError("beta >= pi/3: boundary edges degenerate");
  return length_from_cosh(hexagon_side_cosh(c, c, c));
}

double return_path_length(const Signature& sig, const Eigen::VectorXd& x) {
  if (x.size() != sig.dim()) throw InputError("angle vector has wrong dimension");
  return return_path_length_of_beta(x[beta_index(sig.k)]);
}

int homology_rank(const Signature& sig, int filled) {
  sig.check();
  if (filled < 0 || filled > sig.k) throw InputError("filled cusp count out of range");
  return sig.g + sig.k - filled;
}

int heegaard_genus(const Signature& sig) {
  sig.check();
  return sig.g + 1;
}

}  // namespace mgk
