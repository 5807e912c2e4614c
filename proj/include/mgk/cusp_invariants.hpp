#ifndef MGK_CUSP_INVARIANTS_HPP
#define MGK_CUSP_INVARIANTS_HPP

#include "mgk/core.hpp"

#include <utility>

namespace mgk {

struct HolonomyDilation {
  cd a;  // meridian
  cd b;  // longitude
};

// Evaluated from the sine ratios directly (not through uv).
HolonomyDilation holonomy_dilations(const Eigen::VectorXd& x, int i);

struct CuspShape {
  cd tau;      // canonical representative
  cd raw_tau;  // z(lambda)/z(mu) before reduction
};

// Reduce to |tau| >= 1, -1/2 < Re tau <= 1/2, Re tau >= 0 on the unit circle.
cd canonical_modulus(cd tau);

// Requires |u_i| < complete_tol.
CuspShape cusp_modulus(const Eigen::VectorXd& x, int i, double complete_tol = 1e-8);

// (r,s) with p s - q r = -1.
std::pair<long, long> dual_pair(long p, long q);

struct ComplexLength {
  cd value;  // Re > 0, Im in (-pi, pi]
};

ComplexLength complex_length(const Eigen::VectorXd& x, int i, long p, long q);
ComplexLength complex_length_with(const Eigen::VectorXd& x, int i, long r, long s);

double boundary_edge_cosh_of_beta(double beta);
double return_path_length(const Signature& sig, const Eigen::VectorXd& x);
double return_path_length_of_beta(double beta);

int homology_rank(const Signature& sig, int filled);
int heegaard_genus(const Signature& sig);

}  // namespace mgk

#endif
