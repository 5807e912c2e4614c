#ifndef MGK_DEFORMATION_HPP
#define MGK_DEFORMATION_HPP

#include "mgk/core.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace mgk {

// Residual layout (10k+1 rows):
//   [0, 6k)        length matching, row 3l+j uses (alpha_l^j, alpha_l^{j+1}, gamma_l^{j+2})
//   [6k, 8k)       ideal vertex sums gamma_l^0+gamma_l^1+gamma_l^2-pi
//   [8k, 10k)      sigma matching Pi^0-Pi^1, Pi^1-Pi^2 for each cusp
//   10k            angle sum
Eigen::VectorXd residuals(const Signature& sig, const Eigen::VectorXd& x);
Eigen::MatrixXd residual_jacobian(const Signature& sig, const Eigen::VectorXd& x);

// Central differences; test oracle for the analytic Jacobians.
template <typename F>
Eigen::MatrixXd finite_difference_jacobian(F&& f, const Eigen::VectorXd& x, double h = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  Eigen::VectorXd xp = x, xm = x;
  for (Eigen::Index m = 0; m < x.size(); ++m) {
    xp[m] = x[m] + h;
    xm[m] = x[m] - h;
    J.col(m) = (f(xp) - f(xm)) / (2 * h);
    xp[m] = xm[m] = x[m];
  }
  return J;
}

struct CompleteSolution {
  double alpha_bar = 0;
  double beta_bar = 0;
  Eigen::VectorXd x0;
};

CompleteSolution solve_complete(const Signature& sig);

// Completeness coordinates of cusp i.
std::pair<cd, cd> uv(const Eigen::VectorXd& x, int i);

// Rows: d Re u, d Im u, d Re v, d Im v.
Eigen::MatrixXd uv_jacobian(const Eigen::VectorXd& x, int i);

// Real (p,q) with p u + q v = 2 pi i; nullopt when |u| < zero_tol.
std::optional<Eigen::Vector2d> dehn_coefficients(const Eigen::VectorXd& x, int i,
                                                 double zero_tol = 1e-10);

struct SolverOptions {
  double tol = 1e-10;          // accepted final max-norm residual
  double polish = 1e-14;       // Newton keeps iterating down to this
  int max_newton = 25;
  double L_safe = 20;
  double rho = 1.5;
  double min_step = 1e-4;
  double eps_dom = 1e-12;
  bool allow_short = false;    // skip the sqrt(7) hyperbolicity threshold
};

struct NewtonReport {
  bool converged = false;
  double residual = 0;
  int iterations = 0;
};

// Damped Newton on a square system; x is updated in place.
NewtonReport damped_newton(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
                           const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& J,
                           Eigen::VectorXd& x, const SolverOptions& opt, double tol);

struct FillingResult {
  Eigen::VectorXd x;
  double residual = 0;
  int continuation_steps = 0;
  int newton_iterations = 0;
};

DehnTarget to_target(const FillingSpec& spec);

// Square system: residuals plus two real equations per cusp.
Eigen::VectorXd filling_residuals(const Signature& sig, const DehnTarget& target,
                                  const Eigen::VectorXd& x);
Eigen::MatrixXd filling_jacobian(const Signature& sig, const DehnTarget& target,
                                 const Eigen::VectorXd& x);

// Continuation from x0 for real coefficient targets (no integrality checks).
FillingResult solve_target(const Signature& sig, const DehnTarget& target,
                           const SolverOptions& opt = {});

// Validates the spec (coprime, slope length >= sqrt 7 unless allow_short).
FillingResult solve_filling(const Signature& sig, const FillingSpec& spec,
                            const SolverOptions& opt = {});

// Closed-form basis of the tangent space at x0, one column per vector (2 per cusp).
Eigen::MatrixXd tangent_basis(const Signature& sig);

// Largest principal-angle sine between the column spans of A and B.
double subspace_distance(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

struct NullspaceReport {
  Eigen::VectorXd singular_values;  // of J, descending
  Eigen::Index nullity = 0;
  double gap = 0;                   // smallest kept singular value over largest null response
  Eigen::MatrixXd basis;            // orthonormal null directions
};

// Rank decided by relative threshold rel_tol on the singular values.
NullspaceReport nullspace(const Eigen::MatrixXd& J, double rel_tol = 1e-8);

struct VarsigmaDerivatives {
  Eigen::VectorXd first;
  Eigen::VectorXd second;
};

// Closed forms at x0, second derivative under the pin x1'' = x7''.
VarsigmaDerivatives varsigma_derivatives(const Signature& sig);

// Point of the curve {x2 = x3, later cusps symmetric} in Omega with x1 - x7 = 4 sin(abar) t.
Eigen::VectorXd varsigma_curve(const Signature& sig, double t,
                               const std::optional<Eigen::VectorXd>& warm = std::nullopt);

}  // namespace mgk

#endif
