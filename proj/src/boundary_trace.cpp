#include "mgk/boundary_trace.hpp"

#include "mgk/cusp_invariants.hpp"
#include "mgk/deformation.hpp"
#include "mgk/hyptrig.hpp"

#include <cmath>
#include <numbers>

namespace mgk {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void check_lambda_theta(double lambda, double theta) {
  if (!(lambda > 1)) throw DomainError("lambda must exceed 1");
  if (!(theta > 0 && theta < kTwoPi)) throw DomainError("angle must lie in (0, 2 pi)");
}

double lambda_of_beta(double beta) {
  return std::exp(length_from_cosh(boundary_edge_cosh_of_beta(beta)));
}

}  // namespace

void TraceInput::check() const {
  check_lambda_theta(lambda0, eta0);
  check_lambda_theta(lambda0, zeta0);
  if (delta != 0 && delta != 1) throw InputError("delta must be 0 or 1");
}

Eigen::Matrix2d mobius_A(double lambda, double theta) {
  check_lambda_theta(lambda, theta);
  const double r = std::sqrt(lambda), s = std::sin(theta / 2), c = std::cos(theta / 2);
  Eigen::Matrix2d A;
  A << r * s, -r * c, c / r, s / r;
  return A;
}

double trace_gamma(double lambda, double eta, double zeta) {
  check_lambda_theta(lambda, eta);
  check_lambda_theta(lambda, zeta);
  const double se = std::sin(eta / 2), ce = std::cos(eta / 2);
  const double sz = std::sin(zeta / 2), cz = std::cos(zeta / 2);
  return (lambda + 1 / lambda) * se * sz - 2 * ce * cz;
}

double stima_bracket(double lambda0, double eta0, double zeta0) {
  return (lambda0 + 1 / lambda0) * std::cos(eta0 / 2) * std::sin(zeta0 / 2) +
         2 * std::sin(eta0 / 2) * std::cos(zeta0 / 2);
}

bool stima_inequality(double lambda0, double eta0, double zeta0) {
  return stima_bracket(lambda0, eta0, zeta0) > 0;
}

double trace_second_derivative(const TraceInput& inp) {
  inp.check();
  const double L = inp.lambda0 + 1 / inp.lambda0;
  const double se = std::sin(inp.eta0 / 2), ce = std::cos(inp.eta0 / 2);
  const double sz = std::sin(inp.zeta0 / 2), cz = std::cos(inp.zeta0 / 2);
  const double twice = inp.eta_dd * stima_bracket(inp.lambda0, inp.eta0, inp.zeta0) +
                       inp.zeta_dd * (L * se * cz + 2 * ce * sz);
  return twice / 2;
}

std::pair<double, double> admissible_r0_range(const Signature& sig, int delta) {
  if (delta != 0 && delta != 1) throw InputError("delta must be 0 or 1");
  const double a = solve_complete(sig).alpha_bar;
  return {0.1, kTwoPi - (4 + 2 * delta) * a - a};
}

TraceInput varsigma_trace_data(const Signature& sig, int delta, double r0) {
  if (delta != 0 && delta != 1) throw InputError("delta must be 0 or 1");
  if (!(r0 > 0 && r0 < kTwoPi)) throw DomainError("r0 must lie in (0, 2 pi)");
  const auto cs = solve_complete(sig);
  const Eigen::VectorXd dd = varsigma_derivatives(sig).second;
  TraceInput inp;
  inp.delta = delta;
  inp.lambda0 = lambda_of_beta(cs.beta_bar);
  inp.eta0 = 2 * cs.alpha_bar;
  inp.zeta0 = (4 + 2 * delta) * cs.alpha_bar + r0;
  inp.eta_dd = dd[2] + dd[8];
  inp.zeta_dd = dd[0] + dd[6] + dd[1] + dd[7] + delta * inp.eta_dd;
  inp.check();
  return inp;
}

double trace_along_curve(const Signature& sig, int delta, double r0, double t) {
  if (delta != 0 && delta != 1) throw InputError("delta must be 0 or 1");
  const Eigen::VectorXd x = varsigma_curve(sig, t);
  const double eta = x[2] + x[8];
  const double zeta = x[0] + x[6] + x[1] + x[7] + delta * eta + r0;
  return trace_gamma(lambda_of_beta(x[beta_index(sig.k)]), eta, zeta);
}

}  // namespace mgk
