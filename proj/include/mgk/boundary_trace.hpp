#ifndef MGK_BOUNDARY_TRACE_HPP
#define MGK_BOUNDARY_TRACE_HPP

#include "mgk/core.hpp"

#include <utility>

namespace mgk {

struct TraceInput {
  double lambda0 = 0;  // exp of the boundary-edge length
  double eta0 = 0;
  double zeta0 = 0;
  double eta_dd = 0;
  double zeta_dd = 0;
  int delta = 0;

  void check() const;
};

// SL(2,R) representative taking the half-geodesic [i, oo) to the one leaving
// lambda i at angle theta.
Eigen::Matrix2d mobius_A(double lambda, double theta);

// tr A(lambda, eta) A(lambda, zeta) for the displayed representatives.
double trace_gamma(double lambda, double eta, double zeta);

// Second derivative at 0 when lambda is constant to second order and the
// first derivatives of eta, zeta vanish.
double trace_second_derivative(const TraceInput& inp);

// The bracket multiplying eta'' in 2 tr''.
double stima_bracket(double lambda0, double eta0, double zeta0);
bool stima_inequality(double lambda0, double eta0, double zeta0);

// lambda0 from beta at x0, eta and zeta from the curve's second-order data.
TraceInput varsigma_trace_data(const Signature& sig, int delta, double r0);

// Closed interval of r0 used by the scans: zeta0 stays at least abar below 2 pi.
std::pair<double, double> admissible_r0_range(const Signature& sig, int delta);

// Trace of the boundary holonomy at the curve point with parameter t.
double trace_along_curve(const Signature& sig, int delta, double r0, double t);

}  // namespace mgk

#endif
