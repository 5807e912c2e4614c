#ifndef MGK_COMMENSURABILITY_HPP
#define MGK_COMMENSURABILITY_HPP

#include "mgk/core.hpp"

#include <string>
#include <vector>

namespace mgk {

// X_k lives in M_{k+1,k}, k odd.
struct XkSignature {
  int k = 1;

  void check() const;
  Signature signature() const { return {k + 1, k}; }
};

// 0-based coordinate indices in cyclic order around the compact edge.
std::vector<Eigen::Index> edge_angle_cycle(const XkSignature& sig);

struct ABCInvariant {
  double a = 0, b = 0, c = 0;
  Eigen::VectorXd ai, bi, ci;  // per cusp
};

ABCInvariant abc(const Eigen::VectorXd& x, const XkSignature& sig);

enum class Verdict { Commensurable, NotCommensurable, Indeterminate };

std::string to_string(Verdict v);

double abc_gap(const ABCInvariant& A, const ABCInvariant& B);

// Equal (a,b,c) within tol; gaps between tol and 10 tol are indeterminate.
Verdict commensurable(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                      const XkSignature& sig, double tol = 1e-8);

// Order-6 symmetry acting as phi_i(r)^{-1} on every cusp block, applied n times.
// Coefficients transform as (p,q) -> (q, q-p) on each cusp.
Eigen::VectorXd theta_r(const Eigen::VectorXd& x, const XkSignature& sig, int n = 1);

// Exchange of cusps 1 and 3.
Eigen::VectorXd tau_13(const Eigen::VectorXd& x, const XkSignature& sig);

}  // namespace mgk

#endif
