#include "mgk/commensurability.hpp"

#include "mgk/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mgk {

void XkSignature::check() const {
  if (k < 1 || k % 2 == 0) throw InputError("X_k needs odd k >= 1");
}

std::vector<Eigen::Index> edge_angle_cycle(const XkSignature& sig) {
  sig.check();
  const int k = sig.k;
  const Eigen::Index beta = beta_index(k);
  std::vector<Eigen::Index> cyc;
  cyc.reserve(6 * (k + 1));
  for (int row = 0; row < 3; ++row) {
    for (int rep = 0; rep <= row; ++rep) cyc.push_back(beta);
    for (int l = 0; l < 2 * k; ++l) cyc.push_back(alpha_index(l, row));
  }
  return cyc;
}

ABCInvariant abc(const Eigen::VectorXd& x, const XkSignature& sig) {
  sig.check();
  if (x.size() != sig.signature().dim()) throw InputError("angle vector does not match X_k");
  ABCInvariant r;
  r.ai.resize(sig.k);
  r.bi.resize(sig.k);
  r.ci.resize(sig.k);
  for (int i = 0; i < sig.k; ++i) {
    r.ai[i] = x[alpha_index(2 * i, 0)] + x[alpha_index(2 * i + 1, 0)];
    r.bi[i] = x[alpha_index(2 * i, 1)] + x[alpha_index(2 * i + 1, 1)];
    r.ci[i] = x[alpha_index(2 * i, 2)] + x[alpha_index(2 * i + 1, 2)];
  }
  r.a = r.ai.sum();
  r.b = r.bi.sum();
  r.c = r.ci.sum();
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Commensurable: return "commensurable";
    case Verdict::NotCommensurable: return "not commensurable";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

double abc_gap(const ABCInvariant& A, const ABCInvariant& B) {
  return std::max({std::abs(A.a - B.a), std::abs(A.b - B.b), std::abs(A.c - B.c)});
}

Verdict commensurable(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                      const XkSignature& sig, double tol) {
  const double gap = abc_gap(abc(x1, sig), abc(x2, sig));
  if (gap < tol) return Verdict::Commensurable;
  if (gap > 10 * tol) return Verdict::NotCommensurable;
  return Verdict::Indeterminate;
}

Eigen::VectorXd theta_r(const Eigen::VectorXd& x, const XkSignature& sig, int n) {
  sig.check();
  // In these coordinates the alternating orientation of the hexagon
  // arrangement cancels the alternating rotation sign, so every cusp block
  // sees phi_i(r)^{-1}.
  const D6Element step(-1, false);
  Eigen::VectorXd y = x;
  for (int rep = 0; rep < ((n % 6) + 6) % 6; ++rep)
    for (int i = 0; i < sig.k; ++i) y = phi(step, y, i);
  return y;
}

Eigen::VectorXd tau_13(const Eigen::VectorXd& x, const XkSignature& sig) {
  sig.check();
  if (sig.k < 3) throw InputError("tau_13 needs k >= 3");
  std::vector<int> kappa(sig.k);
  std::iota(kappa.begin(), kappa.end(), 0);
  std::swap(kappa[0], kappa[2]);
  return permute_cusps(x, kappa);
}

}  // namespace mgk
