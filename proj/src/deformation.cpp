#include "mgk/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mgk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_coords(const Signature& sig, const Eigen::VectorXd& x) {
  if (x.size() != sig.dim()) throw InputError("angle vector has wrong dimension");
  for (Eigen::Index m = 0; m < x.size(); ++m)
    if (!std::isfinite(x[m]) || !(x[m] > 0) || !(x[m] < kPi))
      throw DomainError("coordinate " + std::to_string(m + 1) + " outside (0,pi)");
}

// Boundary-edge cosh as a function of beta and its derivative.
double edge_rhs(double b) { return std::cos(b) / (1 - std::cos(b)); }
double edge_rhs_d(double b) {
  const double d = 1 - std::cos(b);
  return -std::sin(b) / (d * d);
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Eigen::VectorXd residuals(const Signature& sig, const Eigen::VectorXd& x) {
  sig.check();
  check_coords(sig, x);
  const int k = sig.k;
  Eigen::VectorXd r(sig.n_residuals());
  const double rhs = edge_rhs(x[beta_index(k)]);
  for (int l = 0; l < 2 * k; ++l)
    for (int j = 0; j < 3; ++j) {
      const double a1 = x[alpha_index(l, j)];
      const double a2 = x[alpha_index(l, (j + 1) % 3)];
      const double g = x[gamma_index(l, (j + 2) % 3)];
      r[3 * l + j] =
          (std::cos(a1) * std::cos(a2) + std::cos(g)) / (std::sin(a1) * std::sin(a2)) - rhs;
    }
  for (int l = 0; l < 2 * k; ++l)
    r[6 * k + l] = x[gamma_index(l, 0)] + x[gamma_index(l, 1)] + x[gamma_index(l, 2)] - kPi;
  for (int i = 0; i < k; ++i) {
    double P[3];
    for (int j = 0; j < 3; ++j)
      P[j] = std::sin(x[alpha_index(2 * i, j)]) * std::sin(x[alpha_index(2 * i + 1, j)]) *
             std::sin(x[gamma_index(2 * i, j)]) * std::sin(x[gamma_index(2 * i + 1, j)]);
    r[8 * k + 2 * i] = P[0] - P[1];
    r[8 * k + 2 * i + 1] = P[1] - P[2];
  }
  double s = 6.0 * (sig.g - k) * x[beta_index(k)] - 2 * kPi;
  for (int l = 0; l < 2 * k; ++l)
    for (int j = 0; j < 3; ++j) s += x[alpha_index(l, j)];
  r[10 * k] = s;
  return r;
}

Eigen::MatrixXd residual_jacobian(const Signature& sig, const Eigen::VectorXd& x) {
  sig.check();
  check_coords(sig, x);
  const int k = sig.k;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(sig.n_residuals(), sig.dim());
  const Eigen::Index ib = beta_index(k);
  const double drhs = edge_rhs_d(x[ib]);
  for (int l = 0; l < 2 * k; ++l)
    for (int j = 0; j < 3; ++j) {
      const Eigen::Index i1 = alpha_index(l, j), i2 = alpha_index(l, (j + 1) % 3),
                         ig = gamma_index(l, (j + 2) % 3);
      const double c1 = std::cos(x[i1]), s1 = std::sin(x[i1]);
      const double c2 = std::cos(x[i2]), s2 = std::sin(x[i2]);
      const double cg = std::cos(x[ig]), sg = std::sin(x[ig]);
      const int row = 3 * l + j;
      J(row, i1) = -(c2 + c1 * cg) / (s1 * s1 * s2);
      J(row, i2) = -(c1 + c2 * cg) / (s1 * s2 * s2);
      J(row, ig) = -sg / (s1 * s2);
      J(row, ib) = -drhs;
    }
  for (int l = 0; l < 2 * k; ++l)
    for (int j = 0; j < 3; ++j) J(6 * k + l, gamma_index(l, j)) = 1;
  for (int i = 0; i < k; ++i) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> dP = Eigen::MatrixXd::Zero(3, sig.dim());
    for (int j = 0; j < 3; ++j) {
      const Eigen::Index idx[4] = {alpha_index(2 * i, j), alpha_index(2 * i + 1, j),
                                   gamma_index(2 * i, j), gamma_index(2 * i + 1, j)};
      for (int a = 0; a < 4; ++a) {
        double d = std::cos(x[idx[a]]);
        for (int b = 0; b < 4; ++b)
          if (b != a) d *= std::sin(x[idx[b]]);
        dP(j, idx[a]) = d;
      }
    }
    J.row(8 * k + 2 * i) = dP.row(0) - dP.row(1);
    J.row(8 * k + 2 * i + 1) = dP.row(1) - dP.row(2);
  }
  for (int l = 0; l < 2 * k; ++l)
    for (int j = 0; j < 3; ++j) J(10 * k, alpha_index(l, j)) = 1;
  J(10 * k, ib) = 6.0 * (sig.g - k);
  return J;
}

CompleteSolution solve_complete(const Signature& sig) {
  sig.check();
  const int g = sig.g, k = sig.k;
  auto beta_of = [&](double a) { return (2 * kPi - 6.0 * k * a) / (6.0 * (g - k)); };
  auto f = [&](double a) {
    const double c = std::cos(a);
    return std::cos(beta_of(a)) - (2 * c * c + 1) / 3;
  };
  // f increases strictly from f(0+) < 0 to f(pi/3k) > 0.
  double lo = 0, hi = kPi / (3.0 * k);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi), b = beta_of(a);
  for (int it = 0; it < 4; ++it) {
    const double c = std::cos(a), s = std::sin(a);
    Eigen::Vector2d F(std::cos(b) - (2 * c * c + 1) / 3, 6.0 * (g - k) * b + 6.0 * k * a - 2 * kPi);
    Eigen::Matrix2d J;
    J << 4 * c * s / 3, -std::sin(b), 6.0 * k, 6.0 * (g - k);
    const Eigen::Vector2d d = J.partialPivLu().solve(-F);
    a += d[0];
    b += d[1];
  }
  CompleteSolution cs;
  cs.alpha_bar = a;
  cs.beta_bar = b;
  cs.x0 = Eigen::VectorXd::Constant(sig.dim(), 0.0);
  for (int l = 0; l < 2 * k; ++l)
    for (int j = 0; j < 3; ++j) {
      cs.x0[alpha_index(l, j)] = a;
      cs.x0[gamma_index(l, j)] = kPi / 3;
    }
  cs.x0[beta_index(k)] = b;
  if (!(a < b && b < 2 * a && 2 * a <= kPi / 3))
    throw ConvergenceError("complete solution violates alpha < beta < 2 alpha <= pi/3", 1);
  if (inf_norm(residuals(sig, cs.x0)) > 1e-12)
    throw ConvergenceError("complete solution residual above 1e-12", 1);
  return cs;
}

std::pair<cd, cd> uv(const Eigen::VectorXd& x, int i) {
  const int l = 2 * i;
  if (i < 0 || gamma_index(l + 1, 2) >= x.size()) throw InputError("cusp index out of range");
  double A[3], B[3];
  for (int j = 0; j < 3; ++j) {
    A[j] = x[gamma_index(l, j)];
    B[j] = x[gamma_index(l + 1, j)];
    if (!(A[j] > 0 && A[j] < kPi && B[j] > 0 && B[j] < kPi))
      throw DomainError("gamma angle outside (0,pi)");
  }
  using std::log;
  using std::sin;
  const cd u(log(sin(A[0]) * sin(B[1]) / (sin(A[1]) * sin(B[0]))), A[2] - B[2]);
  const cd v(log(sin(A[1]) * sin(B[2]) / (sin(A[2]) * sin(B[1]))), A[0] - B[0]);
  return {u, v};
}

Eigen::MatrixXd uv_jacobian(const Eigen::VectorXd& x, int i) {
  const int l = 2 * i;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, x.size());
  auto a = [&](int j) { return gamma_index(l, j); };
  auto b = [&](int j) { return gamma_index(l + 1, j); };
  auto cot = [&](Eigen::Index m) { return std::cos(x[m]) / std::sin(x[m]); };
  D(0, a(0)) += cot(a(0));
  D(0, b(1)) += cot(b(1));
  D(0, a(1)) -= cot(a(1));
  D(0, b(0)) -= cot(b(0));
  D(1, a(2)) = 1;
  D(1, b(2)) = -1;
  D(2, a(1)) += cot(a(1));
  D(2, b(2)) += cot(b(2));
  D(2, a(2)) -= cot(a(2));
  D(2, b(1)) -= cot(b(1));
  D(3, a(0)) = 1;
  D(3, b(0)) = -1;
  return D;
}

std::optional<Eigen::Vector2d> dehn_coefficients(const Eigen::VectorXd& x, int i,
                                                 double zero_tol) {
  const auto [u, v] = uv(x, i);
  if (std::abs(u) < zero_tol) return std::nullopt;
  Eigen::Matrix2d M;
  M << u.real(), v.real(), u.imag(), v.imag();
  const double det = M.determinant();
  if (std::abs(det) <= 1e-14 * std::max(1.0, std::norm(u) + std::norm(v)))
    throw DomainError("u and v are real-proportional; coefficients undefined");
  return Eigen::Vector2d(M.partialPivLu().solve(Eigen::Vector2d(0, 2 * kPi)));
}

NewtonReport damped_newton(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
                           const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& J,
                           Eigen::VectorXd& x, const SolverOptions& opt, double tol) {
  NewtonReport rep;
  auto eval = [&](const Eigen::VectorXd& y) {
    try {
      return inf_norm(F(y));
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  double nr = eval(x);
  const double lo = opt.eps_dom, hi = kPi - opt.eps_dom;
  for (int it = 0; it < opt.max_newton && nr > opt.polish; ++it) {
    const Eigen::VectorXd r = F(x);
    const Eigen::VectorXd dx = J(x).partialPivLu().solve(-r);
    if (!dx.allFinite()) break;
    bool accepted = false;
    for (double lam = 1; lam >= 1.0 / 1024; lam /= 2) {
      const Eigen::VectorXd y = (x + lam * dx).cwiseMax(lo).cwiseMin(hi);
      const double ny = eval(y);
      if (ny < (1 - 1e-4 * lam) * nr) {
        x = y;
        nr = ny;
        accepted = true;
        break;
      }
    }
    ++rep.iterations;
    if (!accepted) break;
  }
  rep.residual = nr;
  rep.converged = nr <= tol;
  return rep;
}

DehnTarget to_target(const FillingSpec& spec) {
  DehnTarget t;
  t.reserve(spec.size());
  for (const auto& s : spec)
    t.push_back(s ? std::optional<Eigen::Vector2d>(Eigen::Vector2d(double(s->p), double(s->q)))
                  : std::nullopt);
  return t;
}

Eigen::VectorXd filling_residuals(const Signature& sig, const DehnTarget& target,
                                  const Eigen::VectorXd& x) {
  const int k = sig.k;
  Eigen::VectorXd r(sig.dim());
  r.head(sig.n_residuals()) = residuals(sig, x);
  for (int i = 0; i < k; ++i) {
    const auto [u, v] = uv(x, i);
    cd e = u;
    if (target[i]) e = (*target[i])[0] * u + (*target[i])[1] * v - cd(0, 2 * kPi);
    r[10 * k + 1 + 2 * i] = e.real();
    r[10 * k + 2 + 2 * i] = e.imag();
  }
  return r;
}

Eigen::MatrixXd filling_jacobian(const Signature& sig, const DehnTarget& target,
                                 const Eigen::VectorXd& x) {
  const int k = sig.k;
  Eigen::MatrixXd J(sig.dim(), sig.dim());
  J.topRows(sig.n_residuals()) = residual_jacobian(sig, x);
  for (int i = 0; i < k; ++i) {
    const Eigen::MatrixXd D = uv_jacobian(x, i);
    if (target[i]) {
      const double p = (*target[i])[0], q = (*target[i])[1];
      J.row(10 * k + 1 + 2 * i) = p * D.row(0) + q * D.row(2);
      J.row(10 * k + 2 + 2 * i) = p * D.row(1) + q * D.row(3);
    } else {
      J.row(10 * k + 1 + 2 * i) = D.row(0);
      J.row(10 * k + 2 + 2 * i) = D.row(1);
    }
  }
  return J;
}

FillingResult solve_target(const Signature& sig, const DehnTarget& target,
                           const SolverOptions& opt) {
  sig.check();
  if (static_cast<int>(target.size()) != sig.k)
    throw InputError("filling target needs one entry per cusp");
  double Lmin = std::numeric_limits<double>::infinity();
  for (const auto& c : target)
    if (c) {
      const double p = (*c)[0], q = (*c)[1];
      const double L = std::sqrt(p * p + q * q - p * q);
      if (!(L > 0) || !std::isfinite(L)) throw InputError("zero or non-finite filling coefficients");
      Lmin = std::min(Lmin, L);
    }
  const double T0 = std::isfinite(Lmin) ? std::max(1.0, opt.L_safe / Lmin) : 1.0;

  auto scaled = [&](double t) {
    DehnTarget s = target;
    for (auto& c : s)
      if (c) *c *= t;
    return s;
  };
  auto solve_at = [&](double t, Eigen::VectorXd& y, FillingResult& acc) {
    const DehnTarget tt = scaled(t);
    const auto rep = damped_newton([&](const Eigen::VectorXd& z) { return filling_residuals(sig, tt, z); },
                                   [&](const Eigen::VectorXd& z) { return filling_jacobian(sig, tt, z); },
                                   y, opt, opt.tol);
    acc.newton_iterations += rep.iterations;
    return rep.converged;
  };

  FillingResult res;
  Eigen::VectorXd x = solve_complete(sig).x0;
  if (!solve_at(T0, x, res))
    throw ConvergenceError("Newton failed at the continuation start", std::numeric_limits<double>::quiet_NaN());
  double t = T0, rho = opt.rho;
  while (t > 1) {
    const double next = std::max(1.0, t / rho);
    Eigen::VectorXd y = x;
    if (solve_at(next, y, res)) {
      x = y;
      t = next;
      ++res.continuation_steps;
    } else {
      rho = 1 + (rho - 1) / 2;
      if (t - std::max(1.0, t / rho) < opt.min_step)
        throw ConvergenceError("continuation step underflow", t);
    }
  }
  res.x = x;
  res.residual = inf_norm(filling_residuals(sig, target, x));
  return res;
}

FillingResult solve_filling(const Signature& sig, const FillingSpec& spec,
                            const SolverOptions& opt) {
  sig.check();
  if (static_cast<int>(spec.size()) != sig.k)
    throw InputError("filling spec needs one entry per cusp");
  for (const auto& s : spec) {
    if (!s) continue;
    if (gcd(s->p, s->q) != 1) throw InputError("slope " + to_string(*s) + " is not coprime");
    if (!opt.allow_short && s->length_sq() < 7)
      throw InputError("slope " + to_string(*s) +
                       " has length below sqrt(7); the filling is not hyperbolic");
  }
  return solve_target(sig, to_target(spec), opt);
}

Eigen::MatrixXd tangent_basis(const Signature& sig) {
  sig.check();
  const double a = solve_complete(sig).alpha_bar;
  const double ratio = std::sqrt(3.0) * std::cos(a) / std::sin(a);
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(sig.dim(), 2 * sig.k);
  const Eigen::Vector3d w[2] = {{2, -1, -1}, {0, 1, -1}};
  for (int i = 0; i < sig.k; ++i)
    for (int c = 0; c < 2; ++c) {
      auto col = Z.col(2 * i + c);
      for (int j = 0; j < 3; ++j) {
        col[alpha_index(2 * i, j)] = w[c][j];
        col[gamma_index(2 * i, j)] = ratio * w[c][j];
        col[alpha_index(2 * i + 1, j)] = -w[c][j];
        col[gamma_index(2 * i + 1, j)] = -ratio * w[c][j];
      }
    }
  return Z;
}

double subspace_distance(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return 1.0;
  const Eigen::MatrixXd QA = A.householderQr().householderQ() * Eigen::MatrixXd::Identity(A.rows(), A.cols());
  const Eigen::MatrixXd QB = B.householderQr().householderQ() * Eigen::MatrixXd::Identity(B.rows(), B.cols());
  const Eigen::MatrixXd D = QA * QA.transpose() - QB * QB.transpose();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(D).singularValues()[0];
}

NullspaceReport nullspace(const Eigen::MatrixXd& J, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  NullspaceReport rep;
  rep.singular_values = svd.singularValues();
  const auto& s = rep.singular_values;
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > rel_tol * s[0]) ++rank;
  rep.nullity = J.cols() - rank;
  rep.basis = svd.matrixV().rightCols(rep.nullity);
  double response = 0;
  for (Eigen::Index c = 0; c < rep.basis.cols(); ++c)
    response = std::max(response, (J * rep.basis.col(c)).norm());
  for (Eigen::Index m = rank; m < s.size(); ++m) response = std::max(response, s[m]);
  rep.gap = rank > 0 ? s[rank - 1] / std::max(response, std::numeric_limits<double>::min())
                     : 0.0;
  return rep;
}

VarsigmaDerivatives varsigma_derivatives(const Signature& sig) {
  sig.check();
  const double a = solve_complete(sig).alpha_bar;
  const double s = std::sin(a), c = std::cos(a), r3 = std::sqrt(3.0);
  VarsigmaDerivatives d;
  d.first = Eigen::VectorXd::Zero(sig.dim());
  d.second = Eigen::VectorXd::Zero(sig.dim());
  d.first.head(12) << 2 * s, -s, -s, 2 * r3 * c, -r3 * c, -r3 * c,
                      -2 * s, s, s, -2 * r3 * c, r3 * c, r3 * c;
  Eigen::Matrix<double, 6, 1> blk;
  blk << 8 * c * s, -4 * c * s, -4 * c * s, 2 * r3, -r3, -r3;
  d.second.segment<6>(0) = blk;
  d.second.segment<6>(6) = blk;
  return d;
}

Eigen::VectorXd varsigma_curve(const Signature& sig, double t,
                               const std::optional<Eigen::VectorXd>& warm) {
  sig.check();
  const int k = sig.k;
  const auto cs = solve_complete(sig);
  const double slice = 4 * std::sin(cs.alpha_bar) * t;
  const Eigen::Index nr = sig.n_residuals();
  auto F = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd r(sig.dim());
    r.head(nr) = residuals(sig, y);
    Eigen::Index row = nr;
    r[row++] = y[1] - y[2];
    for (int i = 1; i < k; ++i) {
      r[row++] = y[12 * i] - y[12 * i + 1];
      r[row++] = y[12 * i + 1] - y[12 * i + 2];
    }
    r[row] = y[0] - y[6] - slice;
    return r;
  };
  auto Jf = [&](const Eigen::VectorXd& y) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(sig.dim(), sig.dim());
    J.topRows(nr) = residual_jacobian(sig, y);
    Eigen::Index row = nr;
    J(row, 1) = 1;
    J(row++, 2) = -1;
    for (int i = 1; i < k; ++i) {
      J(row, 12 * i) = 1;
      J(row++, 12 * i + 1) = -1;
      J(row, 12 * i + 1) = 1;
      J(row++, 12 * i + 2) = -1;
    }
    J(row, 0) = 1;
    J(row, 6) = -1;
    return J;
  };
  Eigen::VectorXd x = warm ? *warm : Eigen::VectorXd(cs.x0 + t * varsigma_derivatives(sig).first);
  SolverOptions opt;
  const auto rep = damped_newton(F, Jf, x, opt, 1e-12);
  if (!rep.converged) throw ConvergenceError("curve point did not converge", t);
  return x;
}

}  // namespace mgk
