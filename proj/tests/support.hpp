#ifndef MGK_TESTS_SUPPORT_HPP
#define MGK_TESTS_SUPPORT_HPP

#include "mgk/deformation.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

// 40-digit bracketed root of the reduced complete system, rounded to double.
struct Complete {
  int g, k;
  double alpha_bar, beta_bar, return_path, boundary_edge;
};

inline const std::vector<Complete>& complete_table() {
  static const std::vector<Complete> t = {
      {2, 1, 0.49332668154729901, 0.55387086964929874, 0.64202751532000353, 2.4238187123165344},
      {3, 1, 0.31897294639490017, 0.36411230240084879, 0.38606449424652401, 3.3489001643951978},
      {3, 2, 0.33347317225183212, 0.38025120669293352, 0.40546510810816438, 3.2566139548000524},
      {4, 3, 0.25255187163724395, 0.28954193628486591, 0.30021906702380757, 3.8292073970847691},
      {5, 3, 0.19760897820695029, 0.22718530828787344, 0.2322345684335557, 4.3283702117759359},
      {4, 1, 0.23571742987246913, 0.27049337377470954, 0.27913719735280509, 3.9700161798074242},
  };
  return t;
}

// Independent prototype solve (finite-difference Newton), frozen.
struct Filled {
  int g, k;
  long p, q;  // on the last cusp; earlier cusps unfilled
  double beta;
  std::complex<double> u, v;
};

inline const std::vector<Filled>& filled_table() {
  static const std::vector<Filled> t = {
      {2, 1, 5, 1, 0.5512529954867518, {0.274837575461241, 1.3464691867008176},
       {-1.3741878773062046, -0.44916062632450204}},
      {2, 1, 7, 2, 0.5531630515276881, {0.28781260807572373, 0.9666672562017745},
       {-1.0073441282650322, -0.24174274311641775}},
      {2, 1, 19, 11, 0.5538571777549027, {0.22019602550564413, 0.31070678019642173},
       {-0.3803385895097491, 0.03452331667705222}},
      {2, 1, 16, -1, 0.5538571278757759, {-0.020017761282721893, 0.3797529681874454},
       {-0.3202841805235491, -0.20713781618046034}},
      {3, 2, 5, 1, 0.3789668357519326, {0.27908727788675286, 1.3463301893053474},
       {-1.3954363894337627, -0.44846563934714956}},
  };
  return t;
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Real coefficient pair of Eisenstein length at least min_len.
inline Eigen::Vector2d long_coefficients(Rng& rng, double min_len, double box) {
  for (;;) {
    const Eigen::Vector2d c(uniform(rng, -box, box), uniform(rng, -box, box));
    if (c[0] * c[0] + c[1] * c[1] - c[0] * c[1] >= min_len * min_len) return c;
  }
}

// Solved point near x0: every cusp filled with long real coefficients,
// some left complete when allow_complete is set.
inline Eigen::VectorXd solved_point(Rng& rng, const mgk::Signature& sig, bool allow_complete = false) {
  mgk::DehnTarget target(sig.k);
  for (int i = 0; i < sig.k; ++i)
    if (!allow_complete || uniform(rng, 0, 1) < 0.75) target[i] = long_coefficients(rng, 20, 60);
  return mgk::solve_target(sig, target).x;
}

// Valid-range point with no equations imposed.
inline Eigen::VectorXd perturbed_point(Rng& rng, const mgk::Signature& sig, double scale) {
  Eigen::VectorXd x = mgk::solve_complete(sig).x0;
  for (Eigen::Index m = 0; m < x.size(); ++m) x[m] += uniform(rng, -scale, scale);
  return x;
}

// Coprime slope with length_sq in [lo, hi].
inline mgk::Slope slope_in(Rng& rng, long lo, long hi) {
  for (;;) {
    const long p = uniform_int(rng, 0, 40), q = uniform_int(rng, -40, 40);
    if (std::gcd(p, q) != 1) continue;
    const mgk::Slope s(p, q);
    if (s.length_sq() >= lo && s.length_sq() <= hi) return s;
  }
}

}  // namespace gen

#endif
