#ifndef MGK_CORE_HPP
#define MGK_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgk {

using cd = std::complex<double>;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Newton/continuation breakdown; carries the last multiplier t that solved.
struct ConvergenceError : std::runtime_error {
  double last_good_t;
  ConvergenceError(const std::string& what, double t)
      : std::runtime_error(what), last_good_t(t) {}
};

// M_{g,k}: genus-g boundary, k cusps.
struct Signature {
  int g = 2;
  int k = 1;

  void check() const {
    if (!(g > k && k >= 1))
      throw InputError("signature requires g > k >= 1");
  }
  Eigen::Index dim() const { return 12 * k + 1; }
  Eigen::Index n_residuals() const { return 10 * k + 1; }
};

// Coordinate layout of x in R^{12k+1}: tetrahedron l in [0,2k), apex j in [0,3).
inline Eigen::Index alpha_index(int l, int j) { return 6 * l + j; }
inline Eigen::Index gamma_index(int l, int j) { return 6 * l + 3 + j; }
inline Eigen::Index beta_index(int k) { return 12 * k; }

// Unoriented slope ±(p,q), canonical representative p > 0 or (p == 0, q == 1).
struct Slope {
  long p = 1;
  long q = 0;

  Slope() = default;
  Slope(long p_, long q_);  // canonicalizes; throws InputError on (0,0)

  long length_sq() const { return p * p + q * q - p * q; }
  bool operator==(const Slope&) const = default;
  auto operator<=>(const Slope&) const = default;
};

// Per cusp: nullopt is an unfilled (complete) cusp.
using FillingSpec = std::vector<std::optional<Slope>>;

// Real coefficient targets for the filling equations; nullopt means u = 0.
using DehnTarget = std::vector<std::optional<Eigen::Vector2d>>;

long gcd(long a, long b);

std::string to_string(const Slope& s);

// "p/q" or "inf"
std::optional<Slope> parse_slope(const std::string& text);

// "p/q,inf,..." with exactly k entries
FillingSpec parse_filling_spec(const std::string& text, int k);

}  // namespace mgk

#endif
