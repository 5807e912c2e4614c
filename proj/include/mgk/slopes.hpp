#ifndef MGK_SLOPES_HPP
#define MGK_SLOPES_HPP

#include "mgk/core.hpp"

#include <array>
#include <optional>
#include <vector>

namespace mgk {

double slope_length(const Slope& s);

// r^rot s^refl: s is applied first.
struct D6Element {
  int rot = 0;
  bool refl = false;

  D6Element() = default;
  D6Element(int r, bool f) : rot(((r % 6) + 6) % 6), refl(f) {}

  bool operator==(const D6Element&) const = default;
};

D6Element compose(const D6Element& a, const D6Element& b);  // a after b
D6Element inverse(const D6Element& a);
std::array<D6Element, 12> d6_elements();

// Action on integer coefficient pairs (oriented) and on unoriented slopes.
std::array<long, 2> d6_act(const D6Element& e, long p, long q);
Slope d6_act(const D6Element& e, const Slope& s);

struct SlopeOrbit {
  long length_sq = 0;
  std::vector<Slope> members;  // sorted
};

// All slopes with p^2+q^2-pq <= max_len_sq, grouped into D6 orbits.
std::vector<SlopeOrbit> classify_slopes(long max_len_sq);

bool hyperbolic_filling_check(const FillingSpec& spec);

using SlopeSet = FillingSpec;

// Torus j goes to torus perm[j] after local[j] acts.
struct SlopeSetIsometry {
  std::vector<int> perm;
  std::vector<D6Element> local;

  bool orientation_preserving() const;
  static SlopeSetIsometry identity(int k);
};

SlopeSet apply(const SlopeSetIsometry& psi, const SlopeSet& A);
SlopeSetIsometry inverse(const SlopeSetIsometry& psi);

std::optional<SlopeSetIsometry> slope_sets_equivalent(const SlopeSet& A, const SlopeSet& B,
                                                      bool orientation_preserving);

// Orbit under S_k x| C6^k, sorted, duplicates removed.
std::vector<SlopeSet> enumerate_equivalent_sets(const SlopeSet& A);

// "p/q@i,..." with 1-based torus indices; unmentioned tori carry no slope.
SlopeSet parse_slope_set(const std::string& text, int k);
std::string to_string(const SlopeSet& s);

// Generators of Sym(Omega) on angle vectors (cusp i, 0-based).
// sigma is a permutation of {0,1,2}; alpha_l^j(result) = alpha_l^{sigma^{-1}(j)}(x).
Eigen::VectorXd apex_permute(const Eigen::VectorXd& x, int i, const std::array<int, 3>& sigma);
Eigen::VectorXd swap_tetrahedra(const Eigen::VectorXd& x, int i);
// Cusp block c moves to kappa[c].
Eigen::VectorXd permute_cusps(const Eigen::VectorXd& x, const std::vector<int>& kappa);
Eigen::VectorXd phi_r(const Eigen::VectorXd& x, int i);  // ((132), 1)
Eigen::VectorXd phi_s(const Eigen::VectorXd& x, int i);  // ((12), 0)
Eigen::VectorXd phi(const D6Element& e, const Eigen::VectorXd& x, int i);

Eigen::VectorXd sym_act(const SlopeSetIsometry& psi, const Eigen::VectorXd& x);

}  // namespace mgk

#endif
