#ifndef MGK_HYPTRIG_HPP
#define MGK_HYPTRIG_HPP

#include "mgk/core.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace mgk {

inline constexpr double kDomainMargin = 1e-12;

template <typename Scalar>
void check_angle(Scalar a, Scalar eps = Scalar(kDomainMargin)) {
  using std::isfinite;
  if (!isfinite(a) || !(a > eps) || !(a < std::numbers::pi_v<Scalar> - eps))
    throw DomainError("angle outside (0, pi)");
}

// cosh of the side opposite alpha1 in a hyperbolic triangle with angles alpha1..3.
template <typename Scalar>
Scalar triangle_side_cosh(Scalar alpha1, Scalar alpha2, Scalar alpha3) {
  using std::cos;
  using std::sin;
  check_angle(alpha1);
  check_angle(alpha2);
  check_angle(alpha3);
  if (!(alpha1 + alpha2 + alpha3 < std::numbers::pi_v<Scalar>))
    throw DomainError("triangle angle sum must be < pi");
  return (cos(alpha2) * cos(alpha3) + cos(alpha1)) / (sin(alpha2) * sin(alpha3));
}

template <typename Scalar>
std::array<Scalar, 3> triangle_sides(Scalar alpha1, Scalar alpha2, Scalar alpha3) {
  return {triangle_side_cosh(alpha1, alpha2, alpha3),
          triangle_side_cosh(alpha2, alpha3, alpha1),
          triangle_side_cosh(alpha3, alpha1, alpha2)};
}

// Right-angled hexagon with alternating sides c1, c2, c3 (given as cosh):
// cosh of the side opposite c1.
template <typename Scalar>
Scalar hexagon_side_cosh(Scalar c1, Scalar c2, Scalar c3) {
  using std::sqrt;
  if (!(c1 > Scalar(1)) || !(c2 > Scalar(1)) || !(c3 > Scalar(1)))
    throw DomainError("hexagon side cosh must exceed 1");
  const Scalar s2 = sqrt(c2 * c2 - Scalar(1));
  const Scalar s3 = sqrt(c3 * c3 - Scalar(1));
  return (c2 * c3 + c1) / (s2 * s3);
}

template <typename Scalar>
Scalar sinh_from_cosh(Scalar c) {
  using std::sqrt;
  return sqrt((c - Scalar(1)) * (c + Scalar(1)));
}

template <typename Scalar>
Scalar length_from_cosh(Scalar c) {
  using std::acosh;
  if (!(c >= Scalar(1))) throw DomainError("cosh length below 1");
  return acosh(c);
}

}  // namespace mgk

#endif
