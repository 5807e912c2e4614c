#ifndef MGK_REPORT_HPP
#define MGK_REPORT_HPP

#include "mgk/core.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mgk {

inline constexpr const char* kSchema = "mgk/1";

struct CuspReport {
  int index = 1;  // 1-based
  std::optional<Slope> slope;
  cd u, v;
  std::optional<std::array<double, 2>> coefficients;
  std::optional<cd> complex_length;  // filled cusps
  std::optional<cd> modulus;         // complete cusps

  bool operator==(const CuspReport&) const = default;
};

struct CompleteInfo {
  double alpha_bar = 0;
  double beta_bar = 0;
  bool inequalities = false;  // abar < bbar < 2 abar <= pi/3

  bool operator==(const CompleteInfo&) const = default;
};

struct StructureReport {
  Signature sig;
  FillingSpec filling;
  std::vector<double> x;
  double residual = 0;
  std::vector<CuspReport> cusps;
  std::optional<double> return_path_length;  // absent when beta >= pi/3
  int homology_rank = 0;
  int heegaard_genus = 0;
  std::optional<std::array<double, 3>> abc;  // X_k only
  std::optional<CompleteInfo> complete;

  bool operator==(const StructureReport& o) const;
};

// Throws DomainError if any numeric field is not finite.
StructureReport build_report(const Signature& sig, const FillingSpec& filling,
                             const Eigen::VectorXd& x, double residual);

StructureReport complete_report(const Signature& sig);

nlohmann::json to_json(const StructureReport& r);
StructureReport report_from_json(const nlohmann::json& j);

// Human-readable table.
std::string to_text(const StructureReport& r);

}  // namespace mgk

#endif
