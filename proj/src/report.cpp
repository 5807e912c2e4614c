#include "mgk/report.hpp"

#include "mgk/commensurability.hpp"
#include "mgk/cusp_invariants.hpp"
#include "mgk/deformation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace mgk {

using nlohmann::json;

namespace {

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <typename T, typename F>
json optional_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : json(nullptr);
}

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string fmt(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt(cd z) {
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

bool is_xk(const Signature& sig) { return sig.g == sig.k + 1 && sig.k % 2 == 1; }

}  // namespace

bool StructureReport::operator==(const StructureReport& o) const {
  return sig.g == o.sig.g && sig.k == o.sig.k && filling == o.filling && x == o.x &&
         residual == o.residual && cusps == o.cusps &&
         return_path_length == o.return_path_length && homology_rank == o.homology_rank &&
         heegaard_genus == o.heegaard_genus && abc == o.abc && complete == o.complete;
}

StructureReport build_report(const Signature& sig, const FillingSpec& filling,
                             const Eigen::VectorXd& x, double residual) {
  sig.check();
  if (x.size() != sig.dim()) throw InputError("angle vector has wrong dimension");
  if (static_cast<int>(filling.size()) != sig.k) throw InputError("filling spec needs k entries");
  StructureReport r;
  r.sig = sig;
  r.filling = filling;
  r.x.assign(x.data(), x.data() + x.size());
  r.residual = residual;
  int filled = 0;
  for (int i = 0; i < sig.k; ++i) {
    CuspReport c;
    c.index = i + 1;
    c.slope = filling[i];
    std::tie(c.u, c.v) = uv(x, i);
    try {
      if (const auto pq = dehn_coefficients(x, i)) c.coefficients = {(*pq)[0], (*pq)[1]};
    } catch (const DomainError&) {
    }
    if (c.slope) {
      ++filled;
      c.complex_length = complex_length(x, i, c.slope->p, c.slope->q).value;
    } else {
      c.modulus = cusp_modulus(x, i).tau;
    }
    r.cusps.push_back(c);
  }
  try {
    r.return_path_length = return_path_length(sig, x);
  } catch (const DomainError&) {
  }
  r.homology_rank = homology_rank(sig, filled);
  r.heegaard_genus = heegaard_genus(sig);
  if (is_xk(sig)) {
    const auto t = abc(x, XkSignature{sig.k});
    r.abc = {t.a, t.b, t.c};
  }

  bool ok = std::isfinite(residual) && x.allFinite();
  for (const auto& c : r.cusps) {
    ok = ok && finite(c.u) && finite(c.v);
    if (c.coefficients) ok = ok && std::isfinite((*c.coefficients)[0]) && std::isfinite((*c.coefficients)[1]);
    if (c.complex_length) ok = ok && finite(*c.complex_length);
    if (c.modulus) ok = ok && finite(*c.modulus);
  }
  if (r.return_path_length) ok = ok && std::isfinite(*r.return_path_length);
  if (!ok) throw DomainError("report contains non-finite values");
  return r;
}

StructureReport complete_report(const Signature& sig) {
  const auto cs = solve_complete(sig);
  const double res = residuals(sig, cs.x0).lpNorm<Eigen::Infinity>();
  auto r = build_report(sig, FillingSpec(sig.k), cs.x0, res);
  CompleteInfo info;
  info.alpha_bar = cs.alpha_bar;
  info.beta_bar = cs.beta_bar;
  info.inequalities = cs.alpha_bar < cs.beta_bar && cs.beta_bar < 2 * cs.alpha_bar &&
                      2 * cs.alpha_bar <= std::numbers::pi / 3;
  r.complete = info;
  return r;
}

json to_json(const StructureReport& r) {
  json j;
  j["schema"] = kSchema;
  j["signature"] = {{"g", r.sig.g}, {"k", r.sig.k}};
  json fill = json::array();
  for (const auto& s : r.filling) fill.push_back(s ? to_string(*s) : "inf");
  j["filling"] = fill;
  j["x"] = r.x;
  j["residual"] = r.residual;
  json cusps = json::array();
  for (const auto& c : r.cusps) {
    cusps.push_back({
        {"index", c.index},
        {"slope", c.slope ? json(to_string(*c.slope)) : json(nullptr)},
        {"u", complex_json(c.u)},
        {"v", complex_json(c.v)},
        {"coefficients", optional_json(c.coefficients, [](auto a) { return json(a); })},
        {"complex_length", optional_json(c.complex_length, complex_json)},
        {"modulus", optional_json(c.modulus, complex_json)},
    });
  }
  j["cusps"] = cusps;
  j["return_path_length"] = optional_json(r.return_path_length, [](double v) { return json(v); });
  j["homology_rank"] = r.homology_rank;
  j["heegaard_genus"] = r.heegaard_genus;
  j["abc"] = optional_json(r.abc, [](auto a) { return json(a); });
  j["complete"] = optional_json(r.complete, [](const CompleteInfo& c) {
    return json{{"alpha_bar", c.alpha_bar}, {"beta_bar", c.beta_bar},
                {"inequalities", c.inequalities}};
  });
  return j;
}

StructureReport report_from_json(const json& j) {
  if (j.value("schema", "") != std::string(kSchema))
    throw InputError("unsupported report schema");
  try {
    StructureReport r;
    r.sig.g = j.at("signature").at("g").get<int>();
    r.sig.k = j.at("signature").at("k").get<int>();
    for (const auto& s : j.at("filling")) r.filling.push_back(parse_slope(s.get<std::string>()));
    r.x = j.at("x").get<std::vector<double>>();
    r.residual = j.at("residual").get<double>();
    for (const auto& cj : j.at("cusps")) {
      CuspReport c;
      c.index = cj.at("index").get<int>();
      if (!cj.at("slope").is_null()) c.slope = parse_slope(cj.at("slope").get<std::string>());
      c.u = complex_from(cj.at("u"));
      c.v = complex_from(cj.at("v"));
      if (!cj.at("coefficients").is_null())
        c.coefficients = cj.at("coefficients").get<std::array<double, 2>>();
      if (!cj.at("complex_length").is_null()) c.complex_length = complex_from(cj.at("complex_length"));
      if (!cj.at("modulus").is_null()) c.modulus = complex_from(cj.at("modulus"));
      r.cusps.push_back(c);
    }
    if (!j.at("return_path_length").is_null())
      r.return_path_length = j.at("return_path_length").get<double>();
    r.homology_rank = j.at("homology_rank").get<int>();
    r.heegaard_genus = j.at("heegaard_genus").get<int>();
    if (!j.at("abc").is_null()) r.abc = j.at("abc").get<std::array<double, 3>>();
    if (!j.at("complete").is_null()) {
      const auto& cj = j.at("complete");
      r.complete = CompleteInfo{cj.at("alpha_bar").get<double>(), cj.at("beta_bar").get<double>(),
                                cj.at("inequalities").get<bool>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string to_text(const StructureReport& r) {
  std::ostringstream out;
  out << "M(" << r.sig.g << "," << r.sig.k << ")  filling:";
  for (const auto& s : r.filling) out << " " << (s ? to_string(*s) : "inf");
  out << "\nresidual            " << fmt(r.residual, 3) << "\n";
  if (r.complete) {
    out << "alpha_bar           " << fmt(r.complete->alpha_bar, 17) << "\n"
        << "beta_bar            " << fmt(r.complete->beta_bar, 17) << "\n"
        << "inequalities        " << (r.complete->inequalities ? "hold" : "FAIL") << "\n";
  }
  out << "beta                " << fmt(r.x.back(), 17) << "\n";
  for (const auto& c : r.cusps) {
    out << "cusp " << c.index << (c.slope ? " filled " + to_string(*c.slope) : " complete") << "\n"
        << "  u                 " << fmt(c.u) << "\n"
        << "  v                 " << fmt(c.v) << "\n";
    if (c.coefficients)
      out << "  coefficients      (" << fmt((*c.coefficients)[0]) << ", "
          << fmt((*c.coefficients)[1]) << ")\n";
    if (c.complex_length) out << "  complex length    " << fmt(*c.complex_length) << "\n";
    if (c.modulus) out << "  modulus           " << fmt(*c.modulus) << "\n";
  }
  out << "return path length  "
      << (r.return_path_length ? fmt(*r.return_path_length, 17) : std::string("degenerate")) << "\n"
      << "homology rank       " << r.homology_rank << "\n"
      << "heegaard genus      " << r.heegaard_genus << "\n";
  if (r.abc)
    out << "abc                 " << fmt((*r.abc)[0], 15) << " " << fmt((*r.abc)[1], 15) << " "
        << fmt((*r.abc)[2], 15) << "\n";
  return out.str();
}

}  // namespace mgk
