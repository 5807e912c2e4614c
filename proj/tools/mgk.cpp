// mgk: command-line front end for the deformation library.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include "mgk/boundary_trace.hpp"
#include "mgk/commensurability.hpp"
#include "mgk/cusp_invariants.hpp"
#include "mgk/deformation.hpp"
#include "mgk/report.hpp"
#include "mgk/slopes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace mgk;

namespace {

constexpr int kInputExit = 2;
constexpr int kNumericExit = 3;

struct Globals {
  bool json_out = false;
  std::string out_path;
  double tol_residual = 1e-10;
  double tol_invariant = 1e-8;
  bool allow_short = false;
};

struct Output {
  json doc;
  std::string text;
};

void emit(const Globals& G, const Output& o) {
  const std::string body = G.json_out ? o.doc.dump(2) + "\n" : o.text;
  if (G.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(G.out_path);
  if (!f) throw InputError("cannot open " + G.out_path + " for writing");
  f << body;
}

std::string num(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Residual-gated fill, shared by the single and batch paths.
StructureReport fill_report(const Globals& G, const Signature& sig, const FillingSpec& spec) {
  sig.check();
  SolverOptions opt;
  opt.tol = G.tol_residual;
  opt.allow_short = G.allow_short;
  const auto res = solve_filling(sig, spec, opt);
  if (!(res.residual < G.tol_residual))
    throw ConvergenceError("residual " + num(res.residual, 3) + " above tolerance", 1);
  return build_report(sig, spec, res.x, res.residual);
}

Output cmd_complete(const Globals& G, const Signature& sig) {
  sig.check();
  const auto r = complete_report(sig);
  if (!(r.residual < G.tol_residual)) throw ConvergenceError("complete residual above tolerance", 1);
  return {to_json(r), to_text(r)};
}

Output cmd_fill(const Globals& G, const Signature& sig, const std::string& coeffs) {
  sig.check();
  const auto r = fill_report(G, sig, parse_filling_spec(coeffs, sig.k));
  return {to_json(r), to_text(r)};
}

// One job per line: "g k coeffs"; blank lines and # comments are skipped.
int cmd_batch(const Globals& G, const std::string& path, unsigned threads) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read batch file " + path);
  struct Job {
    Signature sig;
    std::string coeffs;
    std::optional<StructureReport> report;
    std::string error;
    int code = 0;
  };
  std::vector<Job> jobs;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
      continue;
    std::istringstream ls(line);
    Job j;
    if (!(ls >> j.sig.g >> j.sig.k >> j.coeffs)) throw InputError("bad batch line: " + line);
    jobs.push_back(std::move(j));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n; (n = next++) < jobs.size();) {
      Job& j = jobs[n];
      try {
        j.report = fill_report(G, j.sig, parse_filling_spec(j.coeffs, j.sig.k));
      } catch (const InputError& e) {
        j.error = e.what();
        j.code = kInputExit;
      } catch (const std::exception& e) {
        j.error = e.what();
        j.code = kNumericExit;
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Output o;
  o.doc = {{"schema", kSchema}, {"results", json::array()}};
  int code = 0;
  for (const auto& j : jobs) {
    if (j.report) {
      o.doc["results"].push_back(to_json(*j.report));
      o.text += to_text(*j.report) + "\n";
    } else {
      o.doc["results"].push_back({{"signature", {{"g", j.sig.g}, {"k", j.sig.k}}},
                                  {"filling", j.coeffs},
                                  {"error", j.error}});
      o.text += "M(" + std::to_string(j.sig.g) + "," + std::to_string(j.sig.k) + ") " + j.coeffs +
                ": error: " + j.error + "\n\n";
    }
    code = std::max(code, j.code);
  }
  emit(G, o);
  return code == kNumericExit ? kNumericExit : code;
}

Output cmd_slopes(long max_len_sq) {
  Output o;
  o.doc = {{"schema", kSchema}, {"orbits", json::array()}};
  std::ostringstream t;
  t << "len^2  size  members\n";
  for (const auto& orb : classify_slopes(max_len_sq)) {
    json m = json::array();
    t << orb.length_sq << "  " << orb.members.size() << "  ";
    for (const auto& s : orb.members) {
      m.push_back(to_string(s));
      t << " " << to_string(s);
    }
    t << "\n";
    o.doc["orbits"].push_back({{"length_sq", orb.length_sq}, {"size", orb.members.size()}, {"members", m}});
  }
  o.text = t.str();
  return o;
}

Output cmd_similar(int k, const std::string& a, const std::string& b, bool oriented) {
  const auto A = parse_slope_set(a, k), B = parse_slope_set(b, k);
  const auto psi = slope_sets_equivalent(A, B, oriented);
  Output o;
  o.doc = {{"schema", kSchema}, {"a", to_string(A)}, {"b", to_string(B)}, {"equivalent", bool(psi)}};
  std::ostringstream t;
  t << to_string(A) << "  vs  " << to_string(B) << ": " << (psi ? "equivalent" : "not equivalent") << "\n";
  if (psi) {
    json perm = json::array(), local = json::array();
    t << "witness:";
    for (int j = 0; j < k; ++j) {
      perm.push_back(psi->perm[j] + 1);
      local.push_back({{"rot", psi->local[j].rot}, {"refl", psi->local[j].refl}});
      t << "  T" << j + 1 << "->T" << psi->perm[j] + 1 << " r^" << psi->local[j].rot
        << (psi->local[j].refl ? "s" : "");
    }
    t << "\n";
    o.doc["witness"] = {{"perm", perm}, {"local", local}};
  }
  o.text = t.str();
  return o;
}

Output cmd_commensurable(const Globals& G, int k, const std::vector<std::string>& specs,
                         bool rotated) {
  const XkSignature xs{k};
  xs.check();
  const Signature sig = xs.signature();
  std::vector<std::string> labels;
  std::vector<Eigen::VectorXd> points;
  if (rotated) {
    if (specs.size() != 1) throw InputError("--rotated takes exactly one slope set");
    const auto S = parse_slope_set(specs[0], k);
    const auto y = fill_report(G, sig, S);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(y.x.data(), y.x.size());
    for (int n = 0; n < 3; ++n) {
      labels.push_back(n == 0 ? to_string(S) : "Theta(r^" + std::to_string(n) + ") " + to_string(S));
      points.push_back(theta_r(x, xs, n));
    }
  } else {
    if (specs.size() < 2) throw InputError("need at least two slope sets to compare");
    for (const auto& s : specs) {
      const auto S = parse_slope_set(s, k);
      const auto y = fill_report(G, sig, S);
      labels.push_back(to_string(S));
      points.push_back(Eigen::Map<const Eigen::VectorXd>(y.x.data(), y.x.size()));
    }
  }
  Output o;
  o.doc = {{"schema", kSchema}, {"k", k}, {"items", json::array()}, {"pairs", json::array()}};
  std::ostringstream t;
  std::vector<ABCInvariant> inv;
  for (std::size_t n = 0; n < points.size(); ++n) {
    inv.push_back(abc(points[n], xs));
    const auto& I = inv.back();
    o.doc["items"].push_back({{"label", labels[n]}, {"abc", {I.a, I.b, I.c}}});
    t << labels[n] << ":  a=" << num(I.a, 15) << " b=" << num(I.b, 15) << " c=" << num(I.c, 15) << "\n";
  }
  for (std::size_t m = 0; m < points.size(); ++m)
    for (std::size_t n = m + 1; n < points.size(); ++n) {
      const double gap = abc_gap(inv[m], inv[n]);
      const Verdict v = commensurable(points[m], points[n], xs, G.tol_invariant);
      o.doc["pairs"].push_back({{"i", m + 1}, {"j", n + 1}, {"gap", gap}, {"verdict", to_string(v)}});
      t << "  " << m + 1 << " vs " << n + 1 << ": " << to_string(v) << " (gap " << num(gap, 3) << ")\n";
    }
  o.text = t.str();
  return o;
}

Output cmd_tangent(const Signature& sig) {
  sig.check();
  const auto cs = solve_complete(sig);
  const auto ns = nullspace(residual_jacobian(sig, cs.x0));
  const double dist = subspace_distance(ns.basis, tangent_basis(sig));
  Output o;
  std::vector<double> sv(ns.singular_values.data(), ns.singular_values.data() + ns.singular_values.size());
  o.doc = {{"schema", kSchema},   {"signature", {{"g", sig.g}, {"k", sig.k}}},
           {"nullity", ns.nullity}, {"expected", 2 * sig.k},
           {"gap", ns.gap},         {"distance_to_closed_form", dist},
           {"singular_values", sv}};
  o.text = "nullity  " + std::to_string(ns.nullity) + " (expected " + std::to_string(2 * sig.k) +
           ")\ngap      " + num(ns.gap, 3) + "\ndistance " + num(dist, 3) + "\n";
  return o;
}

Output cmd_trace(const Signature& sig, int delta, std::optional<double> r0, int points) {
  sig.check();
  std::vector<double> grid;
  if (r0) {
    grid.push_back(*r0);
  } else {
    if (points < 2) throw InputError("--points must be at least 2");
    const auto [lo, hi] = admissible_r0_range(sig, delta);
    for (int n = 0; n < points; ++n) grid.push_back(lo + (hi - lo) * n / (points - 1));
  }
  Output o;
  o.doc = {{"schema", kSchema}, {"signature", {{"g", sig.g}, {"k", sig.k}}}, {"delta", delta},
           {"rows", json::array()}};
  std::ostringstream t;
  t << "r0            tr''            stima\n";
  for (double r : grid) {
    const auto inp = varsigma_trace_data(sig, delta, r);
    const double dd = trace_second_derivative(inp);
    const bool st = stima_inequality(inp.lambda0, inp.eta0, inp.zeta0);
    o.doc["rows"].push_back({{"r0", r},
                             {"lambda0", inp.lambda0},
                             {"eta0", inp.eta0},
                             {"zeta0", inp.zeta0},
                             {"eta_dd", inp.eta_dd},
                             {"zeta_dd", inp.zeta_dd},
                             {"trace_dd", dd},
                             {"stima", st}});
    t << num(r, 8) << "    " << num(dd, 10) << "    " << (st ? "yes" : "no") << "\n";
  }
  o.text = t.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic structures on M_{g,k}: solve, fill, compare."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals G;
  app.add_flag("--json", G.json_out, "JSON output");
  app.add_option("--out", G.out_path, "write output to file");
  app.add_option("--tol-residual", G.tol_residual, "residual tolerance")->envname("MGK_TOL_RESIDUAL");
  app.add_option("--tol-invariant", G.tol_invariant, "invariant comparison tolerance")
      ->envname("MGK_TOL_INVARIANT");

  Signature sig;
  auto add_sig = [&](CLI::App* c) {
    c->add_option("--g", sig.g, "boundary genus")->required();
    c->add_option("--k", sig.k, "number of cusps")->required();
  };

  auto* complete = app.add_subcommand("complete", "complete structure at x0");
  add_sig(complete);

  auto* fill = app.add_subcommand("fill", "Dehn filling");
  std::string coeffs, batch;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  fill->add_option("--g", sig.g, "boundary genus");
  fill->add_option("--k", sig.k, "number of cusps");
  auto* coeffs_opt = fill->add_option("--coeffs", coeffs, "p/q or inf per cusp, comma separated");
  auto* batch_opt = fill->add_option("--batch", batch, "file of 'g k coeffs' lines, solved in parallel");
  fill->add_option("--threads", threads, "worker threads for --batch");
  fill->add_flag("--allow-short", G.allow_short, "skip the sqrt(7) slope length threshold");
  coeffs_opt->excludes(batch_opt);

  auto* slopes = app.add_subcommand("slopes", "D6 orbits of short slopes");
  long max_len_sq = 7;
  slopes->add_option("--max-len-sq", max_len_sq, "bound on p^2+q^2-pq");

  auto* similar = app.add_subcommand("similar", "equivalence of slope sets");
  int k_only = 1;
  std::string set_a, set_b;
  bool oriented = false;
  similar->add_option("--k", k_only, "number of tori")->required();
  similar->add_option("a", set_a, "p/q@i,...")->required();
  similar->add_option("b", set_b, "p/q@i,...")->required();
  similar->add_flag("--orientation-preserving", oriented, "restrict local maps to rotations");

  auto* comm = app.add_subcommand("commensurable", "abc comparison on X_k");
  std::vector<std::string> specs;
  bool rotated = false;
  comm->add_option("--k", k_only, "odd number of cusps")->required();
  comm->add_option("specs", specs, "slope sets p/q@i,...")->required();
  comm->add_flag("--rotated", rotated, "compare y with Theta(r) y and Theta(r^2) y");

  auto* tangent = app.add_subcommand("tangent", "Jacobian nullspace at x0");
  add_sig(tangent);

  auto* trace = app.add_subcommand("trace", "boundary trace second derivative along the curve");
  add_sig(trace);
  int delta = 0, points = 20;
  std::optional<double> r0;
  trace->add_option("--delta", delta, "0 or 1")->check(CLI::IsMember({0, 1}));
  trace->add_option("--r0", r0, "single r0 value (default: admissible grid)");
  trace->add_option("--points", points, "grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputExit;
  }

  try {
    if (*complete) emit(G, cmd_complete(G, sig));
    if (*fill) {
      if (!batch.empty()) return cmd_batch(G, batch, threads);
      if (coeffs.empty()) throw InputError("fill needs --coeffs or --batch");
      emit(G, cmd_fill(G, sig, coeffs));
    }
    if (*slopes) emit(G, cmd_slopes(max_len_sq));
    if (*similar) emit(G, cmd_similar(k_only, set_a, set_b, oriented));
    if (*comm) emit(G, cmd_commensurable(G, k_only, specs, rotated));
    if (*tangent) emit(G, cmd_tangent(sig));
    if (*trace) emit(G, cmd_trace(sig, delta, r0, points));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputExit;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what();
    if (std::isfinite(e.last_good_t)) std::cerr << " (last good multiplier " << e.last_good_t << ")";
    std::cerr << "\n";
    return kNumericExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericExit;
  }
  return 0;
}
