#include "mgk/slopes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace mgk {

long gcd(long a, long b) { return std::gcd(a, b); }

Slope::Slope(long p_, long q_) : p(p_), q(q_) {
  if (p == 0 && q == 0) throw InputError("slope (0,0) is not a slope");
  if (std::gcd(p, q) != 1)
    throw InputError("slope " + std::to_string(p) + "/" + std::to_string(q) + " is not coprime");
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
}

std::string to_string(const Slope& s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

namespace {

long parse_long(std::string_view t) {
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw InputError("cannot parse integer '" + std::string(t) + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

std::optional<Slope> parse_slope(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "oo" || t == "-") return std::nullopt;
  const auto slash = t.find('/');
  if (slash == std::string::npos) throw InputError("slope '" + t + "' must be p/q or inf");
  return Slope(parse_long(std::string_view(t).substr(0, slash)),
               parse_long(std::string_view(t).substr(slash + 1)));
}

FillingSpec parse_filling_spec(const std::string& text, int k) {
  FillingSpec spec;
  for (const auto& tok : split(text, ',')) spec.push_back(parse_slope(tok));
  if (static_cast<int>(spec.size()) != k)
    throw InputError("expected " + std::to_string(k) + " comma-separated entries, got " +
                     std::to_string(spec.size()));
  return spec;
}

double slope_length(const Slope& s) { return std::sqrt(double(s.length_sq())); }

D6Element compose(const D6Element& a, const D6Element& b) {
  if (a.refl) return D6Element(a.rot - b.rot, !b.refl);
  return D6Element(a.rot + b.rot, b.refl);
}

D6Element inverse(const D6Element& a) {
  return a.refl ? a : D6Element(-a.rot, false);
}

std::array<D6Element, 12> d6_elements() {
  std::array<D6Element, 12> e;
  for (int r = 0; r < 6; ++r) {
    e[r] = D6Element(r, false);
    e[6 + r] = D6Element(r, true);
  }
  return e;
}

std::array<long, 2> d6_act(const D6Element& e, long p, long q) {
  if (e.refl) {
    p = p - q;
    q = -q;
  }
  for (int n = 0; n < e.rot; ++n) {
    const long np = p - q;
    q = p;
    p = np;
  }
  return {p, q};
}

Slope d6_act(const D6Element& e, const Slope& s) {
  const auto [p, q] = d6_act(e, s.p, s.q);
  return Slope(p, q);
}

std::vector<SlopeOrbit> classify_slopes(long max_len_sq) {
  if (max_len_sq < 1) throw InputError("max_len_sq must be >= 1");
  const long bound = static_cast<long>(std::ceil(std::sqrt(2.0 * double(max_len_sq)))) + 1;
  std::set<Slope> seen;
  std::vector<SlopeOrbit> out;
  for (long p = 0; p <= bound; ++p)
    for (long q = -bound; q <= bound; ++q) {
      if (std::gcd(p, q) != 1 || (p == 0 && q != 1)) continue;
      const Slope s(p, q);
      if (s.length_sq() > max_len_sq || seen.count(s)) continue;
      std::set<Slope> orbit;
      for (const auto& e : d6_elements()) orbit.insert(d6_act(e, s));
      seen.insert(orbit.begin(), orbit.end());
      out.push_back({s.length_sq(), {orbit.begin(), orbit.end()}});
    }
  std::sort(out.begin(), out.end(), [](const SlopeOrbit& a, const SlopeOrbit& b) {
    return a.length_sq != b.length_sq ? a.length_sq < b.length_sq : a.members < b.members;
  });
  return out;
}

bool hyperbolic_filling_check(const FillingSpec& spec) {
  return std::all_of(spec.begin(), spec.end(),
                     [](const auto& s) { return !s || s->length_sq() >= 7; });
}

bool SlopeSetIsometry::orientation_preserving() const {
  return std::none_of(local.begin(), local.end(), [](const D6Element& e) { return e.refl; });
}

SlopeSetIsometry SlopeSetIsometry::identity(int k) {
  SlopeSetIsometry psi;
  psi.perm.resize(k);
  std::iota(psi.perm.begin(), psi.perm.end(), 0);
  psi.local.assign(k, D6Element());
  return psi;
}

SlopeSet apply(const SlopeSetIsometry& psi, const SlopeSet& A) {
  SlopeSet B(A.size());
  for (std::size_t j = 0; j < A.size(); ++j)
    if (A[j]) B[psi.perm[j]] = d6_act(psi.local[j], *A[j]);
  return B;
}

SlopeSetIsometry inverse(const SlopeSetIsometry& psi) {
  SlopeSetIsometry inv = psi;
  for (std::size_t j = 0; j < psi.perm.size(); ++j) {
    inv.perm[psi.perm[j]] = static_cast<int>(j);
    inv.local[psi.perm[j]] = inverse(psi.local[j]);
  }
  return inv;
}

std::optional<SlopeSetIsometry> slope_sets_equivalent(const SlopeSet& A, const SlopeSet& B,
                                                      bool orientation_preserving) {
  if (A.size() != B.size()) throw InputError("slope sets live on different numbers of tori");
  const int k = static_cast<int>(A.size());
  if (k > 8) throw InputError("equivalence search limited to k <= 8");
  const auto all = d6_elements();
  const int n_local = orientation_preserving ? 6 : 12;
  // Local choices are independent once the permutation is fixed, so the
  // search over S_k x| G^k factorizes per torus.
  SlopeSetIsometry psi = SlopeSetIsometry::identity(k);
  do {
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) {
      const auto& a = A[j];
      const auto& b = B[psi.perm[j]];
      if (!a || !b) {
        ok = !a && !b;
        psi.local[j] = D6Element();
        continue;
      }
      ok = false;
      for (int e = 0; e < n_local; ++e)
        if (d6_act(all[e], *a) == *b) {
          psi.local[j] = all[e];
          ok = true;
          break;
        }
    }
    if (ok) return psi;
  } while (std::next_permutation(psi.perm.begin(), psi.perm.end()));
  return std::nullopt;
}

std::vector<SlopeSet> enumerate_equivalent_sets(const SlopeSet& A) {
  const int k = static_cast<int>(A.size());
  if (k > 8) throw InputError("orbit enumeration limited to k <= 8");
  std::set<SlopeSet> orbit{A};
  std::deque<SlopeSet> queue{A};
  const D6Element r(1, false);
  while (!queue.empty()) {
    const SlopeSet S = queue.front();
    queue.pop_front();
    auto visit = [&](SlopeSet T) {
      if (orbit.insert(T).second) queue.push_back(std::move(T));
    };
    for (int j = 0; j < k; ++j) {
      if (S[j]) {
        SlopeSet T = S;
        T[j] = d6_act(r, *S[j]);
        visit(std::move(T));
      }
      if (j + 1 < k) {
        SlopeSet T = S;
        std::swap(T[j], T[j + 1]);
        visit(std::move(T));
      }
    }
  }
  return {orbit.begin(), orbit.end()};
}

SlopeSet parse_slope_set(const std::string& text, int k) {
  if (k < 1) throw InputError("need at least one torus");
  SlopeSet S(k);
  for (const auto& raw : split(text, ',')) {
    const std::string tok = trim(raw);
    if (tok.empty()) continue;
    const auto at = tok.find('@');
    if (at == std::string::npos) throw InputError("slope '" + tok + "' needs @torus");
    const long idx = parse_long(std::string_view(tok).substr(at + 1));
    if (idx < 1 || idx > k) throw InputError("torus index out of range in '" + tok + "'");
    if (S[idx - 1]) throw InputError("torus " + std::to_string(idx) + " given twice");
    S[idx - 1] = parse_slope(tok.substr(0, at));
  }
  return S;
}

std::string to_string(const SlopeSet& S) {
  std::string out;
  for (std::size_t j = 0; j < S.size(); ++j) {
    if (!S[j]) continue;
    if (!out.empty()) out += ",";
    out += to_string(*S[j]) + "@" + std::to_string(j + 1);
  }
  return out.empty() ? "-" : out;
}

Eigen::VectorXd apex_permute(const Eigen::VectorXd& x, int i, const std::array<int, 3>& sigma) {
  std::array<int, 3> inv{};
  for (int j = 0; j < 3; ++j) inv[sigma[j]] = j;
  Eigen::VectorXd y = x;
  for (int l : {2 * i, 2 * i + 1})
    for (int j = 0; j < 3; ++j) {
      y[alpha_index(l, j)] = x[alpha_index(l, inv[j])];
      y[gamma_index(l, j)] = x[gamma_index(l, inv[j])];
    }
  return y;
}

Eigen::VectorXd swap_tetrahedra(const Eigen::VectorXd& x, int i) {
  Eigen::VectorXd y = x;
  y.segment<6>(12 * i) = x.segment<6>(12 * i + 6);
  y.segment<6>(12 * i + 6) = x.segment<6>(12 * i);
  return y;
}

Eigen::VectorXd permute_cusps(const Eigen::VectorXd& x, const std::vector<int>& kappa) {
  Eigen::VectorXd y = x;
  for (std::size_t c = 0; c < kappa.size(); ++c)
    y.segment<12>(12 * kappa[c]) = x.segment<12>(12 * c);
  return y;
}

Eigen::VectorXd phi_r(const Eigen::VectorXd& x, int i) {
  return apex_permute(swap_tetrahedra(x, i), i, {2, 0, 1});
}

Eigen::VectorXd phi_s(const Eigen::VectorXd& x, int i) {
  return apex_permute(x, i, {1, 0, 2});
}

Eigen::VectorXd phi(const D6Element& e, const Eigen::VectorXd& x, int i) {
  Eigen::VectorXd y = e.refl ? phi_s(x, i) : x;
  for (int n = 0; n < e.rot; ++n) y = phi_r(y, i);
  return y;
}

Eigen::VectorXd sym_act(const SlopeSetIsometry& psi, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = x;
  for (std::size_t j = 0; j < psi.local.size(); ++j) y = phi(psi.local[j], y, static_cast<int>(j));
  return permute_cusps(y, psi.perm);
}

}  // namespace mgk
