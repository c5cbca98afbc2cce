#include "dcpair/system.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dcpair/errors.hpp"

namespace dcpair {

CubicPairSystem build_system(std::vector<i64> a, std::vector<i64> b) {
  if (a.size() != b.size())
    throw validation_error("LengthMismatch", "coefficient vectors a and b differ in length");
  if (a.size() < 2)
    throw validation_error("LengthMismatch", "need at least two variables");
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0 && b[j] == 0)
      throw validation_error("ZeroCoefficientPair",
                             "coefficient pair " + std::to_string(j + 1) + " is (0,0)");
  }
  return CubicPairSystem{std::move(a), std::move(b)};
}

std::pair<i64, i64> canonical_pair(i64 a, i64 b) {
  i64 g = gcd_i64(a, b);
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return {a, b};
}

std::vector<LinearFormClass> multiplicity_profile(const CubicPairSystem& sys) {
  std::map<std::pair<i64, i64>, std::vector<int>> groups;
  std::vector<std::pair<i64, i64>> order;
  for (int j = 0; j < sys.s(); ++j) {
    auto key = canonical_pair(sys.a[j], sys.b[j]);
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(j);
  }
  std::vector<LinearFormClass> classes;
  classes.reserve(order.size());
  for (const auto& key : order) classes.push_back({key, groups[key]});
  return classes;
}

int max_multiplicity(const CubicPairSystem& sys) {
  int m = 0;
  for (const auto& c : multiplicity_profile(sys)) m = std::max(m, c.multiplicity());
  return m;
}

bool general_position(const CubicPairSystem& sys) { return max_multiplicity(sys) <= 5; }

int direction_zero_count(const CubicPairSystem& sys, i64 c, i64 d) {
  int z = 0;
  for (int j = 0; j < sys.s(); ++j) {
    i128 v = static_cast<i128>(c) * sys.a[j] + static_cast<i128>(d) * sys.b[j];
    if (v == 0) ++z;
  }
  return z;
}

namespace {

i64 checked_comb(i64 p, i64 x, i64 q, i64 y) {
  i128 v = static_cast<i128>(p) * x + static_cast<i128>(q) * y;
  if (v > INT64_MAX || v < INT64_MIN)
    throw budget_error("CoefficientOverflow", "row combination exceeds 64-bit range");
  return static_cast<i64>(v);
}

i64 vector_content(const std::vector<i64>& v) {
  i64 g = 0;
  for (i64 x : v) g = gcd_i64(g, x);
  return g == 0 ? 1 : g;
}

std::vector<LinearFormClass> classes_by_multiplicity(const CubicPairSystem& sys) {
  auto classes = multiplicity_profile(sys);
  std::stable_sort(classes.begin(), classes.end(),
                   [](const LinearFormClass& x, const LinearFormClass& y) {
                     return x.multiplicity() > y.multiplicity();
                   });
  return classes;
}

}  // namespace

EchelonResult normalize_pivot_form(const CubicPairSystem& sys) {
  const int s = sys.s();
  auto classes = classes_by_multiplicity(sys);
  if (classes.size() < 2)
    throw validation_error("DegenerateSystem", "all forms lie in a single proportionality class");

  // Already in shape: keep everything untouched.
  if (sys.b[0] == 0 && sys.a[1] == 0 && sys.a[0] != 0 && sys.b[1] != 0) {
    std::vector<int> id(s);
    for (int j = 0; j < s; ++j) id[j] = j;
    return {sys, RowTransform{{{1, 0}, {0, 1}}}, id};
  }

  const int p1 = classes[0].members.front();
  const int p2 = classes[1].members.front();

  // eq1' kills x_{p2}, eq2' kills x_{p1}; determinant is the class
  // inequivalence a_{p1} b_{p2} - a_{p2} b_{p1} != 0.
  RowTransform rows{{{sys.b[p2], -sys.a[p2]}, {sys.b[p1], -sys.a[p1]}}};
  std::vector<i64> na(s), nb(s);
  for (int j = 0; j < s; ++j) {
    na[j] = checked_comb(rows.m[0][0], sys.a[j], rows.m[0][1], sys.b[j]);
    nb[j] = checked_comb(rows.m[1][0], sys.a[j], rows.m[1][1], sys.b[j]);
  }
  i64 ca = vector_content(na), cb = vector_content(nb);
  for (int j = 0; j < s; ++j) {
    na[j] /= ca;
    nb[j] /= cb;
  }

  std::vector<int> perm;
  perm.push_back(p1);
  perm.push_back(p2);
  for (int j = 0; j < s; ++j)
    if (j != p1 && j != p2) perm.push_back(j);

  std::vector<i64> pa(s), pb(s);
  for (int j = 0; j < s; ++j) {
    pa[j] = na[perm[j]];
    pb[j] = nb[perm[j]];
  }
  if (pb[0] != 0 || pa[1] != 0 || pa[0] == 0 || pb[1] == 0)
    throw validation_error("DegenerateSystem", "pivot normalization failed");
  return {CubicPairSystem{std::move(pa), std::move(pb)}, rows, perm};
}

PositiveKernelPoint positive_kernel_point(const CubicPairSystem& sys, const Rat& eta) {
  const int s = sys.s();
  if (eta <= 0 || eta >= 1)
    throw validation_error("BadEta", "eta must lie in (0,1)");
  if (sys.b[0] != 0 || sys.a[1] != 0 || sys.a[0] == 0 || sys.b[1] == 0)
    throw validation_error("NotNormalized", "positive_kernel_point expects the pivot form b1=a2=0");
  if (s == 2)
    throw validation_error("NoInteriorPoint", "kernel is trivial: theta1 = theta2 = 0 forced");

  bool a_tail = false, b_tail = false;
  for (int j = 2; j < s; ++j) {
    a_tail |= sys.a[j] != 0;
    b_tail |= sys.b[j] != 0;
  }
  if (!a_tail)
    throw validation_error("NoInteriorPoint", "coordinate 1 is forced to zero by equation 1");
  if (!b_tail)
    throw validation_error("NoInteriorPoint", "coordinate 2 is forced to zero by equation 2");

  // Fill the free coordinates with a constant, solve the two remaining
  // pivot coordinates exactly, and keep the candidate with the best
  // min/max ratio: after rescaling, the point fits (eta, 1) exactly when
  // that ratio exceeds eta.  Every inequivalent column pair is tried as
  // the pivot pair, which in practice balances the extremes away.
  std::optional<std::vector<Rat>> best_theta;
  Rat best_ratio(0);

  std::vector<Rat> fills{Rat(1, 2), Rat(1, 3), Rat(2, 3), Rat(1, 5), Rat(4, 5)};
  for (const Rat& fill : fills) {
    for (int p1 = 0; p1 < s; ++p1) {
      for (int p2 = p1 + 1; p2 < s; ++p2) {
        Rat det = Rat(sys.a[p1]) * Rat(sys.b[p2]) - Rat(sys.a[p2]) * Rat(sys.b[p1]);
        if (det == 0) continue;
        Rat sa = 0, sb = 0;
        for (int j = 0; j < s; ++j) {
          if (j == p1 || j == p2) continue;
          sa += Rat(sys.a[j]) * fill;
          sb += Rat(sys.b[j]) * fill;
        }
        // a_{p1} x + a_{p2} y = -sa,  b_{p1} x + b_{p2} y = -sb
        Rat x = (-sa * Rat(sys.b[p2]) + sb * Rat(sys.a[p2])) / det;
        Rat y = (-Rat(sys.a[p1]) * sb + Rat(sys.b[p1]) * sa) / det;
        if (x == 0 || y == 0) continue;
        std::vector<Rat> theta(s, fill);
        theta[p1] = x;
        theta[p2] = y;
        Rat lo = abs(theta[0]), hi = abs(theta[0]);
        for (int j = 1; j < s; ++j) {
          Rat aj = abs(theta[j]);
          lo = std::min(lo, aj);
          hi = std::max(hi, aj);
        }
        Rat ratio = lo / hi;
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_theta = theta;
        }
      }
    }
    if (best_ratio > eta) break;
  }

  if (!best_theta || best_ratio <= eta)
    throw validation_error("NoInteriorPoint",
                           "no interior kernel point found at the requested eta margin");

  std::vector<Rat> theta = *best_theta;
  std::vector<int> flips(s, 1);
  for (int j = 0; j < s; ++j) {
    if (theta[j] < 0) {
      flips[j] = -1;
      theta[j] = -theta[j];
    }
  }
  Rat lo = theta[0], hi = theta[0];
  for (int j = 1; j < s; ++j) {
    lo = std::min(lo, theta[j]);
    hi = std::max(hi, theta[j]);
  }
  Rat lam = (eta / lo + Rat(1) / hi) / 2;
  Rat check_a = 0, check_b = 0;
  for (int j = 0; j < s; ++j) {
    theta[j] *= lam;
    check_a += Rat(flips[j] * sys.a[j]) * theta[j];
    check_b += Rat(flips[j] * sys.b[j]) * theta[j];
    if (!(theta[j] > eta && theta[j] < 1))
      throw numeric_error("KernelPointScale", "scaled coordinate left (eta,1)");
  }
  if (check_a != 0 || check_b != 0)
    throw numeric_error("KernelPointVerify", "exact verification failed");
  return {theta, flips};
}

std::vector<int> select_core_subset(const CubicPairSystem& sys) {
  if (!general_position(sys))
    throw validation_error("ConditionViolated", "a class has multiplicity exceeding 5");
  if (sys.s() < 13)
    throw validation_error("ConditionViolated", "need at least 13 variables");
  auto classes = classes_by_multiplicity(sys);
  std::vector<int> chosen;
  size_t round = 0;
  while (chosen.size() < 13) {
    bool took = false;
    for (const auto& c : classes) {
      if (round < c.members.size()) {
        chosen.push_back(c.members[round]);
        took = true;
        if (chosen.size() == 13) break;
      }
    }
    if (!took) break;
    ++round;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Int eval_form_a(const CubicPairSystem& sys, const std::vector<Int>& x) {
  Int acc = 0;
  for (int j = 0; j < sys.s(); ++j) acc += Int(static_cast<long>(sys.a[j])) * x[j] * x[j] * x[j];
  return acc;
}

Int eval_form_b(const CubicPairSystem& sys, const std::vector<Int>& x) {
  Int acc = 0;
  for (int j = 0; j < sys.s(); ++j) acc += Int(static_cast<long>(sys.b[j])) * x[j] * x[j] * x[j];
  return acc;
}

bool is_exact_solution(const CubicPairSystem& sys, const std::vector<Int>& x) {
  return eval_form_a(sys, x) == 0 && eval_form_b(sys, x) == 0;
}

CubicPairSystem system_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error("MalformedJson", std::string("system file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j["a"].is_array() ||
      !j["b"].is_array())
    throw validation_error("MalformedJson", "expected an object {\"a\": [...], \"b\": [...]}");
  std::vector<i64> a, b;
  for (const auto& v : j["a"]) {
    if (!v.is_number_integer()) throw validation_error("MalformedJson", "a: non-integer entry");
    a.push_back(v.get<i64>());
  }
  for (const auto& v : j["b"]) {
    if (!v.is_number_integer()) throw validation_error("MalformedJson", "b: non-integer entry");
    b.push_back(v.get<i64>());
  }
  return build_system(std::move(a), std::move(b));
}

std::string system_to_json_text(const CubicPairSystem& sys) {
  nlohmann::json j;
  j["a"] = sys.a;
  j["b"] = sys.b;
  return j.dump();
}

CubicPairSystem system_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("FileNotFound", "cannot open system file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return system_from_json_text(ss.str());
}

}  // namespace dcpair
