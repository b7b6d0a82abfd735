#pragma once

// Normal-form arithmetic for three families of odd l-groups:
//
//   SEMIDIRECT(l, n)  C(l^n) x| C(l) = <tau, sigma | tau^(l^n), sigma^l,
//                     sigma tau sigma^-1 = tau^(l^(n-1)+1)>, element (a, b) = tau^a sigma^b
//   HEISENBERG(l)     <x, y, s | x^l, y^l, s^l, s central, y x = x y s>,
//                     element (a, b, c) = x^a y^b s^c
//   CYCLIC(l)         C(l), element (a)
//
// Parameters are capped at l <= 7, n <= 4 so every group has at most 7^5
// elements and exhaustive checks stay cheap.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "steinitz/arith.hpp"
#include "steinitz/errors.hpp"

namespace steinitz {

enum class Family { Semidirect, Heisenberg, Cyclic };

inline constexpr Int kMaxL = 7;
inline constexpr Int kMaxN = 4;

class GroupSpec {
 public:
  static GroupSpec semidirect(Int l, Int n) {
    check_l(l);
    if (n < 2) throw InvalidInput("semidirect: n must be at least 2");
    if (n > kMaxN) throw CapExceeded("semidirect: n = " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxN));
    return GroupSpec(Family::Semidirect, l, n);
  }
  static GroupSpec heisenberg(Int l) {
    check_l(l);
    return GroupSpec(Family::Heisenberg, l, 1);
  }
  static GroupSpec cyclic(Int l) {
    check_l(l);
    return GroupSpec(Family::Cyclic, l, 1);
  }

  Family family() const { return family_; }
  Int l() const { return l_; }
  Int n() const { return n_; }

  Int order() const {
    switch (family_) {
      case Family::Semidirect: return ipow(l_, static_cast<unsigned>(n_ + 1));
      case Family::Heisenberg: return l_ * l_ * l_;
      case Family::Cyclic: return l_;
    }
    return 0;
  }

  Int exponent() const { return family_ == Family::Semidirect ? cyclic_modulus() : l_; }

  // Modulus of the first coordinate: l^n for SEMIDIRECT, l otherwise.
  Int cyclic_modulus() const {
    return family_ == Family::Semidirect ? ipow(l_, static_cast<unsigned>(n_)) : l_;
  }

  // l^(n-1) + 1, the exponent by which sigma acts on tau.
  Int twist() const { return ipow(l_, static_cast<unsigned>(n_ - 1)) + 1; }

  std::string name() const {
    switch (family_) {
      case Family::Semidirect: return "SEMIDIRECT(" + std::to_string(l_) + "," + std::to_string(n_) + ")";
      case Family::Heisenberg: return "HEISENBERG(" + std::to_string(l_) + ")";
      case Family::Cyclic: return "CYCLIC(" + std::to_string(l_) + ")";
    }
    return {};
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(Family f, Int l, Int n) : family_(f), l_(l), n_(n) {}

  static void check_l(Int l) {
    if (l < 3 || !is_prime(l)) throw InvalidInput("l must be an odd prime");
    if (l > kMaxL) throw CapExceeded("l = " + std::to_string(l) + " exceeds cap " + std::to_string(kMaxL));
  }

  Family family_;
  Int l_;
  Int n_;
};

struct GroupElement {
  Int a = 0;
  Int b = 0;
  Int c = 0;
  auto operator<=>(const GroupElement&) const = default;
};

inline GroupElement identity(const GroupSpec&) { return {}; }

inline bool is_identity(const GroupElement& g) { return g == GroupElement{}; }

inline bool is_valid(const GroupSpec& spec, const GroupElement& g) {
  const Int l = spec.l();
  switch (spec.family()) {
    case Family::Semidirect:
      return g.a >= 0 && g.a < spec.cyclic_modulus() && g.b >= 0 && g.b < l && g.c == 0;
    case Family::Heisenberg:
      return g.a >= 0 && g.a < l && g.b >= 0 && g.b < l && g.c >= 0 && g.c < l;
    case Family::Cyclic:
      return g.a >= 0 && g.a < l && g.b == 0 && g.c == 0;
  }
  return false;
}

inline void require_valid(const GroupSpec& spec, const GroupElement& g) {
  if (!is_valid(spec, g))
    throw ShapeMismatch("element (" + std::to_string(g.a) + "," + std::to_string(g.b) + "," + std::to_string(g.c) +
                        ") is not a normal form of " + spec.name());
}

// Semidirect generators.
inline GroupElement tau() { return {1, 0, 0}; }
inline GroupElement sigma() { return {0, 1, 0}; }
// Heisenberg generators; the centre is generated by heis_sigma.
inline GroupElement heis_x() { return {1, 0, 0}; }
inline GroupElement heis_y() { return {0, 1, 0}; }
inline GroupElement heis_sigma() { return {0, 0, 1}; }

namespace detail {

inline GroupElement mul_unchecked(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  const Int l = spec.l();
  switch (spec.family()) {
    case Family::Semidirect: {
      const Int ln = spec.cyclic_modulus();
      Int twisted = mulmod(h.a, powmod(spec.twist(), static_cast<std::uint64_t>(g.b), ln), ln);
      return {mod(g.a + twisted, ln), mod(g.b + h.b, l), 0};
    }
    case Family::Heisenberg:
      return {mod(g.a + h.a, l), mod(g.b + h.b, l), mod(g.c + h.c + g.b * h.a, l)};
    case Family::Cyclic:
      return {mod(g.a + h.a, l), 0, 0};
  }
  return {};
}

}  // namespace detail

inline GroupElement mul(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  require_valid(spec, g);
  require_valid(spec, h);
  return detail::mul_unchecked(spec, g, h);
}

inline GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  require_valid(spec, g);
  const Int l = spec.l();
  switch (spec.family()) {
    case Family::Semidirect: {
      // (a, b)^-1 = (-a * twist^(-b), -b); twist has multiplicative order l mod l^n.
      const Int ln = spec.cyclic_modulus();
      Int untwist = powmod(spec.twist(), static_cast<std::uint64_t>(mod(-g.b, l)), ln);
      return {mod(-mulmod(g.a, untwist, ln), ln), mod(-g.b, l), 0};
    }
    case Family::Heisenberg:
      return {mod(-g.a, l), mod(-g.b, l), mod(g.a * g.b - g.c, l)};
    case Family::Cyclic:
      return {mod(-g.a, l), 0, 0};
  }
  return {};
}

inline GroupElement pow(const GroupSpec& spec, GroupElement g, Int m) {
  require_valid(spec, g);
  if (m < 0) throw PreconditionViolation("pow: exponent must be non-negative");
  GroupElement result{};
  while (m > 0) {
    if (m & 1) result = detail::mul_unchecked(spec, result, g);
    g = detail::mul_unchecked(spec, g, g);
    m >>= 1;
  }
  return result;
}

// Integer power allowing negative exponents.
inline GroupElement zpow(const GroupSpec& spec, const GroupElement& g, Int m) {
  return m >= 0 ? pow(spec, g, m) : pow(spec, inverse(spec, g), -m);
}

/// tau^a sigma^b raised to m via the collected exponent
/// (a m + a b l^(n-1) m(m-1)/2, b m).
inline GroupElement semidirect_pow_closed_form(Int l, Int n, Int a, Int b, Int m) {
  const auto spec = GroupSpec::semidirect(l, n);
  require_valid(spec, {a, b, 0});
  if (m < 0) throw PreconditionViolation("semidirect_pow_closed_form: m must be non-negative");
  const Int ln = spec.cyclic_modulus();
  const Int lower = ln / l;
  // m(m-1)/2 is computed exactly before reduction.
  Int tri = mod(checked_mul(m, m - 1) / 2, ln);
  Int tail = mulmod(mulmod(mulmod(a, b, ln), lower, ln), tri, ln);
  return {mod(mulmod(a, m, ln) + tail, ln), mod(checked_mul(b, m), l), 0};
}

inline Int order(const GroupSpec& spec, const GroupElement& g) {
  require_valid(spec, g);
  Int m = 1;
  GroupElement acc = g;
  // Orders are powers of l, so walk up by l-th powers.
  while (!is_identity(acc)) {
    acc = pow(spec, acc, spec.l());
    m *= spec.l();
  }
  return m;
}

inline std::vector<GroupElement> elements(const GroupSpec& spec) {
  std::vector<GroupElement> out;
  const Int l = spec.l();
  switch (spec.family()) {
    case Family::Semidirect:
      for (Int a = 0; a < spec.cyclic_modulus(); ++a)
        for (Int b = 0; b < l; ++b) out.push_back({a, b, 0});
      break;
    case Family::Heisenberg:
      for (Int a = 0; a < l; ++a)
        for (Int b = 0; b < l; ++b)
          for (Int c = 0; c < l; ++c) out.push_back({a, b, c});
      break;
    case Family::Cyclic:
      for (Int a = 0; a < l; ++a) out.push_back({a, 0, 0});
      break;
  }
  return out;
}

inline GroupElement conjugate(const GroupSpec& spec, const GroupElement& g, const GroupElement& t) {
  return mul(spec, mul(spec, g, t), inverse(spec, g));
}

/// Least nu >= 0 with g t g^-1 = t^nu, or nullopt when the conjugate is not a
/// power of t.
inline std::optional<Int> conj_power_exponent(const GroupSpec& spec, const GroupElement& t, const GroupElement& g) {
  require_valid(spec, t);
  require_valid(spec, g);
  if (is_identity(t)) throw PreconditionViolation("conj_power_exponent: t must be nontrivial");
  const GroupElement target = conjugate(spec, g, t);
  const Int ord = order(spec, t);
  GroupElement acc{};
  for (Int nu = 0; nu < ord; ++nu) {
    if (acc == target) return nu;
    acc = detail::mul_unchecked(spec, acc, t);
  }
  return std::nullopt;
}

/// Subgroup generated by gens (sorted, always contains the identity).
inline std::vector<GroupElement> generated_subgroup(const GroupSpec& spec, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> seen{GroupElement{}};
  std::vector<GroupElement> frontier{GroupElement{}};
  for (const auto& g : gens) require_valid(spec, g);
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        auto y = detail::mul_unchecked(spec, x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Residues nu mod order(t) realized as conjugation exponents of t by some
/// actor. Contains 1 whenever actors contains the identity.
inline std::set<Int> action_exponent_set(const GroupSpec& spec, const GroupElement& t,
                                         const std::vector<GroupElement>& actors) {
  std::set<Int> out;
  for (const auto& g : actors) {
    if (auto nu = conj_power_exponent(spec, t, g)) out.insert(*nu);
  }
  return out;
}

struct CyclicSubgroup {
  GroupElement generator;
  Int order = 1;
};

/// One generator (the least element generating it) per nontrivial cyclic
/// subgroup, ordered by subgroup order then generator.
inline std::vector<CyclicSubgroup> cyclic_subgroup_generators(const GroupSpec& spec) {
  std::map<std::vector<GroupElement>, GroupElement> by_subgroup;
  for (const auto& g : elements(spec)) {
    if (is_identity(g)) continue;
    auto sub = generated_subgroup(spec, {g});
    auto it = by_subgroup.find(sub);
    if (it == by_subgroup.end() || g < it->second) by_subgroup[sub] = g;
  }
  std::vector<CyclicSubgroup> out;
  for (const auto& [sub, gen] : by_subgroup) out.push_back({gen, static_cast<Int>(sub.size())});
  std::sort(out.begin(), out.end(), [](const CyclicSubgroup& x, const CyclicSubgroup& y) {
    return x.order != y.order ? x.order < y.order : x.generator < y.generator;
  });
  return out;
}

struct PresentationReport {
  Int l = 0;
  Int n = 0;
  Int cyclic_normal_subgroups = 0;  // elements t of order l^n used as the kernel generator
  Int candidates = 0;               // x outside <t> with x t x^-1 = t^(l^(n-1)+1)
  Int violations = 0;
  std::vector<std::string> failures;
};

/// Replays the uniqueness argument for C(l^n) x| C(l) inside the group: for
/// every t of order l^n and every x outside <t> acting on t by
/// l^(n-1)+1, checks that x^l = t^a with l | a and that s = t^(-a/l) x has
/// order dividing l and acts on t by the same exponent.
inline PresentationReport verify_presentation_uniqueness(Int l, Int n) {
  const auto spec = GroupSpec::semidirect(l, n);
  PresentationReport report;
  report.l = l;
  report.n = n;
  const Int ln = spec.cyclic_modulus();
  const auto all = elements(spec);
  auto fail = [&](std::string msg) {
    ++report.violations;
    if (report.failures.size() < 16) report.failures.push_back(std::move(msg));
  };
  for (const auto& t : all) {
    if (order(spec, t) != ln) continue;
    ++report.cyclic_normal_subgroups;
    std::vector<GroupElement> powers;
    powers.reserve(static_cast<std::size_t>(ln));
    GroupElement acc{};
    for (Int i = 0; i < ln; ++i) {
      powers.push_back(acc);
      acc = detail::mul_unchecked(spec, acc, t);
    }
    auto log_t = [&](const GroupElement& g) -> std::optional<Int> {
      for (Int i = 0; i < ln; ++i)
        if (powers[static_cast<std::size_t>(i)] == g) return i;
      return std::nullopt;
    };
    const GroupElement twisted = pow(spec, t, spec.twist());
    for (const auto& x : all) {
      if (log_t(x)) continue;
      if (conjugate(spec, x, t) != twisted) continue;
      ++report.candidates;
      auto a = log_t(pow(spec, x, l));
      if (!a) {
        fail("x^l not in <t>");
        continue;
      }
      if (*a % l != 0) {
        fail("x^l = t^a with l not dividing a");
        continue;
      }
      const GroupElement s = mul(spec, zpow(spec, t, -(*a / l)), x);
      if (!is_identity(pow(spec, s, l))) fail("sigma' has order exceeding l");
      if (conjugate(spec, s, t) != twisted) fail("sigma' acts on t by a different exponent");
    }
  }
  return report;
}

}  // namespace steinitz
