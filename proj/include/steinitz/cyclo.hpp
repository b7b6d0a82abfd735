#pragma once

// Galois groups of k(zeta_M)/k as subgroups of (Z/MZ)*, the action groups
// G_{k,mu,t} of an element t of one of the l-groups, and descriptors of their
// fixed fields E_{k,mu,t}.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "steinitz/arith.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/lgroups.hpp"

namespace steinitz {

/// Subgroup of (Z/MZ)*; residues are stored in [0, M) so the identity is 1 % M.
class ResidueSubgroup {
 public:
  ResidueSubgroup() = default;
  ResidueSubgroup(Int modulus, std::set<Int> elements) : modulus_(modulus), elements_(std::move(elements)) {}

  Int modulus() const { return modulus_; }
  const std::set<Int>& elements() const& { return elements_; }
  std::set<Int> elements() && { return std::move(elements_); }
  Int size() const { return static_cast<Int>(elements_.size()); }
  bool contains(Int r) const { return elements_.contains(mod(r, modulus_)); }

  bool is_subgroup() const {
    if (!elements_.contains(1 % modulus_)) return false;
    for (Int x : elements_) {
      if (std::gcd(x, modulus_) != 1 && modulus_ != 1) return false;
      for (Int y : elements_)
        if (!elements_.contains(mulmod(x, y, modulus_))) return false;
    }
    return true;
  }

  bool is_subset_of(const ResidueSubgroup& other) const {
    return modulus_ == other.modulus_ &&
           std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }

  friend bool operator==(const ResidueSubgroup&, const ResidueSubgroup&) = default;

 private:
  Int modulus_ = 1;
  std::set<Int> elements_{0};
};

inline std::set<Int> unit_residues(Int M) {
  std::set<Int> out;
  if (M == 1) return {0};
  for (Int r = 1; r < M; ++r)
    if (std::gcd(r, M) == 1) out.insert(r);
  return out;
}

/// Gal(k(zeta_M)/k) inside (Z/MZ)*. k lies in Q(zeta_M) exactly when D | M,
/// and then the Galois group is the kernel of the character (D|.).
inline ResidueSubgroup galois_group(const Field& k, Int M) {
  if (M < 1) throw PreconditionViolation("galois_group: M must be >= 1");
  auto units = unit_residues(M);
  if (M % k.D != 0) return {M, units};
  std::set<Int> kernel;
  for (Int r : units)
    if (kronecker(k.D, r) == 1) kernel.insert(r);
  return {M, kernel};
}

/// [k(zeta_M) : k].
inline Int cyclotomic_degree(const Field& k, Int M) { return galois_group(k, M).size(); }

/// The residues g of Gal(k(zeta_o(t))/k) for which some element of the group
/// conjugates t to t^g.
inline ResidueSubgroup g_group(const Field& k, const GroupSpec& spec, const GroupElement& t) {
  if (is_identity(t)) throw PreconditionViolation("g_group: t must be nontrivial");
  const Int M = order(spec, t);
  const auto realized = action_exponent_set(spec, t, elements(spec));
  std::set<Int> out;
  for (Int g : galois_group(k, M).elements())
    if (realized.contains(g)) out.insert(g);
  return {M, out};
}

struct FixedFieldDescriptor {
  Int modulus = 1;
  ResidueSubgroup fixing;
  // j with E = k(zeta_j), set only when the fixing group is exactly the
  // elements of the Galois group congruent to 1 mod j.
  std::optional<Int> cyclotomic_level;
};

/// Largest j | M with fixing = {g in Gal(k(zeta_M)/k) : g = 1 mod j}, if any.
inline std::optional<Int> cyclotomic_level_of(const Field& k, const ResidueSubgroup& fixing) {
  const Int M = fixing.modulus();
  const auto gal = galois_group(k, M);
  auto divs = divisors(M);
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    const Int j = *it;
    std::set<Int> kernel;
    for (Int g : gal.elements())
      if (mod(g - 1, j) == 0) kernel.insert(g);
    if (kernel == fixing.elements()) return j;
  }
  return std::nullopt;
}

inline FixedFieldDescriptor fixed_field(const Field& k, const ResidueSubgroup& fixing) {
  return {fixing.modulus(), fixing, cyclotomic_level_of(k, fixing)};
}

/// Descriptor of E_{k,mu,t}, the fixed field of g_group in k(zeta_o(t)).
inline FixedFieldDescriptor e_descriptor(const Field& k, const GroupSpec& spec, const GroupElement& t) {
  return fixed_field(k, g_group(k, spec, t));
}

/// Every lift of G_{k,mu,tau^(l^c)} to Gal(k(zeta_(l^n))/k), raised to l^c,
/// lands in G_{k,mu,tau}.
inline bool potenzagalois_check(const Field& k, Int l, Int n, Int c) {
  if (c <= 0 || c >= n) throw PreconditionViolation("potenzagalois_check: need 0 < c < n");
  const auto spec = GroupSpec::semidirect(l, n);
  const Int lc = ipow(l, static_cast<unsigned>(c));
  const Int ln = spec.cyclic_modulus();
  const auto small = g_group(k, spec, pow(spec, tau(), lc));
  const auto full = g_group(k, spec, tau());
  const Int small_mod = small.modulus();
  for (Int lift : galois_group(k, ln).elements()) {
    if (!small.contains(mod(lift, small_mod))) continue;
    if (!full.contains(powmod(lift, static_cast<std::uint64_t>(lc), ln))) return false;
  }
  return true;
}

}  // namespace steinitz
