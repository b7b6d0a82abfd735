#pragma once

// W(k, E): the classes of Cl(k) containing a degree-1 prime that splits
// completely in an abelian extension E/k inside some k(zeta_M). A split prime
// p of k not dividing M*D splits completely in E iff its Frobenius p mod M lies
// in the fixing group of E, so W is generated by the classes of such primes.
//
// Exactness: Cl/W is a quotient of Gal(E/k), so [Cl : W] divides [E : k]. When
// gcd(h, [E : k]) = 1 this forces W = Cl without sampling (INDEX_FORCED).
// Otherwise primes are sampled in doubling windows until a window adds nothing
// (STABILIZED).

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "steinitz/arith.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/cyclo.hpp"
#include "steinitz/errors.hpp"

namespace steinitz {

struct SamplingPolicy {
  Int first_bound = 10'000;
  Int min_primes = 25;
  Int hard_cap = 10'000'000;
};

enum class CertificateKind { IndexForced, Stabilized };

inline const char* to_string(CertificateKind k) {
  return k == CertificateKind::IndexForced ? "INDEX_FORCED" : "STABILIZED";
}

struct Certificate {
  CertificateKind kind = CertificateKind::IndexForced;
  Int bound = 0;        // last sampled prime bound (STABILIZED only)
  Int prime_count = 0;  // qualifying primes seen (STABILIZED only)
};

struct WComputation {
  Field field;
  Int modulus = 1;
  ResidueSubgroup fixing;  // Frobenius condition: p mod modulus in fixing
  Int extension_degree = 1;  // [E : k]
  ClassSubgroup result;
  Certificate certificate;
  Int sampled_primes = 0;

  bool exact() const { return certificate.kind == CertificateKind::IndexForced; }
};

namespace detail {

inline WComputation sample_w(const ClassGroup& cl, const ResidueSubgroup& fixing, const SamplingPolicy& policy) {
  const Field& k = cl.field();
  const Int M = fixing.modulus();
  WComputation out;
  out.field = k;
  out.modulus = M;
  out.fixing = fixing;
  out.extension_degree = galois_group(k, M).size() / fixing.size();

  if (std::gcd(cl.h(), out.extension_degree) == 1) {
    out.result = cl.as_subgroup();
    out.certificate = {CertificateKind::IndexForced, 0, 0};
    return out;
  }

  std::vector<Form> gens;
  ClassSubgroup acc = subgroup_generated(k.D, {});
  Int count = 0;
  Int lo = 2;
  Int hi = policy.first_bound;
  bool first = true;
  while (true) {
    if (hi > policy.hard_cap) {
      throw SamplingExhausted("W(k) sampling for D = " + std::to_string(k.D) + ", M = " + std::to_string(M) +
                              " did not stabilize below " + std::to_string(policy.hard_cap));
    }
    PrimeStream cfg;
    cfg.modulus = M;
    cfg.residues = fixing.elements();
    cfg.discriminant = k.D;
    cfg.lower = lo;
    cfg.upper = hi;
    bool grew = false;
    for (Int p : prime_stream(cfg)) {
      ++count;
      const Form f = prime_to_class(k, p).second;
      if (acc.contains(f)) continue;
      gens.push_back(f);
      acc = subgroup_generated(k.D, gens);
      grew = true;
    }
    if (!first && !grew && count >= policy.min_primes) break;
    first = false;
    lo = hi + 1;
    hi *= 2;
  }
  out.result = std::move(acc);
  out.certificate = {CertificateKind::Stabilized, hi, count};
  out.sampled_primes = count;
  return out;
}

}  // namespace detail

/// Class group plus memoized W(k, m) computations for one base field. Safe to
/// share between threads.
class FieldContext {
 public:
  explicit FieldContext(const Field& k, Int cap = kDefaultDiscriminantCap, SamplingPolicy policy = {})
      : class_group_(ClassGroup::enumerate(k, cap)), policy_(policy) {}
  FieldContext(ClassGroup cl, SamplingPolicy policy = {}) : class_group_(std::move(cl)), policy_(policy) {}

  const Field& field() const { return class_group_.field(); }
  const ClassGroup& class_group() const { return class_group_; }
  const SamplingPolicy& policy() const { return policy_; }

  /// W(k, m) = W(k, k(zeta_m)).
  const WComputation& w(Int m) const {
    if (m < 1) throw PreconditionViolation("w_group: modulus must be >= 1");
    std::lock_guard lock(mutex_);
    auto it = cache_.find(m);
    if (it == cache_.end()) {
      it = cache_.emplace(m, detail::sample_w(class_group_, ResidueSubgroup(m, {1 % m}), policy_)).first;
    }
    return it->second;
  }

 private:
  ClassGroup class_group_;
  SamplingPolicy policy_;
  mutable std::mutex mutex_;
  mutable std::map<Int, WComputation> cache_;
};

inline WComputation w_group(const FieldContext& ctx, Int M) { return ctx.w(M); }

inline WComputation w_group(const Field& k, Int M) { return FieldContext(k).w(M); }

/// W(k, E) for E the fixed field of desc.fixing inside k(zeta_M).
inline WComputation w_group_of_descriptor(const FieldContext& ctx, const FixedFieldDescriptor& desc) {
  const auto gal = galois_group(ctx.field(), desc.modulus);
  if (desc.fixing.modulus() != desc.modulus || !desc.fixing.is_subset_of(gal) || !desc.fixing.is_subgroup())
    throw InvalidInput("w_group_of_descriptor: fixing group is not a subgroup of Gal(k(zeta_M)/k)");
  return detail::sample_w(ctx.class_group(), desc.fixing, ctx.policy());
}

/// W(k, m)^n inside W(k, m n), for n whose primes all divide m.
inline bool wexp_check(const FieldContext& ctx, Int m, Int n) {
  if (m < 1 || n < 1) throw PreconditionViolation("wexp_check: m and n must be positive");
  for (Int q : prime_divisors(n)) {
    if (m % q != 0) throw PreconditionViolation("wexp_check: prime " + std::to_string(q) + " of n does not divide m");
  }
  const auto lhs = subgroup_power(ctx.w(m).result, n);
  return lhs.is_subset_of(ctx.w(checked_mul(m, n)).result);
}

/// W(k, E_{k,mu,tau^(l^c)})^(l^c) inside W(k, l^(n-1)) for SEMIDIRECT(l, n).
inline bool troppo_check(const FieldContext& ctx, Int l, Int n, Int c) {
  if (c <= 0 || c >= n) throw PreconditionViolation("troppo_check: need 0 < c < n");
  const auto spec = GroupSpec::semidirect(l, n);
  const Int lc = ipow(l, static_cast<unsigned>(c));
  const auto desc = e_descriptor(ctx.field(), spec, pow(spec, tau(), lc));
  const auto lhs = subgroup_power(w_group_of_descriptor(ctx, desc).result, lc);
  return lhs.is_subset_of(ctx.w(ipow(l, static_cast<unsigned>(n - 1))).result);
}

/// W(k, m2) inside W(k, m1) whenever m1 | m2.
inline bool anti_containment_check(const FieldContext& ctx, Int m1, Int m2) {
  if (m1 < 1 || m2 < 1 || m2 % m1 != 0) throw PreconditionViolation("anti_containment_check: need m1 | m2");
  return ctx.w(m2).result.is_subset_of(ctx.w(m1).result);
}

}  // namespace steinitz
