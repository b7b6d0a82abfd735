#pragma once

// Steinitz classes of tame G-extensions from ramification data, and the
// realizable-class groups R_t(k, G) for
//
//   G = C(l^n) x| C(l):   R_t = W(k, l^(n-1))^((l-1) l / 2)
//   G = Heisenberg(l):    R_t = W(k, l)^((l-1) l^2 / 2)
//
// For odd |G| = m the Steinitz class is the square root of the discriminant
// ideal prod p^((e_p - 1) m / e_p), i.e. prod p^(((e_p - 1)/2) (m / e_p)).

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "steinitz/arith.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/cyclo.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/lgroups.hpp"
#include "steinitz/wgroups.hpp"

namespace steinitz {

/// ((e - 1)/2) * (m / e): exponent of p in the Steinitz ideal when p has
/// ramification index e in an extension of odd degree m.
inline Int steinitz_exponent(Int e, Int m) {
  if (e < 2) throw PreconditionViolation("steinitz_exponent: e must be >= 2");
  if (m % 2 == 0) throw PreconditionViolation("steinitz_exponent: degree must be odd");
  if (m % e != 0) throw PreconditionViolation("steinitz_exponent: e must divide the degree");
  return checked_mul((e - 1) / 2, m / e);
}

struct RamDatum {
  PrimeIdeal prime;
  Int e = 0;
  auto operator<=>(const RamDatum&) const = default;
};

struct RamData {
  Field field;
  GroupSpec spec;
  std::vector<RamDatum> data;
};

inline std::string to_string(const RamDatum& d) {
  return std::to_string(d.prime.p) + "[b=" + std::to_string(d.prime.b) + "]:" + std::to_string(d.e);
}

/// Ramification indices that occur for the family: orders of nontrivial
/// cyclic subgroups (inertia groups of tame extensions are cyclic).
inline std::vector<Int> admissible_indices(const GroupSpec& spec) {
  std::vector<Int> out;
  for (Int e = spec.l(); e <= spec.exponent(); e *= spec.l()) out.push_back(e);
  return out;
}

inline bool is_valid_prime_ideal(const Field& k, const PrimeIdeal& q) {
  if (q.p < 2 || !is_prime(q.p) || kronecker(k.D, q.p) != 1) return false;
  if (q.b < 0 || q.b >= 2 * q.p || mod(q.b - k.D, 2) != 0) return false;
  return mod(checked_narrow(Wide(q.b) * q.b - k.D), 4 * q.p) == 0;
}

struct DatumCheck {
  RamDatum datum;
  std::vector<std::string> violated;  // clause labels
  std::vector<std::string> messages;
  bool ok() const { return violated.empty(); }
};

struct ValidationReport {
  std::vector<DatumCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const DatumCheck& c) { return c.ok(); });
  }

  // First failing datum, formatted for error messages.
  std::string first_failure() const {
    for (const auto& c : checks) {
      if (c.ok()) continue;
      std::string out = "datum " + to_string(c.datum) + " violates";
      for (std::size_t i = 0; i < c.violated.size(); ++i)
        out += (i ? "; clause (" : " clause (") + c.violated[i] + "): " + c.messages[i];
      return out;
    }
    return {};
  }
};

/// Per-datum soundness constraints for ramification data:
///   prime:      a degree-1 split prime of k with a valid root
///   admissible: e is a power of l between l and the group exponent
///   i:          p = 1 mod e (tame ramification of a degree-1 prime)
///   ii:         HEISENBERG: e = l and [p] in W(k, l)
///   iii:        SEMIDIRECT, l^2 | e: [p] in W(k, e / l)
///   iv:         SEMIDIRECT, e = l: [p] in W(k, l)
inline DatumCheck validate_datum(const FieldContext& ctx, const GroupSpec& spec, const RamDatum& d) {
  DatumCheck out{d, {}, {}};
  auto fail = [&](const char* clause, std::string msg) {
    out.violated.emplace_back(clause);
    out.messages.push_back(std::move(msg));
  };
  const Field& k = ctx.field();
  const Int l = spec.l();
  const bool prime_ok = is_valid_prime_ideal(k, d.prime);
  if (!prime_ok)
    fail("prime", std::to_string(d.prime.p) + " is not a split degree-1 prime with root " + std::to_string(d.prime.b));
  const auto allowed = admissible_indices(spec);
  const bool admissible = std::find(allowed.begin(), allowed.end(), d.e) != allowed.end();
  if (!admissible && spec.family() != Family::Heisenberg)
    fail("admissible", "e = " + std::to_string(d.e) + " is not a power of l up to the group exponent");
  if (d.e < 2 || mod(d.prime.p - 1, std::max<Int>(d.e, 1)) != 0)
    fail("i", std::to_string(d.prime.p) + " is not 1 mod " + std::to_string(d.e));
  if (spec.family() == Family::Heisenberg && d.e != l)
    fail("ii", "ramification index must equal l = " + std::to_string(l));
  // The remaining clauses need the class of the prime.
  if (!prime_ok) return out;
  const Form cls = prime_form(k, d.prime);
  switch (spec.family()) {
    case Family::Heisenberg:
      if (d.e == l && !ctx.w(l).result.contains(cls)) {
        fail("ii", "class " + to_string(cls) + " is not in W(k," + std::to_string(l) + ")");
      }
      break;
    case Family::Semidirect:
      if (!admissible) break;
      if (d.e % (l * l) == 0) {
        if (!ctx.w(d.e / l).result.contains(cls))
          fail("iii", "class " + to_string(cls) + " is not in W(k," + std::to_string(d.e / l) + ")");
      } else if (!ctx.w(l).result.contains(cls)) {
        fail("iv", "class " + to_string(cls) + " is not in W(k," + std::to_string(l) + ")");
      }
      break;
    case Family::Cyclic:
      break;
  }
  return out;
}

inline ValidationReport validate_ram_data(const FieldContext& ctx, const RamData& ram) {
  if (ram.field != ctx.field()) throw InvalidInput("validate_ram_data: ramification data belongs to another field");
  ValidationReport report;
  for (const auto& d : ram.data) report.checks.push_back(validate_datum(ctx, ram.spec, d));
  return report;
}

/// Class of prod p^steinitz_exponent(e_p, |G|); throws ValidationError on
/// invalid data.
inline Form steinitz_class(const FieldContext& ctx, const RamData& ram) {
  const auto report = validate_ram_data(ctx, ram);
  if (!report.ok()) throw ValidationError(report.first_failure());
  const Int m = ram.spec.order();
  Form acc = ctx.class_group().identity();
  for (const auto& d : ram.data) acc = compose(acc, power(prime_form(ctx.field(), d.prime), steinitz_exponent(d.e, m)));
  return acc;
}

struct RealizableResult {
  GroupSpec spec;
  Int exponent = 1;     // power applied to W
  Int w_modulus = 1;    // W(k, w_modulus)
  WComputation w;
  ClassSubgroup result;
};

/// R_t(k, G) for the SEMIDIRECT and HEISENBERG families.
inline RealizableResult realizable(const FieldContext& ctx, const GroupSpec& spec) {
  const Int l = spec.l();
  Int modulus = 0;
  Int exponent = 0;
  switch (spec.family()) {
    case Family::Semidirect:
      modulus = ipow(l, static_cast<unsigned>(spec.n() - 1));
      exponent = (l - 1) * l / 2;
      break;
    case Family::Heisenberg:
      modulus = l;
      exponent = (l - 1) * l * l / 2;
      break;
    case Family::Cyclic:
      throw UnsupportedFamily("realizable classes are not computed for the cyclic family");
  }
  const auto& w = ctx.w(modulus);
  return {spec, exponent, modulus, w, subgroup_power(w.result, exponent)};
}

inline bool membership(const FieldContext& ctx, const GroupSpec& spec, const Form& x) {
  if (!ctx.class_group().contains(x)) throw InvalidInput("membership: " + to_string(x) + " is not a class of k");
  return realizable(ctx, spec).result.contains(x);
}

/// st(K/k) = st(k1/k)^deg * N_{k1/k}(st(K/k1)); the norm class is supplied by
/// the caller.
inline Form tower_compose(const Form& x, Int deg, const Form& norm_class) {
  if (deg < 1) throw PreconditionViolation("tower_compose: degree must be >= 1");
  return compose(power(x, deg), norm_class);
}

/// A candidate ramification datum together with its Steinitz contribution.
struct Contribution {
  RamDatum datum;
  Form cls;
};

/// Individually valid data over split primes coprime to avoid * D, taking
/// up to per_index primes for each admissible ramification index.
inline std::vector<Contribution> candidate_contributions(const FieldContext& ctx, const GroupSpec& spec, Int avoid,
                                                         Int per_index, Int bound = 2'000'000) {
  if (avoid < 1) throw PreconditionViolation("avoid must be >= 1");
  const Field& k = ctx.field();
  const Int m = spec.order();
  std::vector<Contribution> out;
  std::vector<Int> indices = spec.family() == Family::Heisenberg ? std::vector<Int>{spec.l()} : admissible_indices(spec);
  for (Int e : indices) {
    Int taken = 0;
    for (Int lo = 2, hi = 20'000; lo <= bound && taken < per_index; lo = hi + 1, hi *= 2) {
      PrimeStream cfg;
      cfg.modulus = e;
      cfg.residues = {1};
      cfg.discriminant = k.D;
      cfg.lower = lo;
      cfg.upper = std::min(hi, bound);
      for (Int p : prime_stream(cfg)) {
        if (avoid % p == 0) continue;
        bool used = false;
        for (const PrimeIdeal& q : {split_prime(k, p), conjugate(split_prime(k, p))}) {
          RamDatum d{q, e};
          if (!validate_datum(ctx, spec, d).ok()) continue;
          out.push_back({d, power(prime_form(k, q), steinitz_exponent(e, m))});
          used = true;
        }
        if (used && ++taken >= per_index) break;
      }
    }
  }
  return out;
}

struct WitnessBudget {
  Int max_terms = 6;
  Int primes_per_index = 24;
};

/// Ramification data with Steinitz class target, built from primes coprime
/// to avoid * D. Breadth-first over Cl(k): each state keeps the first datum
/// list reaching it, so the shortest witness wins. nullopt means the budget was
/// spent without reaching the target.
inline std::optional<RamData> witness_search(const FieldContext& ctx, const GroupSpec& spec, const Form& target,
                                             Int avoid, WitnessBudget budget = {}) {
  const Field& k = ctx.field();
  if (!ctx.class_group().contains(target)) throw InvalidInput("witness_search: target is not a class of k");
  const auto rt = realizable(ctx, spec);
  if (!rt.result.contains(target))
    throw PreconditionViolation("witness_search: target " + to_string(target) + " is not realizable for " + spec.name());
  RamData found{k, spec, {}};
  const Form goal = reduce(target);
  if (goal == ctx.class_group().identity()) return found;

  const auto candidates = candidate_contributions(ctx, spec, avoid, budget.primes_per_index);
  std::map<Form, std::vector<std::size_t>> reached{{ctx.class_group().identity(), {}}};
  std::vector<Form> frontier{ctx.class_group().identity()};
  for (Int depth = 0; depth < budget.max_terms && !frontier.empty(); ++depth) {
    std::vector<Form> next;
    for (const auto& state : frontier) {
      const auto path = reached.at(state);
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& cand = candidates[i];
        bool reuse = std::any_of(path.begin(), path.end(),
                                 [&](std::size_t j) { return candidates[j].datum.prime == cand.datum.prime; });
        if (reuse) continue;
        const Form to = compose(state, cand.cls);
        if (reached.contains(to)) continue;
        auto extended = path;
        extended.push_back(i);
        reached.emplace(to, extended);
        if (to == goal) {
          for (std::size_t j : extended) found.data.push_back(candidates[j].datum);
          return found;
        }
        next.push_back(to);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// Draws random ramification data that pass validate_ram_data, from pools of
/// small split primes. Deterministic for a given seed.
class RamDataSampler {
 public:
  RamDataSampler(const FieldContext& ctx, const GroupSpec& spec, std::uint64_t seed, Int per_index = 40)
      : ctx_(&ctx), spec_(spec), rng_(seed) {
    for (auto& c : candidate_contributions(ctx, spec, 1, per_index)) pool_.push_back(c.datum);
  }

  bool empty() const { return pool_.empty(); }
  const std::vector<RamDatum>& pool() const& { return pool_; }
  std::vector<RamDatum> pool() && { return std::move(pool_); }

  /// 0 to max_size distinct prime ideals with their indices.
  RamData sample(Int max_size = 4) {
    RamData out{ctx_->field(), spec_, {}};
    if (pool_.empty()) return out;
    std::uniform_int_distribution<Int> size_dist(0, max_size);
    std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
    const Int size = size_dist(rng_);
    std::set<PrimeIdeal> used;
    for (Int i = 0; i < size * 4 && static_cast<Int>(out.data.size()) < size; ++i) {
      const auto& d = pool_[pick(rng_)];
      if (!used.insert(d.prime).second) continue;
      out.data.push_back(d);
    }
    return out;
  }

 private:
  const FieldContext* ctx_;
  GroupSpec spec_;
  std::mt19937_64 rng_;
  std::vector<RamDatum> pool_;
};

struct PropertyResult {
  std::string name;
  bool passed = true;
  Int checked = 0;
  std::vector<std::string> counterexamples;
  std::string note;
};

struct GoodGroupReport {
  GroupSpec spec;
  std::vector<PropertyResult> properties;
  bool passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
  }
};

struct GoodGroupOptions {
  std::uint64_t seed = 0;
  Int samples = 200;
  std::vector<Int> avoid_values;  // empty: {1, 4, l}
};

/// Class-level checks of the four good-group properties.
inline GoodGroupReport good_group_report(const FieldContext& ctx, const GroupSpec& spec, GoodGroupOptions opts = {}) {
  const auto rt = realizable(ctx, spec);
  const auto& R = rt.result;
  const Int m = spec.order();
  const Int l = spec.l();
  GoodGroupReport report{spec, {}};
  auto record = [](PropertyResult& p, std::string what) {
    p.passed = false;
    if (p.counterexamples.size() < 8) p.counterexamples.push_back(std::move(what));
  };

  PropertyResult p1{"1: R_t is a group", true, 0, {}, {}};
  for (const auto& x : R.elements()) {
    ++p1.checked;
    if (!R.contains(inverse(x))) record(p1, "inverse of " + to_string(x));
    for (const auto& y : R.elements())
      if (!R.contains(compose(x, y))) record(p1, to_string(x) + " * " + to_string(y));
  }
  if (!R.contains(ctx.class_group().identity())) record(p1, "identity missing");

  PropertyResult p2{"2: per-prime Steinitz factors lie in R_t", true, 0, {}, "alpha = 1 (odd order)"};
  PropertyResult p3{"3: l-part factors lie in R_t", true, 0, {},
                    "e_p(l) read as the l-part of e_p; equal to e_p for l-groups"};
  RamDataSampler sampler(ctx, spec, opts.seed);
  for (Int s = 0; s < opts.samples; ++s) {
    const auto ram = sampler.sample();
    for (const auto& d : ram.data) {
      const Form cls = prime_form(ctx.field(), d.prime);
      ++p2.checked;
      if (!R.contains(power(cls, steinitz_exponent(d.e, m)))) record(p2, to_string(d));
      for (Int q : prime_divisors(d.e)) {
        Int lpart = 1;
        for (Int v = d.e; v % q == 0; v /= q) lpart *= q;
        ++p3.checked;
        const Int full = (q - 1) * (m / lpart);
        if (!R.contains(power(cls, full))) record(p3, to_string(d) + " exponent " + std::to_string(full));
        if (full % 2 == 0) {
          const Int half = ((q - 1) / 2) * (m / lpart);
          if (!R.contains(power(cls, half))) record(p3, to_string(d) + " exponent " + std::to_string(half));
        }
      }
    }
  }

  PropertyResult p4{"4: every class of R_t has a witness avoiding a", true, 0, {}, {}};
  auto avoid_values = opts.avoid_values.empty() ? std::vector<Int>{1, 4, l} : opts.avoid_values;
  for (Int a : avoid_values) {
    for (const auto& x : R.elements()) {
      ++p4.checked;
      auto w = witness_search(ctx, spec, x, a);
      if (!w) {
        record(p4, "no witness for " + to_string(x) + " avoiding " + std::to_string(a));
        continue;
      }
      if (steinitz_class(ctx, *w) != x) record(p4, "witness class mismatch for " + to_string(x));
      for (const auto& d : w->data)
        if (a % d.prime.p == 0) record(p4, "witness prime " + std::to_string(d.prime.p) + " divides " + std::to_string(a));
    }
  }

  report.properties = {p1, p2, p3, p4};
  return report;
}

}  // namespace steinitz
