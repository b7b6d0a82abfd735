#pragma once

// Executable property suites. Each suite runs its property over a grid of
// base fields and group parameters and counts violations; a passing suite has
// zero violations.

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "steinitz/arith.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/cyclo.hpp"
#include "steinitz/lgroups.hpp"
#include "steinitz/realizable.hpp"
#include "steinitz/wgroups.hpp"

namespace steinitz {

struct CaseResult {
  CaseResult() = default;
  explicit CaseResult(std::string l) : label(std::move(l)) {}

  std::string label;
  Int cases = 0;
  Int violations = 0;
  std::vector<std::string> failures;

  // describe is a string or a callable producing one; it is only evaluated on failure.
  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++cases;
    if (ok) return;
    ++violations;
    if (failures.size() >= 8) return;
    if constexpr (std::is_invocable_v<Describe>) {
      failures.push_back(describe());
    } else {
      failures.push_back(std::string(describe));
    }
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;

  Int total_cases() const {
    Int n = 0;
    for (const auto& c : cases) n += c.cases;
    return n;
  }
  Int total_violations() const {
    Int n = 0;
    for (const auto& c : cases) n += c.violations;
    return n;
  }
  bool passed() const { return total_violations() == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::vector<Int> fields{-23, -47, -71, -5, -163};
  Int congruenza_cases = 10'000;
  Int soundness_samples = 1'000;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"congruenza", "wexp", "potenzagalois", "troppo",
                                              "eciclo",     "ln1",  "ramifl",        "presentation"};
  return names;
}

/// Shares FieldContexts (and their W caches) across suites of one run.
class FieldPool {
 public:
  const FieldContext& get(Int d) {
    for (const auto& ctx : contexts_)
      if (ctx->field().d == d) return *ctx;
    contexts_.push_back(std::make_unique<FieldContext>(Field::from_d(d)));
    return *contexts_.back();
  }

 private:
  std::vector<std::unique_ptr<FieldContext>> contexts_;
};

namespace detail {

inline std::string field_label(Int d) { return "d=" + std::to_string(d); }

// Random instance satisfying x = y (mod m) and rad(n) | m, with |x|,|y| <= 10^6,
// m <= 10^3, n <= 10^3.
struct CongruenceInstance {
  Int x, y, m, n;
};

inline CongruenceInstance random_congruence_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> mdist(2, 1000);
  std::uniform_int_distribution<Int> ydist(-1'000'000, 1'000'000);
  const Int m = mdist(rng);
  const auto primes = prime_divisors(m);
  Int n = 1;
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<int> len(0, 6);
  for (int i = len(rng); i > 0; --i) {
    const Int q = primes[pick(rng)];
    if (n * q > 1000) break;
    n *= q;
  }
  const Int y = ydist(rng);
  // x = y + t m inside the box.
  const Int tmin = (-1'000'000 - y) / m;
  const Int tmax = (1'000'000 - y) / m;
  std::uniform_int_distribution<Int> tdist(tmin, tmax);
  return {y + tdist(rng) * m, y, m, n};
}

inline void soundness_case(const FieldContext& ctx, const GroupSpec& spec, std::uint64_t seed, Int samples,
                           CaseResult& out) {
  const auto rt = realizable(ctx, spec);
  RamDataSampler sampler(ctx, spec, seed);
  for (Int s = 0; s < samples; ++s) {
    const auto ram = sampler.sample();
    const Form st = steinitz_class(ctx, ram);
    std::string what;
    if (!rt.result.contains(st)) {
      what = "Steinitz class " + to_string(st) + " outside R_t for data";
      for (const auto& d : ram.data) what += " " + to_string(d);
    }
    out.check(rt.result.contains(st), what);
  }
}

}  // namespace detail

inline SuiteReport verify_congruenza(const VerifyOptions& opts) {
  SuiteReport r{"congruenza", {}};
  CaseResult c{"random (x,y,m,n)"};
  std::mt19937_64 rng(opts.seed);
  for (Int i = 0; i < opts.congruenza_cases; ++i) {
    const auto inst = detail::random_congruence_instance(rng);
    c.check(lifted_power_congruence(inst.x, inst.y, inst.m, inst.n), [&] {
      return "x=" + std::to_string(inst.x) + " y=" + std::to_string(inst.y) + " m=" + std::to_string(inst.m) +
             " n=" + std::to_string(inst.n);
    });
  }
  r.cases.push_back(std::move(c));
  return r;
}

inline SuiteReport verify_presentation(const VerifyOptions&) {
  SuiteReport r{"presentation", {}};
  for (auto [l, n] : std::vector<std::pair<Int, Int>>{{3, 2}, {3, 3}, {5, 2}}) {
    const auto rep = verify_presentation_uniqueness(l, n);
    CaseResult c{"uniqueness l=" + std::to_string(l) + " n=" + std::to_string(n)};
    c.cases = rep.candidates;
    c.violations = rep.violations;
    c.failures = rep.failures;
    if (rep.candidates == 0) {
      c.violations += 1;
      c.failures.push_back("no qualifying elements found");
    }
    r.cases.push_back(std::move(c));
  }
  // (tau^-b x)^m = tau^(-b m - b l^(n-1) (m-1) m / 2) x^m for x = tau^b' sigma.
  const auto spec = GroupSpec::semidirect(3, 2);
  const Int ln = spec.cyclic_modulus();
  const Int lower = ln / spec.l();
  CaseResult aux{"shifted power identity l=3 n=2"};
  for (Int bp = 0; bp < ln; ++bp) {
    const GroupElement x{bp, 1, 0};
    for (Int b = 0; b < ln; ++b) {
      const GroupElement shifted = mul(spec, zpow(spec, tau(), -b), x);
      for (Int m = 1; m <= spec.order(); ++m) {
        const Int e = -b * m - b * lower * (m - 1) * m / 2;
        const auto rhs = mul(spec, zpow(spec, tau(), e), pow(spec, x, m));
        aux.check(pow(spec, shifted, m) == rhs, [&] {
          return "b'=" + std::to_string(bp) + " b=" + std::to_string(b) + " m=" + std::to_string(m);
        });
      }
    }
  }
  r.cases.push_back(std::move(aux));
  return r;
}

inline SuiteReport verify_eciclo(const VerifyOptions& opts, FieldPool& pool) {
  SuiteReport r{"eciclo", {}};
  for (Int d : opts.fields) {
    const auto& ctx = pool.get(d);
    CaseResult c{detail::field_label(d)};
    for (Int l : {3, 5}) {
      for (Int n : {2, 3}) {
        const auto spec = GroupSpec::semidirect(l, n);
        const Int ln = spec.cyclic_modulus();
        const Int lower = ln / l;
        std::set<Int> expected;
        for (Int g : galois_group(ctx.field(), ln).elements())
          if (mod(g - 1, lower) == 0) expected.insert(g);
        const auto got = g_group(ctx.field(), spec, tau());
        const std::string tag = spec.name();
        c.check(got.elements() == expected, tag + ": G_{k,mu,tau} differs from residues = 1 mod l^(n-1)");
        c.check(e_descriptor(ctx.field(), spec, tau()).cyclotomic_level == lower, tag + ": E is not k(zeta_(l^(n-1)))");
        c.check(got.is_subgroup() && got.is_subset_of(galois_group(ctx.field(), ln)), tag + ": not a Galois subgroup");
      }
    }
    r.cases.push_back(std::move(c));
  }
  return r;
}

inline SuiteReport verify_potenzagalois(const VerifyOptions& opts) {
  SuiteReport r{"potenzagalois", {}};
  for (Int d : opts.fields) {
    const auto k = Field::from_d(d);
    CaseResult c{detail::field_label(d)};
    for (Int l : {3, 5}) {
      for (Int n : {2, 3}) {
        const Int ln = ipow(l, static_cast<unsigned>(n));
        for (Int cc = 1; cc < n; ++cc) {
          const std::string tag = "l=" + std::to_string(l) + " n=" + std::to_string(n) + " c=" + std::to_string(cc);
          c.check(potenzagalois_check(k, l, n, cc), tag);
          // Every lift of a residue mod l^(n-c) has the same l^c-th power mod l^n.
          const Int lc = ipow(l, static_cast<unsigned>(cc));
          const Int small = ln / lc;
          std::map<Int, Int> power_of_class;
          bool consistent = true;
          for (Int g : galois_group(k, ln).elements()) {
            const Int pw = powmod(g, static_cast<std::uint64_t>(lc), ln);
            auto [it, fresh] = power_of_class.emplace(mod(g, small), pw);
            if (!fresh && it->second != pw) consistent = false;
          }
          c.check(consistent, tag + ": l^c-th power depends on the lift");
        }
      }
    }
    r.cases.push_back(std::move(c));
  }
  return r;
}

inline SuiteReport verify_troppo(const VerifyOptions& opts, FieldPool& pool) {
  SuiteReport r{"troppo", {}};
  for (Int d : opts.fields) {
    const auto& ctx = pool.get(d);
    CaseResult c{detail::field_label(d)};
    for (Int l : {3, 5}) {
      for (Int n : {2, 3}) {
        for (Int cc = 1; cc < n; ++cc)
          c.check(troppo_check(ctx, l, n, cc),
                  "l=" + std::to_string(l) + " n=" + std::to_string(n) + " c=" + std::to_string(cc));
      }
    }
    r.cases.push_back(std::move(c));
  }
  return r;
}

/// Grid of (m, n) with rad(n) | m and m n <= limit.
inline std::vector<std::pair<Int, Int>> wexp_grid(Int limit = 27) {
  std::vector<std::pair<Int, Int>> out;
  for (Int m = 1; m <= limit; ++m) {
    for (Int n = 1; m * n <= limit; ++n) {
      bool ok = true;
      for (Int q : prime_divisors(n))
        if (m % q != 0) ok = false;
      if (ok) out.emplace_back(m, n);
    }
  }
  return out;
}

inline SuiteReport verify_wexp(const VerifyOptions& opts, FieldPool& pool) {
  SuiteReport r{"wexp", {}};
  for (Int d : opts.fields) {
    const auto& ctx = pool.get(d);
    CaseResult c{detail::field_label(d)};
    for (auto [m, n] : wexp_grid())
      c.check(wexp_check(ctx, m, n), "W(k," + std::to_string(m) + ")^" + std::to_string(n) + " not in W(k," +
                                         std::to_string(m * n) + ")");
    for (Int m1 = 1; m1 <= 27; ++m1)
      for (Int m2 = m1; m2 <= 27; m2 += m1)
        c.check(anti_containment_check(ctx, m1, m2),
                "W(k," + std::to_string(m2) + ") not in W(k," + std::to_string(m1) + ")");
    // [Cl : W] divides [k(zeta_m) : k].
    for (Int m = 1; m <= 27; ++m) {
      const auto& w = ctx.w(m);
      const Int index = ctx.class_group().h() / w.result.size();
      c.check(w.extension_degree % index == 0, "index of W(k," + std::to_string(m) + ") does not divide the degree");
    }
    r.cases.push_back(std::move(c));
  }
  return r;
}

inline SuiteReport verify_ln1(const VerifyOptions& opts, FieldPool& pool) {
  SuiteReport r{"ln1", {}};
  for (auto [l, n] : std::vector<std::pair<Int, Int>>{{3, 2}, {3, 3}, {5, 2}, {5, 3}}) {
    const auto spec = GroupSpec::semidirect(l, n);
    CaseResult c{"closed-form power " + spec.name()};
    for (Int a = 0; a < spec.cyclic_modulus(); ++a) {
      for (Int b = 0; b < l; ++b) {
        GroupElement acc{};
        const GroupElement g{a, b, 0};
        for (Int m = 0; m <= spec.order(); ++m) {
          c.check(semidirect_pow_closed_form(l, n, a, b, m) == acc, [&] {
            return "a=" + std::to_string(a) + " b=" + std::to_string(b) + " m=" + std::to_string(m);
          });
          acc = mul(spec, acc, g);
        }
      }
    }
    r.cases.push_back(std::move(c));
  }
  {
    // Conjugation of an inertia generator with l^2 | order by sigma and tau.
    const auto spec = GroupSpec::semidirect(3, 3);
    const Int l = spec.l();
    const Int n = spec.n();
    CaseResult c{"inertia conjugation " + spec.name()};
    for (const auto& t : elements(spec)) {
      const Int ord = order(spec, t);
      if (ord % (l * l) != 0) continue;
      Int beta = 0;
      for (Int a = t.a; a % l == 0 && beta < n; a /= l) ++beta;
      const auto by_sigma = conj_power_exponent(spec, t, sigma());
      c.check(by_sigma && *by_sigma == mod(spec.twist(), ord), "sigma-conjugate of (" + std::to_string(t.a) + "," +
                                                                   std::to_string(t.b) + ")");
      const auto by_tau = conj_power_exponent(spec, t, tau());
      const Int lm = ipow(l, static_cast<unsigned>(n - 1 - beta));
      c.check(by_tau && mod(*by_tau - 1, lm) == 0,
              "tau-conjugate of (" + std::to_string(t.a) + "," + std::to_string(t.b) + ")");
    }
    r.cases.push_back(std::move(c));
  }
  for (Int d : opts.fields) {
    const auto& ctx = pool.get(d);
    for (auto spec : {GroupSpec::semidirect(3, 2), GroupSpec::semidirect(3, 3)}) {
      CaseResult c{"soundness " + detail::field_label(d) + " " + spec.name()};
      detail::soundness_case(ctx, spec, opts.seed, opts.soundness_samples, c);
      r.cases.push_back(std::move(c));
    }
  }
  return r;
}

inline SuiteReport verify_ramifl(const VerifyOptions& opts, FieldPool& pool) {
  SuiteReport r{"ramifl", {}};
  for (Int l : {3, 5}) {
    const auto spec = GroupSpec::heisenberg(l);
    CaseResult c{"element orders " + spec.name()};
    for (const auto& g : elements(spec))
      if (!is_identity(g)) c.check(order(spec, g) == l, "order of (" + std::to_string(g.a) + "," +
                                                            std::to_string(g.b) + "," + std::to_string(g.c) + ")");
    r.cases.push_back(std::move(c));
  }
  for (Int d : opts.fields) {
    const auto& ctx = pool.get(d);
    CaseResult c{"action groups " + detail::field_label(d)};
    for (Int l : {3, 5}) {
      const auto spec = GroupSpec::heisenberg(l);
      for (Int a = 0; a < l; ++a) {
        for (Int cc = 0; cc < l; ++cc) {
          if (a == 0 && cc == 0) continue;
          const GroupElement t{a, 0, cc};
          const std::string tag = spec.name() + " x^" + std::to_string(a) + " s^" + std::to_string(cc);
          if (a != 0) {
            c.check(action_exponent_set(spec, t, generated_subgroup(spec, {heis_y()})) == std::set<Int>{1},
                    tag + ": y acts by a power");
          }
          c.check(e_descriptor(ctx.field(), spec, t).cyclotomic_level == l, tag + ": E is not k(zeta_l)");
        }
      }
    }
    r.cases.push_back(std::move(c));
    CaseResult s{"soundness " + detail::field_label(d) + " HEISENBERG(3)"};
    detail::soundness_case(ctx, GroupSpec::heisenberg(3), opts.seed, opts.soundness_samples, s);
    r.cases.push_back(std::move(s));
  }
  return r;
}

inline SuiteReport run_suite(const std::string& name, const VerifyOptions& opts, FieldPool& pool) {
  if (name == "congruenza") return verify_congruenza(opts);
  if (name == "wexp") return verify_wexp(opts, pool);
  if (name == "potenzagalois") return verify_potenzagalois(opts);
  if (name == "troppo") return verify_troppo(opts, pool);
  if (name == "eciclo") return verify_eciclo(opts, pool);
  if (name == "ln1") return verify_ln1(opts, pool);
  if (name == "ramifl") return verify_ramifl(opts, pool);
  if (name == "presentation") return verify_presentation(opts);
  throw InvalidInput("unknown suite '" + name + "'");
}

}  // namespace steinitz
