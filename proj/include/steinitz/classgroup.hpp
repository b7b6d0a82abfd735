#pragma once

// Ideal class groups of imaginary quadratic fields as groups of reduced
// primitive binary quadratic forms of fundamental discriminant D < 0.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "steinitz/arith.hpp"
#include "steinitz/errors.hpp"

namespace steinitz {

inline constexpr Int kDefaultDiscriminantCap = 1'000'000;

/// Q(sqrt(d)) for squarefree d < 0, with fundamental discriminant D.
struct Field {
  Int d = -1;
  Int D = -4;

  static Field from_d(Int d) {
    if (d >= 0) throw InvalidInput("field: d must be negative");
    if (!is_squarefree(d)) throw InvalidInput("field: d = " + std::to_string(d) + " is not squarefree");
    return {d, mod(d, 4) == 1 ? d : checked_mul(4, d)};
  }

  friend bool operator==(const Field&, const Field&) = default;
};

/// Binary quadratic form a x^2 + b x y + c y^2.
struct Form {
  Int a = 1;
  Int b = 0;
  Int c = 1;

  Int discriminant() const { return checked_narrow(Wide(b) * b - Wide(4) * a * c); }

  bool is_reduced() const {
    if (a <= 0 || std::abs(b) > a || a > c) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
  }

  auto operator<=>(const Form&) const = default;
};

inline std::string to_string(const Form& f) {
  return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

/// Unique reduced representative of the proper equivalence class of a
/// positive definite form.
inline Form reduce(Form f) {
  const Int D = f.discriminant();
  if (D >= 0 || f.a <= 0) throw InvalidInput("reduce: form " + to_string(f) + " is not positive definite");
  auto normalize = [D](Form& g) {
    if (-g.a < g.b && g.b <= g.a) return;
    const Int two_a = 2 * g.a;
    // floor((a - b) / 2a)
    Int num = g.a - g.b;
    Int k = num >= 0 ? num / two_a : -((-num + two_a - 1) / two_a);
    g.b = checked_narrow(Wide(g.b) + Wide(two_a) * k);
    g.c = checked_narrow((Wide(g.b) * g.b - D) / (Wide(4) * g.a));
  };
  normalize(f);
  while (f.a > f.c) {
    f = {f.c, -f.b, f.a};
    normalize(f);
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

inline Form principal_form(Int D) {
  const Int b = mod(D, 2);
  return {1, b, (b * b - D) / 4};
}

inline Form inverse(const Form& f) { return reduce({f.a, -f.b, f.c}); }

namespace detail {

// Returns (g, s, t) with s x + t y = g = gcd(x, y) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int x, Int y) {
  Int r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

}  // namespace detail

/// Gauss/Dirichlet composition followed by reduction.
inline Form compose(const Form& f1, const Form& f2) {
  const Int D = f1.discriminant();
  if (f2.discriminant() != D) throw DiscriminantMismatch("compose: forms have different discriminants");
  const Form x = reduce(f1);
  const Form y = reduce(f2);
  const Int beta = (x.b + y.b) / 2;
  auto [g1, s, t] = detail::ext_gcd(x.a, y.a);
  auto [g, r, w] = detail::ext_gcd(g1, beta);
  const Wide u = Wide(r) * s;
  const Wide v = Wide(r) * t;
  const Wide A = Wide(x.a) * y.a / (Wide(g) * g);
  Wide B = (u * x.a * y.b + v * y.a * x.b + Wide(w) * ((Wide(x.b) * y.b + D) / 2)) / g;
  const Wide twoA = 2 * A;
  B %= twoA;
  if (B < 0) B += twoA;
  const Wide C = (B * B - D) / (4 * A);
  return reduce({checked_narrow(A), checked_narrow(B), checked_narrow(C)});
}

inline Form power(const Form& f, Int e) {
  const Int D = f.discriminant();
  Form base = e < 0 ? inverse(f) : reduce(f);
  if (e < 0) e = -e;
  Form acc = principal_form(D);
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

/// A degree-1 prime of k above the split rational prime p, encoded by the root
/// b of b^2 = D (mod 4p); the ideal is (p, (b + sqrt D)/2).
struct PrimeIdeal {
  Int p = 0;
  Int b = 0;
  auto operator<=>(const PrimeIdeal&) const = default;
};

inline PrimeIdeal conjugate(const PrimeIdeal& q) { return {q.p, 2 * q.p - q.b}; }

/// The split prime above p with the least admissible root b >= 0.
inline PrimeIdeal split_prime(const Field& k, Int p) {
  if (p < 2 || !is_prime(p)) throw NonSplitPrime(std::to_string(p) + " is not prime");
  if (kronecker(k.D, p) != 1) throw NonSplitPrime(std::to_string(p) + " does not split in Q(sqrt(" + std::to_string(k.d) + "))");
  const Int parity = mod(k.D, 2);
  if (p == 2) return {2, 1};
  const Int r = *sqrt_mod_prime(k.D, p);
  Int best = -1;
  for (Int cand : {r, p - r, r + p, 2 * p - r}) {
    if (cand < 0 || cand >= 2 * p || mod(cand, 2) != parity) continue;
    if (best < 0 || cand < best) best = cand;
  }
  return {p, best};
}

inline Form prime_form(const Field& k, const PrimeIdeal& q) {
  const Wide c = (Wide(q.b) * q.b - k.D) / (Wide(4) * q.p);
  return reduce({q.p, q.b, checked_narrow(c)});
}

inline std::pair<PrimeIdeal, Form> prime_to_class(const Field& k, Int p) {
  auto q = split_prime(k, p);
  return {q, prime_form(k, q)};
}

class ClassGroup;

/// A subgroup of Cl(k) stored as its sorted element list.
class ClassSubgroup {
 public:
  ClassSubgroup() = default;
  ClassSubgroup(Int D, std::vector<Form> elements, std::vector<Form> generators)
      : D_(D), elements_(std::move(elements)), generators_(std::move(generators)) {
    std::sort(elements_.begin(), elements_.end());
  }

  Int discriminant() const { return D_; }
  const std::vector<Form>& elements() const& { return elements_; }
  std::vector<Form> elements() && { return std::move(elements_); }
  const std::vector<Form>& generators() const& { return generators_; }
  std::vector<Form> generators() && { return std::move(generators_); }
  Int size() const { return static_cast<Int>(elements_.size()); }
  bool is_trivial() const { return elements_.size() == 1; }

  bool contains(const Form& f) const { return std::binary_search(elements_.begin(), elements_.end(), reduce(f)); }

  bool is_subset_of(const ClassSubgroup& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }

  friend bool operator==(const ClassSubgroup& x, const ClassSubgroup& y) {
    return x.D_ == y.D_ && x.elements_ == y.elements_;
  }

 private:
  Int D_ = -4;
  std::vector<Form> elements_;
  std::vector<Form> generators_;
};

/// Smallest subgroup containing the given classes; generators keeps only the
/// inputs that enlarged the subgroup.
inline ClassSubgroup subgroup_generated(Int D, const std::vector<Form>& classes) {
  std::set<Form> seen{principal_form(D)};
  std::vector<Form> gens;
  for (const auto& raw : classes) {
    if (raw.discriminant() != D) throw DiscriminantMismatch("subgroup_generated: class of wrong discriminant");
    const Form g = reduce(raw);
    if (seen.contains(g)) continue;
    gens.push_back(g);
    // Abelian: the new subgroup is the union of cosets S * g^i.
    std::vector<Form> current(seen.begin(), seen.end());
    Form step = g;
    while (!seen.contains(step)) {
      for (const auto& s : current) seen.insert(compose(s, step));
      step = compose(step, g);
    }
  }
  return {D, {seen.begin(), seen.end()}, gens};
}

inline ClassSubgroup subgroup_power(const ClassSubgroup& S, Int e) {
  if (e < 0) throw PreconditionViolation("subgroup_power: exponent must be non-negative");
  std::set<Form> image;
  for (const auto& s : S.elements()) image.insert(power(s, e));
  std::vector<Form> gens;
  for (const auto& g : S.generators()) {
    Form ge = power(g, e);
    if (ge != principal_form(S.discriminant())) gens.push_back(ge);
  }
  return {S.discriminant(), {image.begin(), image.end()}, gens};
}

class ClassGroup {
 public:
  /// All reduced forms of discriminant D, with abelian invariants.
  static ClassGroup enumerate(const Field& k, Int cap = kDefaultDiscriminantCap) {
    if (-k.D > cap) throw CapExceeded("|D| = " + std::to_string(-k.D) + " exceeds cap " + std::to_string(cap));
    std::vector<Form> forms;
    const Int D = k.D;
    for (Int a = 1; 3 * a * a <= -D; ++a) {
      for (Int b = -a + 1; b <= a; ++b) {
        if (mod(b - D, 2) != 0) continue;
        const Int num = b * b - D;
        if (num % (4 * a) != 0) continue;
        const Int c = num / (4 * a);
        if (c < a) continue;
        if (c == a && b < 0) continue;
        if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
        forms.push_back({a, b, c});
      }
    }
    return ClassGroup(k, std::move(forms));
  }

  /// Rebuilds a class group from a known element list (for example a cache
  /// file); each form is checked to be reduced of discriminant D.
  static ClassGroup from_forms(const Field& k, std::vector<Form> forms) {
    for (const auto& f : forms) {
      if (f.discriminant() != k.D || !f.is_reduced())
        throw InvalidInput("class group: " + to_string(f) + " is not a reduced form of discriminant " + std::to_string(k.D));
    }
    return ClassGroup(k, std::move(forms));
  }

  const Field& field() const { return field_; }
  Int discriminant() const { return field_.D; }
  const std::vector<Form>& elements() const& { return elements_; }
  std::vector<Form> elements() && { return std::move(elements_); }
  Int h() const { return static_cast<Int>(elements_.size()); }
  const std::vector<Int>& invariants() const& { return invariants_; }
  std::vector<Int> invariants() && { return std::move(invariants_); }
  const std::vector<Form>& generators() const& { return generators_; }
  std::vector<Form> generators() && { return std::move(generators_); }
  Form identity() const { return principal_form(field_.D); }

  bool contains(const Form& f) const {
    return f.discriminant() == field_.D && std::binary_search(elements_.begin(), elements_.end(), reduce(f));
  }

  /// Order of f, by stripping prime factors of h.
  Int order(const Form& f) const {
    Int ord = h();
    for (Int p : h_primes_) {
      while (ord % p == 0 && power(f, ord / p) == identity()) ord /= p;
    }
    return ord;
  }

  ClassSubgroup as_subgroup() const { return {field_.D, elements_, generators_}; }

 private:
  ClassGroup(const Field& k, std::vector<Form> forms) : field_(k), elements_(std::move(forms)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty() || elements_.front() != identity())
      throw InvalidInput("class group: principal form missing");
    if (h() > 1) h_primes_ = prime_divisors(h());
    compute_structure();
  }

  void compute_structure() {
    std::vector<std::pair<Int, Form>> by_order;
    by_order.reserve(elements_.size());
    for (const auto& f : elements_) by_order.emplace_back(order(f), f);

    // For each p | h, N_k = #{x : x^(p^k) = 1} = p^(sum_i min(e_i, k)) fixes the
    // exponents e_i of the p-primary cyclic factors.
    std::vector<Int> factors_desc;
    for (Int p : h_primes_) {
      std::vector<Int> count_at;  // count_at[k] = N_k
      for (Int k = 0;; ++k) {
        Int pk = ipow(p, static_cast<unsigned>(k));
        Int cnt = 0;
        for (const auto& [ord, f] : by_order) {
          Int v = ord;
          while (v % p == 0) v /= p;
          if ((ord / v) <= pk) ++cnt;
        }
        count_at.push_back(cnt);
        if (k > 0 && cnt == count_at[k - 1]) break;
      }
      std::vector<Int> rank_at;  // rank_at[k-1] = #{i : e_i >= k}
      for (std::size_t k = 1; k < count_at.size(); ++k) {
        Int ratio = count_at[k] / count_at[k - 1];
        Int r = 0;
        while (ratio > 1) {
          ratio /= p;
          ++r;
        }
        if (r > 0) rank_at.push_back(r);
      }
      const Int rank = rank_at.empty() ? 0 : rank_at.front();
      for (Int j = 1; j <= rank; ++j) {
        Int e = 0;
        for (Int r : rank_at)
          if (r >= j) ++e;
        if (factors_desc.size() < static_cast<std::size_t>(j)) factors_desc.resize(static_cast<std::size_t>(j), 1);
        factors_desc[static_cast<std::size_t>(j - 1)] *= ipow(p, static_cast<unsigned>(e));
      }
    }
    invariants_.assign(factors_desc.rbegin(), factors_desc.rend());

    // Greedy generators: largest orders first, skipping what is already covered.
    std::stable_sort(by_order.begin(), by_order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<Form> candidates;
    for (const auto& [ord, f] : by_order)
      if (ord > 1) candidates.push_back(f);
    ClassSubgroup acc = subgroup_generated(field_.D, {});
    for (const auto& f : candidates) {
      if (acc.size() == h()) break;
      if (acc.contains(f)) continue;
      generators_.push_back(f);
      acc = subgroup_generated(field_.D, generators_);
    }
  }

  Field field_;
  std::vector<Form> elements_;
  std::vector<Int> h_primes_;
  std::vector<Int> invariants_;
  std::vector<Form> generators_;
};

inline ClassSubgroup subgroup_generated(const ClassGroup& group, const std::vector<Form>& classes) {
  for (const auto& f : classes) {
    if (!group.contains(f)) throw InvalidInput("subgroup_generated: " + to_string(f) + " is not in the class group");
  }
  return subgroup_generated(group.discriminant(), classes);
}

}  // namespace steinitz
