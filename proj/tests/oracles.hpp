#pragma once

// Slow reference implementations used only by the tests. None of these call
// into the library: they use trial division, Euler's criterion, direct
// representation search and the analytic class number formula.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using I = std::int64_t;
using W = __int128;

inline I md(I a, I m) {
  I r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(I n) {
  if (n < 2) return false;
  for (I q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

inline std::vector<I> factor(I n) {
  std::vector<I> out;
  for (I q = 2; q * q <= n; ++q)
    while (n % q == 0) {
      out.push_back(q);
      n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline I pow_mod(I b, I e, I m) {
  W r = 1 % m, x = md(b, m);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<I>(r);
}

// Legendre symbol by Euler's criterion, extended multiplicatively; n != 0.
inline int kronecker(I a, I n) {
  int s = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) s = -s;
  }
  for (I p : factor(n)) {
    if (p == 2) {
      if (a % 2 == 0) return 0;
      I r = md(a, 8);
      if (r == 3 || r == 5) s = -s;
    } else {
      I v = pow_mod(a, (p - 1) / 2, p);
      if (v == 0) return 0;
      if (v != 1) s = -s;
    }
  }
  return s;
}

inline I fundamental_discriminant(I d) { return md(d, 4) == 1 ? d : 4 * d; }

inline bool squarefree(I n) {
  if (n < 0) n = -n;
  for (I q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return n != 0;
}

// h(D) = -(w / 2|D|) * sum_{r=1}^{|D|} (D|r) r.
inline I class_number_analytic(I D) {
  const I w = D == -3 ? 6 : D == -4 ? 4 : 2;
  W sum = 0;
  for (I r = 1; r < -D; ++r) sum += W(kronecker(D, r)) * r;
  return static_cast<I>(-(W(w) * sum) / (2 * -D));
}

struct Form {
  I a, b, c;
  auto operator<=>(const Form&) const = default;
};

inline Form reduce(Form f) {
  const W D = W(f.b) * f.b - W(4) * f.a * f.c;
  while (true) {
    // b into (-a, a]
    W a = f.a, b = f.b;
    W k = (a - b) / (2 * a);
    if ((a - b) % (2 * a) < 0) --k;
    b += 2 * a * k;
    f.b = static_cast<I>(b);
    f.c = static_cast<I>((b * b - D) / (4 * a));
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

inline std::vector<Form> reduced_forms(I D) {
  std::vector<Form> out;
  const I amax = static_cast<I>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
  for (I a = 1; a <= amax; ++a)
    for (I b = -a; b <= a; ++b)
      for (I c = a; c <= (b * b - D) / (4 * a) + 1; ++c) {
        if (b * b - 4 * a * c != D) continue;
        if (std::abs(b) > a || a > c) continue;
        if ((std::abs(b) == a || a == c) && b < 0) continue;
        I g = std::gcd(std::gcd(a, std::abs(b)), c);
        if (g == 1) out.push_back({a, b, c});
      }
  return out;
}

inline I eval(const Form& f, I x, I y) { return f.a * x * x + f.b * x * y + f.c * y * y; }

// Whether f represents n primitively; brute force over the ellipse f <= n.
inline bool represents(const Form& f, I n) {
  const I D = f.b * f.b - 4 * f.a * f.c;
  const I ymax = static_cast<I>(std::sqrt(4.0 * static_cast<double>(f.a) * n / static_cast<double>(-D))) + 1;
  for (I y = -ymax; y <= ymax; ++y) {
    const I xmax = static_cast<I>(std::sqrt(4.0 * static_cast<double>(f.c) * n / static_cast<double>(-D))) + 1;
    for (I x = -xmax; x <= xmax; ++x)
      if (std::gcd(x, y) == 1 && eval(f, x, y) == n) return true;
  }
  return false;
}

// Composition through Dirichlet's united forms. f2 is first moved to an
// equivalent form whose leading coefficient is coprime to a1, then B is found
// by exhaustive search modulo 2 a1 a2.
inline Form compose(const Form& f1, const Form& f2) {
  const I D = f1.b * f1.b - 4 * f1.a * f1.c;
  Form g = f2;
  bool moved = std::gcd(f1.a, g.a) == 1;
  for (I x = 0; x <= 40 && !moved; ++x)
    for (I y = -40; y <= 40 && !moved; ++y) {
      if (std::gcd(x, y) != 1) continue;
      const I n = eval(f2, x, y);
      if (std::gcd(n, f1.a) != 1) continue;
      // complete (x, y) to a matrix [[x, u], [y, v]] of determinant 1
      I u = 0, v = 0;
      for (I s = -60; s <= 60 && !(x * v - y * u == 1); ++s)
        for (I t = -60; t <= 60; ++t)
          if (x * t - y * s == 1) {
            u = s;
            v = t;
            break;
          }
      if (x * v - y * u != 1) continue;
      g = {n, 2 * f2.a * x * u + f2.b * (x * v + y * u) + 2 * f2.c * y * v, eval(f2, u, v)};
      moved = true;
    }
  const I A = f1.a * g.a;
  for (I B = 0; B < 2 * A; ++B) {
    if (md(B - f1.b, 2 * f1.a) != 0 || md(B - g.b, 2 * g.a) != 0) continue;
    if (md(B * B - D, 4 * A) != 0) continue;
    return reduce({A, B, (B * B - D) / (4 * A)});
  }
  return {0, 0, 0};
}

inline Form identity(I D) { return reduce({1, md(D, 2), (md(D, 2) - D) / 4}); }

inline Form power(Form f, I e) {
  const I D = f.b * f.b - 4 * f.a * f.c;
  Form acc = identity(D);
  for (I i = 0; i < e; ++i) acc = compose(acc, f);
  return acc;
}

// Split primes in [lo, hi] with p = 1 mod M, by trial division.
inline std::vector<I> split_primes(I D, I M, I lo, I hi) {
  std::vector<I> out;
  for (I p = std::max<I>(lo, 2); p <= hi; ++p)
    if (is_prime(p) && md(p, M) == 1 % M && md(D, p) != 0 && kronecker(D, p) == 1) out.push_back(p);
  return out;
}

// The classes {f, f^-1} representing p, as reduced forms.
inline std::vector<Form> classes_representing(I D, I p) {
  std::vector<Form> out;
  for (const auto& f : reduced_forms(D))
    if (represents(f, p)) out.push_back(f);
  return out;
}

// Closure of a set of classes under composition.
inline std::set<Form> closure(I D, const std::vector<Form>& gens) {
  std::set<Form> s{identity(D)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Form> cur(s.begin(), s.end());
    for (const auto& x : cur)
      for (const auto& g : gens)
        if (s.insert(compose(x, g)).second) grew = true;
  }
  return s;
}

}  // namespace oracle
