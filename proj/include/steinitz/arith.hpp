#pragma once

// Exact integer and modular arithmetic: Kronecker symbol, deterministic
// primality below 2^64, modular square roots and filtered prime streams.
//
// Integers are 64-bit with 128-bit intermediates. Any operation whose result
// would not fit throws steinitz::Overflow instead of wrapping.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "steinitz/errors.hpp"

namespace steinitz {

using Int = std::int64_t;
using Wide = __int128;

inline Int checked_narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw Overflow("integer result does not fit in 64 bits");
  return static_cast<Int>(v);
}

inline Int checked_mul(Int a, Int b) { return checked_narrow(Wide(a) * b); }
inline Int checked_add(Int a, Int b) { return checked_narrow(Wide(a) + b); }

// Non-negative residue of a modulo m (m > 0).
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int mulmod(Int a, Int b, Int m) {
  return static_cast<Int>((Wide(mod(a, m)) * mod(b, m)) % m);
}

inline Int powmod(Int base, std::uint64_t e, Int m) {
  if (m == 1) return 0;
  Int result = 1;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return result;
}

// Exact power, throwing on overflow.
inline Int ipow(Int base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// Inverse of a modulo m, if gcd(a, m) = 1.
inline std::optional<Int> invmod(Int a, Int m) {
  Int r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) return std::nullopt;
  return mod(s0, m);
}

// Distinct prime divisors of |n| (n != 0), ascending. Trial division.
inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  std::uint64_t u = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (std::uint64_t q = 2; q * q <= u; ++q) {
    if (u % q == 0) {
      out.push_back(static_cast<Int>(q));
      while (u % q == 0) u /= q;
    }
  }
  if (u > 1) out.push_back(static_cast<Int>(u));
  return out;
}

inline std::vector<Int> divisors(Int n) {
  std::vector<Int> out;
  for (Int q = 1; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      if (q != n / q) out.push_back(n / q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_squarefree(Int n) {
  if (n == 0) return false;
  std::uint64_t u = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (std::uint64_t q = 2; q * q <= u; ++q) {
    if (u % (q * q) == 0) return false;
    if (u % q == 0) u /= q;
  }
  return true;
}

/// Kronecker symbol (a|n). Completely multiplicative in both arguments;
/// (a|-1) is -1 for negative a and +1 otherwise. Throws UndefinedInput for n = 0.
inline int kronecker(Int a, Int n) {
  if (n == 0) throw UndefinedInput("kronecker symbol undefined for n = 0");
  int result = 1;
  if (n < 0) {
    if (a < 0) result = -result;
    if (n == std::numeric_limits<Int>::min()) throw Overflow("kronecker: n out of range");
    n = -n;
  }
  // Strip factors of two from n using (a|2).
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    Int r8 = mod(a, 8);
    int two = (r8 == 1 || r8 == 7) ? 1 : -1;
    while (n % 2 == 0) {
      n /= 2;
      result *= two;
    }
  }
  // n is now odd and positive: Jacobi symbol.
  Int x = mod(a, n);
  Int y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      Int r8 = y % 8;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

namespace detail {

inline std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod_u(r, b, m);
    b = mulmod_u(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are a proven
/// witness set for every n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = detail::powmod_u(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod_u(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_prime(Int n) {
  if (n < 0) throw PreconditionViolation("is_prime: n must be non-negative");
  return is_prime(static_cast<std::uint64_t>(n));
}

inline bool is_prime(int n) { return is_prime(static_cast<Int>(n)); }

// A square root of a modulo an odd prime p (Tonelli-Shanks), or nullopt.
inline std::optional<Int> sqrt_mod_prime(Int a, Int p) {
  a = mod(a, p);
  if (a == 0) return Int{0};
  if (p == 2) return a;
  if (powmod(a, static_cast<std::uint64_t>((p - 1) / 2), p) != 1) return std::nullopt;
  Int q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (powmod(z, static_cast<std::uint64_t>((p - 1) / 2), p) != p - 1) ++z;
  Int m = s;
  Int c = powmod(z, static_cast<std::uint64_t>(q), p);
  Int t = powmod(a, static_cast<std::uint64_t>(q), p);
  Int r = powmod(a, static_cast<std::uint64_t>((q + 1) / 2), p);
  while (t != 1) {
    Int i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

/// Evaluates x^n == y^n (mod m*n) under the hypotheses x == y (mod m) and
/// rad(n) | m. Those hypotheses are checked; the lifted congruence itself is
/// computed, not assumed.
inline bool lifted_power_congruence(Int x, Int y, Int m, Int n) {
  if (m <= 0 || n <= 0) throw PreconditionViolation("lifted_power_congruence: m and n must be positive");
  if (mod(checked_add(x, -y), m) != 0)
    throw PreconditionViolation("lifted_power_congruence: x and y are not congruent modulo m");
  for (Int q : prime_divisors(n)) {
    if (m % q != 0)
      throw PreconditionViolation("lifted_power_congruence: prime " + std::to_string(q) + " of n does not divide m");
  }
  Int mn = checked_mul(m, n);
  auto e = static_cast<std::uint64_t>(n);
  return powmod(x, e, mn) == powmod(y, e, mn);
}

/// Filter for prime sampling: primes p in [lower, upper] with p coprime to
/// modulus * discriminant, p mod modulus in residues and (D|p) = +1.
/// A zero discriminant disables the splitting filter.
struct PrimeStream {
  Int modulus = 1;
  std::set<Int> residues{1};
  Int discriminant = 0;
  Int lower = 2;
  Int upper = 2;
};

// All primes in [lo, hi], ascending. Segmented sieve.
inline std::vector<Int> primes_in_window(Int lo, Int hi) {
  std::vector<Int> out;
  lo = std::max<Int>(lo, 2);
  if (hi < lo) return out;
  auto root = static_cast<Int>(std::sqrt(static_cast<double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  std::vector<char> small(static_cast<std::size_t>(root + 1), 1);
  std::vector<Int> base;
  for (Int i = 2; i <= root; ++i) {
    if (!small[static_cast<std::size_t>(i)]) continue;
    base.push_back(i);
    for (Int j = i * i; j <= root; j += i) small[static_cast<std::size_t>(j)] = 0;
  }
  std::vector<char> seg(static_cast<std::size_t>(hi - lo + 1), 1);
  for (Int p : base) {
    Int start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (Int j = start; j <= hi; j += p) seg[static_cast<std::size_t>(j - lo)] = 0;
  }
  for (Int i = lo; i <= hi; ++i) {
    if (seg[static_cast<std::size_t>(i - lo)]) out.push_back(i);
  }
  return out;
}

inline std::vector<Int> prime_stream(const PrimeStream& cfg) {
  if (cfg.modulus < 1) throw PreconditionViolation("prime_stream: modulus must be >= 1");
  if (cfg.residues.empty()) throw PreconditionViolation("prime_stream: residue set is empty");
  std::set<Int> wanted;
  for (Int r : cfg.residues) wanted.insert(mod(r, cfg.modulus));
  std::vector<Int> out;
  for (Int p : primes_in_window(cfg.lower, cfg.upper)) {
    if (cfg.modulus % p == 0) continue;
    if (cfg.discriminant != 0 && cfg.discriminant % p == 0) continue;
    if (!wanted.contains(p % cfg.modulus)) continue;
    if (cfg.discriminant != 0 && kronecker(cfg.discriminant, p) != 1) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace steinitz
