#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/verify.hpp"
#include "steinitz/wgroups.hpp"

using namespace steinitz;

namespace {

const FieldContext& context(Int d) {
  static FieldPool pool;
  return pool.get(d);
}

// Classes represented by split primes p = 1 mod m below the bound. A class and
// its inverse represent the same primes, so the closure is the W subgroup.
std::set<oracle::Form> w_oracle(Int D, Int m, Int bound) {
  std::vector<oracle::Form> gens;
  for (Int p : oracle::split_primes(D, m, 2, bound))
    for (const auto& f : oracle::classes_representing(D, p)) gens.push_back(f);
  return oracle::closure(D, gens);
}

}  // namespace

TEST(WGroup, Examples) {
  const auto& w47 = context(-47).w(3);
  EXPECT_EQ(w47.result.size(), 5);
  EXPECT_EQ(w47.certificate.kind, CertificateKind::IndexForced);
  EXPECT_EQ(w47.extension_degree, 2);

  const auto& w23 = context(-23).w(3);
  EXPECT_EQ(w23.result.size(), 3);
  EXPECT_EQ(w23.certificate.kind, CertificateKind::IndexForced);
  EXPECT_EQ(prime_to_class(Field::from_d(-23), 13).second, (Form{2, -1, 3}));
  EXPECT_EQ(13 % 3, 1);

  for (Int d : {-23, -47, -71, -5, -163, -65}) {
    EXPECT_EQ(context(d).w(1).result, context(d).class_group().as_subgroup()) << d;
  }
  EXPECT_THROW(context(-23).w(0), PreconditionViolation);
}

// k = Q(sqrt(-5)): k(i) is the Hilbert class field and sqrt(5) lies in
// Q(zeta_5), so W(k, 4) and W(k, 5) are trivial while W(k, 3) is all of Cl.
TEST(WGroup, NontrivialIndex) {
  const auto& ctx = context(-5);
  EXPECT_TRUE(ctx.w(4).result.is_trivial());
  EXPECT_TRUE(ctx.w(5).result.is_trivial());
  EXPECT_EQ(ctx.w(3).result.size(), 2);
  EXPECT_EQ(ctx.w(4).certificate.kind, CertificateKind::Stabilized);
  EXPECT_GE(ctx.w(4).certificate.prime_count, ctx.policy().min_primes);
  EXPECT_GT(ctx.w(4).certificate.bound, ctx.policy().first_bound);
}

TEST(WGroup, MatchesRepresentationOracle) {
  for (Int d : {-23, -47, -5, -65, -14, -21}) {
    const auto& ctx = context(d);
    const Int D = ctx.field().D;
    for (Int m = 1; m <= 12; ++m) {
      const auto& w = ctx.w(m);
      const auto want = w_oracle(D, m, 20'000);
      ASSERT_EQ(w.result.size(), static_cast<Int>(want.size())) << "d=" << d << " m=" << m;
      for (const auto& f : want) ASSERT_TRUE(w.result.contains({f.a, f.b, f.c}));
    }
  }
}

TEST(WGroup, IndexDividesDegree) {
  for (Int d : {-23, -47, -71, -5, -65, -105, -14}) {
    const auto& ctx = context(d);
    for (Int m = 1; m <= 30; ++m) {
      const auto& w = ctx.w(m);
      const Int index = ctx.class_group().h() / w.result.size();
      ASSERT_EQ(ctx.class_group().h() % w.result.size(), 0);
      ASSERT_EQ(w.extension_degree % index, 0) << "d=" << d << " m=" << m;
      if (w.exact()) {
        ASSERT_EQ(std::gcd(ctx.class_group().h(), w.extension_degree), 1);
      }
      if (!w.exact()) {
        ASSERT_GE(w.certificate.prime_count, ctx.policy().min_primes);
        ASSERT_EQ(w.sampled_primes, w.certificate.prime_count);
      }
    }
  }
}

TEST(WGroup, DescriptorForms) {
  const auto& ctx = context(-47);
  const auto spec = GroupSpec::semidirect(3, 2);
  const auto desc = e_descriptor(ctx.field(), spec, tau());
  EXPECT_EQ(w_group_of_descriptor(ctx, desc).result, ctx.w(3).result);
  const auto full = galois_group(ctx.field(), 9);
  EXPECT_EQ(w_group_of_descriptor(ctx, fixed_field(ctx.field(), full)).result, ctx.class_group().as_subgroup());
  for (Int d : {-5, -65, -23}) {
    const auto& c = context(d);
    for (Int j : {1, 2, 3, 4, 5, 6}) {
      const Int M = 2 * j;
      std::set<Int> kernel;
      for (Int g : galois_group(c.field(), M).elements())
        if ((g - 1) % j == 0) kernel.insert(g);
      const auto sub = fixed_field(c.field(), ResidueSubgroup(M, kernel));
      EXPECT_EQ(w_group_of_descriptor(c, sub).result, c.w(*sub.cyclotomic_level).result) << d << " " << j;
    }
  }
  EXPECT_THROW(w_group_of_descriptor(ctx, fixed_field(ctx.field(), ResidueSubgroup(9, {1, 2}))), InvalidInput);
}

TEST(WGroup, ExponentAndContainment) {
  EXPECT_TRUE(wexp_check(context(-47), 3, 3));
  EXPECT_TRUE(wexp_check(context(-23), 3, 3));
  EXPECT_TRUE(subgroup_power(context(-23).w(3).result, 3).is_trivial());
  EXPECT_THROW(wexp_check(context(-23), 3, 2), PreconditionViolation);
  EXPECT_TRUE(anti_containment_check(context(-47), 3, 9));
  EXPECT_TRUE(anti_containment_check(context(-5), 2, 4));
  EXPECT_THROW(anti_containment_check(context(-5), 2, 5), PreconditionViolation);
  for (Int d : {-23, -47, -71, -5, -163, -65}) {
    for (auto [m, n] : wexp_grid(27)) ASSERT_TRUE(wexp_check(context(d), m, n)) << d << " " << m << " " << n;
    for (Int m = 1; m <= 27; ++m) {
      ASSERT_TRUE(anti_containment_check(context(d), m, m));
      ASSERT_TRUE(anti_containment_check(context(d), 1, m));
    }
  }
}

TEST(WGroup, PowerOfTwistedFixedField) {
  EXPECT_TRUE(troppo_check(context(-47), 3, 2, 1));
  EXPECT_TRUE(troppo_check(context(-23), 3, 3, 1));
  EXPECT_TRUE(troppo_check(context(-163), 3, 3, 2));
  EXPECT_THROW(troppo_check(context(-23), 3, 2, 2), PreconditionViolation);
  for (Int d : {-5, -65, -71})
    for (auto [l, n] : std::vector<std::pair<Int, Int>>{{3, 2}, {3, 3}, {5, 2}, {5, 3}})
      for (Int c = 1; c < n; ++c) ASSERT_TRUE(troppo_check(context(d), l, n, c));
}

TEST(WGroup, SamplingExhaustionIsReported) {
  // -5 has W(k, 4) trivial with index 2: a tiny hard cap cannot stabilize.
  SamplingPolicy tight;
  tight.first_bound = 100;
  tight.hard_cap = 1000;
  tight.min_primes = 1000;
  FieldContext ctx(Field::from_d(-5), kDefaultDiscriminantCap, tight);
  EXPECT_THROW(ctx.w(4), SamplingExhausted);
}
