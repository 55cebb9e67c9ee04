#include <doctest.h>

#include "oracles.hpp"
#include "tiltlab/error.hpp"
#include "tiltlab/torsion.hpp"

using namespace tiltlab;
using namespace tiltlab::testing;

namespace {

FgAbGroup G(const char* s) { return FgAbGroup::parse(s); }

// n -> #{x in torsion(m) : n x = 0 and the order of x only involves Q}.
// Determines a finite abelian group up to isomorphism.
std::map<long, long> q_killed_counts(const PrimeSet& q, const FgAbGroup& m, long max_n) {
  FgAbGroup tors(0, m.torsion());
  std::map<long, long> out;
  auto elems = enumerate_elements(tors);
  for (long n = 1; n <= max_n; ++n) {
    long count = 0;
    for (const auto& x : elems) {
      // order of x
      Integer ord = 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        Integer oi = tors.torsion()[i] / gcd(tors.torsion()[i], x[i]);
        ord = lcm(ord, oi);
      }
      if (q.part_of(ord) != ord) continue;
      if (Integer(n) % ord == 0) ++count;
    }
    out[n] = count;
  }
  return out;
}

}  // namespace

TEST_CASE("prime sets") {
  CHECK(PrimeSet::parse("3,2,3").primes() == std::vector<unsigned long>{2, 3});
  CHECK(PrimeSet::parse("").empty());
  CHECK(PrimeSet::parse("{2, 5}").to_string() == "{2,5}");
  CHECK_THROWS_AS(PrimeSet({4}), ValidationError);
  CHECK_THROWS_AS(PrimeSet::parse("2;3"), ParseError);
  CHECK(PrimeSet({2, 3}).part_of(Integer(360)) == 72);
}

TEST_CASE("class membership") {
  PrimeSet q({2});
  CHECK(in_torsion_class(q, G("Z/4 + Z/8")));
  CHECK(!in_torsion_class(q, G("Z/6")));
  CHECK(!in_torsion_class(q, G("Z")));
  CHECK(in_torsion_class(q, G("0")));
  CHECK(in_torsionfree_class(q, G("Z^2 + Z/9")));
  CHECK(!in_torsionfree_class(q, G("Z/6")));
  CHECK(in_torsion_class(PrimeSet(), G("0")));
  CHECK(!in_torsion_class(PrimeSet(), G("Z/3")));
}

TEST_CASE("torsion part examples") {
  CHECK(torsion_part(PrimeSet({2}), G("Z + Z/12")).t == G("Z/4"));
  CHECK(torsion_part(PrimeSet(), G("Z + Z/12 + Z/36")).t.is_zero());
  CHECK(torsion_part(PrimeSet({2, 3}), G("Z/12")).t == G("Z/12"));
  auto tp = torsion_part(PrimeSet({2}), G("Z + Z/12"));
  CHECK(is_injective(tp.incl));
}

TEST_CASE("canonical sequence examples") {
  auto s = canonical_ses(PrimeSet({2}), G("Z + Z/12"));
  CHECK(s.t == G("Z/4"));
  CHECK(s.f == G("Z + Z/3"));
  auto e = canonical_ses(PrimeSet(), G("Z + Z/12"));
  CHECK(e.t.is_zero());
  CHECK(e.f == G("Z + Z/12"));
  auto full = canonical_ses(PrimeSet({2, 3}), G("Z^2 + Z/6 + Z/12"));
  CHECK(full.t == G("Z/6 + Z/12"));
  CHECK(full.f == G("Z^2"));
}

TEST_CASE("torsion part agrees with element counting") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    FgAbGroup m = random_group(rng, 2, 30);
    std::vector<unsigned long> ps;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
      if (uniform(rng, 0, 1)) ps.push_back(p);
    PrimeSet q(ps);
    if (FgAbGroup(0, m.torsion()).order() > 5000) continue;
    FgAbGroup t = torsion_part(q, m).t;
    CHECK(q_killed_counts(q, m, 60) == q_killed_counts(q, t, 60));
  }
}

TEST_CASE("canonical sequence is exact with the right classes") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    FgAbGroup m = random_group(rng, 2, 100);
    PrimeSet q({2, 5});
    auto s = canonical_ses(q, m);
    CHECK(in_torsion_class(q, s.t));
    CHECK(in_torsionfree_class(q, s.f));
    CHECK(is_injective(s.incl));
    CHECK(is_surjective(s.proj));
    CHECK(compose(s.proj, s.incl).is_zero());
    CHECK(hom_kernel_cokernel_image(s.proj).kernel.group == s.t);
    // idempotence
    CHECK(torsion_part(q, s.t).t == s.t);
    CHECK(torsion_part(q, s.f).t.is_zero());
  }
}

TEST_CASE("orthogonality and functoriality") {
  Rng rng(5);
  PrimeSet q({2, 3});
  for (int trial = 0; trial < 100; ++trial) {
    FgAbGroup x = torsion_part(q, random_group(rng, 0, 72)).t;
    FgAbGroup y = canonical_ses(q, random_group(rng, 2, 72)).f;
    CHECK(hom_group(x, y).group().is_zero());
    CHECK(ext_group(y, x).group().is_zero());

    FgAbGroup m = random_group(rng, 2, 72), m2 = random_group(rng, 2, 72);
    GroupHom h = random_hom(rng, m, m2);
    GroupHom r = restrict_to_torsion_parts(q, h);
    auto src = torsion_part(q, m), dst = torsion_part(q, m2);
    CHECK(compose(dst.incl, r) == compose(h, src.incl));
  }
}

TEST_CASE("split verification") {
  PrimeSet q({2});
  std::vector<FgAbGroup> pool{G("Z"), G("Z/3"), G("Z/4"), G("Z + Z/12")};
  std::vector<std::pair<FgAbGroup, FgAbGroup>> pairs;
  for (auto& a : pool)
    for (auto& b : pool) pairs.emplace_back(a, b);
  SplitReport r = is_split(q, pairs);
  CHECK(r.split);
  CHECK(r.certificates.size() == 16);
  for (auto& c : r.certificates) CHECK(c.ext.is_zero());

  CHECK(is_split(PrimeSet(), pairs).split);
}

TEST_CASE("split verification on random pairs matches gcd coprimality") {
  Rng rng(200);
  std::vector<std::pair<FgAbGroup, FgAbGroup>> pairs;
  for (int i = 0; i < 200; ++i) pairs.emplace_back(random_group(rng, 2, 100), random_group(rng, 2, 100));
  PrimeSet q({2, 3, 7});
  SplitReport r = is_split(q, pairs);
  CHECK(r.split);
  for (auto& c : r.certificates) {
    // oracle: Ext(Z/a, Z/b) has order gcd(a, b), and a is Q-free while b is
    // a Q-number
    Integer order = 1;
    for (auto& a : c.f_part.torsion())
      for (auto& b : c.t_part.torsion()) order *= gcd(a, b);
    CHECK(order == 1);
    CHECK(c.ext.order() == order);
  }
}

TEST_CASE("cotilting") {
  CHECK(is_cotilting(PrimeSet({2})).cotilting);
  CHECK(is_cotilting(PrimeSet({2})).witness == "Z lies in Y_{2}");
  CHECK(is_cotilting(PrimeSet()).cotilting);
  CHECK(is_cotilting(PrimeSet({2, 3, 5, 7, 11, 13})).cotilting);
}
