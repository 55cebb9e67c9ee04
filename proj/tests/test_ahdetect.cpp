#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tiltlab/ahdetect.hpp"
#include "tiltlab/error.hpp"

using namespace tiltlab;
using namespace tiltlab::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HomQuiver example_fixture() { return HomQuiver::from_json(read_file(TILTLAB_FIXTURE_DIR "/example73-bound4.fixture")); }

std::vector<std::vector<bool>> rel(const std::vector<std::string>& rows) {
  std::vector<std::vector<bool>> r;
  for (const auto& s : rows) {
    std::vector<bool> row;
    for (char c : s) row.push_back(c == '1');
    r.push_back(row);
  }
  return r;
}

// S -> a -> b, pd(S) = 2 with injdim 2 as well.
HomQuiver chain_fixture() {
  return HomQuiver({{"S", 2, 2, false}, {"a", 1, 1, false}, {"b", 0, 2, true}}, rel({"110", "011", "001"}),
                   rel({"000", "000", "000"}));
}

HomQuiver hereditary_fixture() {
  return HomQuiver({{"P", 0, 1, true}, {"Q", 1, 0, false}}, rel({"11", "01"}), rel({"00", "10"}));
}

VertexSet names(const HomQuiver& q, std::initializer_list<const char*> ns) {
  VertexSet s;
  for (const char* n : ns) s.insert(*q.index_of(n));
  return s;
}

VertexSet complement(const HomQuiver& q, const VertexSet& s) {
  VertexSet out;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!s.count(i)) out.insert(i);
  return out;
}

HomQuiver random_quiver(Rng& rng, std::size_t n, int density) {
  std::vector<QuiverVertex> vs;
  std::vector<std::vector<bool>> hom(n, std::vector<bool>(n)), ext(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    bool r = i == 0 || uniform(rng, 0, 3) == 0;
    vs.push_back({"v" + std::to_string(i), r ? 0 : static_cast<int>(uniform(rng, 0, 2)),
                  static_cast<int>(uniform(rng, 0, 2)), r});
    for (std::size_t j = 0; j < n; ++j) {
      hom[i][j] = i == j || uniform(rng, 0, 99) < density;
      ext[i][j] = uniform(rng, 0, 99) < density / 2;
    }
  }
  return HomQuiver(vs, hom, ext);
}

// Transitive closure from C_0 by breadth-first search.
VertexSet closure_oracle(const HomQuiver& q) {
  VertexSet seen;
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.vertex(i).pd == 2) seen.insert(i), todo.push_back(i);
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w = 0; w < q.size(); ++w)
      if (q.hom(v, w) && seen.insert(w).second) todo.push_back(w);
  }
  return seen;
}

// All subsets X, tested pair by pair.
std::vector<TorsionPairOnQuiver> split_pairs_oracle(const HomQuiver& q) {
  std::vector<TorsionPairOnQuiver> out;
  for (unsigned long mask = 0; mask < (1ul << q.size()); ++mask) {
    TorsionPairOnQuiver tp;
    for (std::size_t i = 0; i < q.size(); ++i) (mask >> i & 1 ? tp.x : tp.y).insert(i);
    bool ok = true;
    for (std::size_t x : tp.x)
      for (std::size_t y : tp.y) ok = ok && !q.hom(x, y) && !q.ext1(y, x);
    for (std::size_t y : tp.y) ok = ok && q.vertex(y).pd <= 1;
    if (ok) out.push_back(tp);
  }
  return out;
}

}  // namespace

TEST_CASE("fixture parsing and validation") {
  HomQuiver q = example_fixture();
  CHECK(q.size() == 10);
  CHECK(q.bound() == 4);
  CHECK(HomQuiver::from_json(q.to_json()) == q);

  std::string good = q.to_json();
  CHECK_THROWS_AS(HomQuiver::from_json("{\"schema\": "), ParseError);
  CHECK_THROWS_AS(HomQuiver::from_json("[]"), ValidationError);
  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
  };
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("homquiver/1", "homquiver/2")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"1000000000\"", "\"0000000000\"")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"1000000000\"", "\"100000000\"")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"1000000000\"", "\"100000000x\"")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"pd\": 2", "\"pd\": 3")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"name\": \"E4\"", "\"name\": \"E3\"")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"r_summand\": true", "\"r_summand\": 1")), ValidationError);
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"bound\"", "\"bounds\"")), ValidationError);
  // fR with pd 1 breaks "r_summand implies projective".
  CHECK_THROWS_AS(HomQuiver::from_json(mutate("\"name\": \"fR\", \"pd\": 0", "\"name\": \"fR\", \"pd\": 1")),
                  ValidationError);
  CHECK_THROWS_AS(HomQuiver({{"a", 1, 1, false}}, rel({"1"}), rel({"0"})), ValidationError);
}

TEST_CASE("C levels") {
  HomQuiver q = example_fixture();
  CLevels c = c_levels(q);
  REQUIRE(c.levels.size() == 2);
  CHECK(c.levels[0] == names(q, {"S"}));
  CHECK(c.levels[1] == names(q, {"S"}));
  CHECK(c.closure == names(q, {"S"}));
  CHECK(verify_c_equals_c1(q).passed);

  HomQuiver h = hereditary_fixture();
  CHECK(c_levels(h).closure.empty());
  CHECK(verify_c_equals_c1(h).passed);

  HomQuiver ch = chain_fixture();
  CLevels cc = c_levels(ch);
  CHECK(cc.closure == ch.all());
  REQUIRE(cc.levels.size() == 4);
  CHECK(cc.levels[1] == names(ch, {"S", "a"}));
  CHECK(cc.levels[2] == ch.all());
  Verdict v = verify_c_equals_c1(ch);
  CHECK(!v.passed);
  CHECK(v.detail.find("C_0 u C_1 = {S, a}") != std::string::npos);
}

TEST_CASE("C closure against breadth-first search") {
  Rng rng(731);
  for (int trial = 0; trial < 200; ++trial) {
    HomQuiver q = random_quiver(rng, 2 + trial % 9, 10 + trial % 30);
    CLevels c = c_levels(q);
    CHECK(c.closure == closure_oracle(q));
    // Monotone levels, stabilizing within |vertices| steps.
    for (std::size_t i = 1; i < c.levels.size(); ++i)
      for (std::size_t v : c.levels[i - 1]) CHECK(c.levels[i].count(v));
    CHECK(c.levels.size() <= q.size() + 1);
    TorsionPairOnQuiver tp = torsion_pair_x0y0(q);
    CHECK(is_orthogonal(q, tp));
  }
}

TEST_CASE("torsion pair and condition (ii)") {
  HomQuiver q = example_fixture();
  TorsionPairOnQuiver tp = torsion_pair_x0y0(q);
  CHECK(tp.x == names(q, {"S"}));
  CHECK(tp.y == complement(q, tp.x));
  ConditionReport r = check_condition_ii(q, tp);
  CHECK(r.passed);
  REQUIRE(r.items.size() == 3);
  CHECK(r.items[2].name == "R in Y");

  HomQuiver h = hereditary_fixture();
  TorsionPairOnQuiver th = torsion_pair_x0y0(h);
  CHECK(th.x.empty());
  CHECK(check_condition_ii(h, th).passed);

  HomQuiver ch = chain_fixture();
  TorsionPairOnQuiver tc = torsion_pair_x0y0(ch);
  CHECK(tc.x == ch.all());
  CHECK(tc.y.empty());
  ConditionReport rc = check_condition_ii(ch, tc);
  CHECK(!rc.passed);
  CHECK(!rc.items[2].passed);
  CHECK(rc.items[2].failures == std::vector<std::string>{"b lies in X"});

  // Pushing eR and everything it maps to into X keeps orthogonality but
  // fails (c).
  VertexSet x = names(q, {"S", "gR", "G2", "G3", "G4", "eR", "E2", "E3", "E4"});
  ConditionReport bad = check_condition_ii(q, {x, complement(q, x)});
  CHECK(bad.items[0].passed);
  CHECK(!bad.items[2].passed);
  CHECK(bad.items[2].failures == std::vector<std::string>{"eR lies in X"});

  // Not a torsion pair at all.
  CHECK_THROWS_AS(check_condition_ii(q, {names(q, {"fR"}), complement(q, names(q, {"fR"}))}), ValidationError);
  CHECK_THROWS_AS(check_condition_ii(q, {names(q, {"S"}), names(q, {"fR"})}), ValidationError);
}

TEST_CASE("condition (iii) and Hom into R") {
  HomQuiver q = example_fixture();
  CHECK(check_condition_iii(q).passed);
  CHECK(hom_to_r_check(q).passed);

  HomQuiver h = hereditary_fixture();
  CHECK(check_condition_iii(h).passed);
  CHECK(hom_to_r_check(h).passed);

  HomQuiver ch = chain_fixture();
  ConditionReport r = check_condition_iii(ch);
  CHECK(!r.passed);
  CHECK(r.items[1].failures == std::vector<std::string>{"S: pd 2, injdim 2"});

  // S -> b with b an R-summand breaks the Hom-vanishing.
  HomQuiver bad = ch.with_hom_edge(0, 2);
  Verdict v = hom_to_r_check(bad);
  CHECK(!v.passed);
  CHECK(v.detail == "Hom(S, b) != 0");
}

TEST_CASE("L and R classes") {
  HomQuiver q = example_fixture();
  LRClasses lr = lr_classes(q);
  CHECK(lr.l == complement(q, names(q, {"S"})));
  CHECK(lr.r == names(q, {"S"}));

  HomQuiver h = HomQuiver({{"P", 0, 1, true}, {"Q", 1, 0, false}}, rel({"11", "01"}), rel({"00", "00"}));
  CHECK(lr_classes(h).l == h.all());
  CHECK(lr_classes(h).r == h.all());

  HomQuiver single({{"v", 0, 2, true}}, rel({"1"}), rel({"0"}));
  CHECK(lr_classes(single).l == single.all());
  CHECK(lr_classes(single).r.empty());
}

TEST_CASE("adding a Hom edge never grows L") {
  Rng rng(4711);
  for (int trial = 0; trial < 100; ++trial) {
    HomQuiver q = random_quiver(rng, 3 + trial % 6, 15);
    LRClasses before = lr_classes(q);
    std::size_t i = uniform(rng, 0, q.size() - 1), j = uniform(rng, 0, q.size() - 1);
    LRClasses after = lr_classes(q.with_hom_edge(i, j));
    for (std::size_t v : after.l) CHECK(before.l.count(v));
    for (std::size_t v : after.r) CHECK(before.r.count(v));
  }
}

TEST_CASE("split torsion pair enumeration") {
  HomQuiver q = example_fixture();
  auto pairs = enumerate_split_torsion_pairs(q);
  CHECK(pairs == split_pairs_oracle(q));
  std::vector<TorsionPairOnQuiver> with_r;
  for (const auto& tp : pairs)
    if (contains_r_summands(q, tp.y)) with_r.push_back(tp);
  REQUIRE(with_r.size() == 1);
  CHECK(with_r[0] == torsion_pair_x0y0(q));

  // Every split pair with pd(Y) <= 1 sits between (X_0, Y_0) and (all, 0).
  TorsionPairOnQuiver t0 = torsion_pair_x0y0(q);
  for (const auto& tp : pairs) {
    for (std::size_t v : tp.y) CHECK(t0.y.count(v));
    for (std::size_t v : t0.x) CHECK(tp.x.count(v));
  }

  HomQuiver h = hereditary_fixture();
  auto hp = enumerate_split_torsion_pairs(h);
  REQUIRE(!hp.empty());
  CHECK(hp[0] == TorsionPairOnQuiver{{}, h.all()});

  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    HomQuiver r = random_quiver(rng, 1 + trial % 10, 20);
    auto got = enumerate_split_torsion_pairs(r);
    CHECK(got == split_pairs_oracle(r));
    TorsionPairOnQuiver t = torsion_pair_x0y0(r);
    for (const auto& tp : got) {
      CHECK(is_orthogonal(r, tp));
      for (std::size_t v : t.x) CHECK(tp.x.count(v));
    }
  }

  CHECK_THROWS_AS(enumerate_split_torsion_pairs(q, 9), BoundExceeded);
}
