#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tiltlab/abgrp.hpp"
#include "tiltlab/acceptance.hpp"
#include "tiltlab/ahdetect.hpp"
#include "tiltlab/error.hpp"
#include "tiltlab/exring73.hpp"
#include "tiltlab/heart.hpp"
#include "tiltlab/report.hpp"
#include "tiltlab/torsion.hpp"

namespace tiltlab::cli {
namespace {

struct Options {
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
  std::optional<long> bound;
  std::string out_path;

  std::string matrix, group_text, relations, hom_a, hom_b;
  std::string q = "2";
  std::vector<std::string> groups, witnesses;
  std::string heart_op, object, target, morphism;
  std::string fixture;
  unsigned long p = 2;
  std::string module, emit_fixture;
  std::string depth = "quick";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json group_json(const FgAbGroup& g) {
  Json torsion = Json::array();
  for (const auto& d : g.torsion()) torsion.push_back(d.get_str());
  Json j = {{"text", g.to_string()}, {"rank", g.rank()}, {"torsion", torsion}};
  if (g.is_finite()) j["order"] = g.order().get_str();
  return j;
}

Json object_json(const HeartObject& x) {
  return {{"f", x.f().to_string()}, {"t", x.t().to_string()}, {"text", x.to_string()}};
}

Json morphism_json(const HeartMorphism& m) {
  Json e = Json::array();
  for (const auto& block : m.e().coords()) {
    Json row = Json::array();
    for (const auto& v : block) row.push_back(v.get_str());
    e.push_back(row);
  }
  return {{"source", m.source().to_string()}, {"target", m.target().to_string()},
          {"a", m.a().matrix().to_string()},  {"b", m.b().matrix().to_string()}, {"e", e}};
}

HeartObject parse_object(const PrimeSet& q, const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw ParseError("object must be written F,T (for example Z,0 or Z/5,Z/4), got '" + text + "'");
  return HeartObject(q, FgAbGroup::parse(text.substr(0, comma)), FgAbGroup::parse(text.substr(comma + 1)));
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParseError("bad " + what + " '" + s + "'");
  return v;
}

// "p=N" multiplication by N, "id", "zero", or "coords=c1,c2,..." in the
// coordinates of Hom(source, target).
HeartMorphism parse_morphism(const std::string& spec, const HeartObject& x, const HeartObject& y) {
  if (spec == "id") {
    if (!(x == y)) throw ValidationError("id needs source == target");
    return HeartMorphism::identity(x);
  }
  if (spec == "zero") return HeartMorphism::zero(x, y);
  if (spec.rfind("p=", 0) == 0) {
    if (!(x == y)) throw ValidationError("multiplication needs source == target");
    Integer n = parse_long(spec.substr(2), "multiplier");
    return HeartMorphism(x, x, GroupHom::scalar(x.f(), n), GroupHom::scalar(x.t(), n), ExtElement::zero(x.t(), x.f()));
  }
  if (spec.rfind("coords=", 0) == 0) {
    HeartHomSpace h(x, y);
    IntVector c;
    std::stringstream ss(spec.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_long(item, "coordinate"));
    if (c.size() != h.group().num_generators())
      throw ValidationError("Hom(" + x.to_string() + ", " + y.to_string() + ") = " + h.group().to_string() + " needs " +
                            std::to_string(h.group().num_generators()) + " coordinates");
    return h.morphism(c);
  }
  throw ParseError("morphism must be p=N, id, zero or coords=..., got '" + spec + "'");
}

// ----------------------------------------------------------------- verbs

Report run_snf(const Options& o) {
  Report rep("snf");
  rep.add_input("matrix", o.matrix);
  IntMatrix m = IntMatrix::parse(o.matrix);
  SmithForm s = smith_normal_form(m);
  bool product = s.u * m * s.v == s.d;
  bool unimodular = s.u * s.u_inv == IntMatrix::identity(m.rows()) && s.v * s.v_inv == IntMatrix::identity(m.cols());
  bool chain = true;
  std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t r = 0; r < s.d.rows(); ++r)
    for (std::size_t c = 0; c < s.d.cols(); ++c)
      if (r != c && s.d(r, c) != 0) chain = false;
  Json diag = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    diag.push_back(s.d(i, i).get_str());
    if (s.d(i, i) < 0) chain = false;
    if (i + 1 < n && s.d(i + 1, i + 1) != 0 && (s.d(i, i) == 0 || s.d(i + 1, i + 1) % s.d(i, i) != 0)) chain = false;
  }
  rep.add_check("u*m*v = d", product);
  rep.add_check("u, v unimodular", unimodular);
  rep.add_check("d diagonal with divisibility chain", chain, {{"diagonal", diag}});
  rep.set_result("d", s.d.to_string());
  rep.set_result("u", s.u.to_string());
  rep.set_result("v", s.v.to_string());
  rep.set_result("rank", s.rank);
  rep.set_result("cokernel", cokernel_group(m).to_string());
  return rep;
}

Report run_group(const Options& o) {
  Report rep("group");
  FgAbGroup g;
  if (!o.relations.empty()) {
    rep.add_input("relations", o.relations);
    g = cokernel_group(IntMatrix::parse(o.relations));
  } else {
    if (o.group_text.empty()) throw ParseError("group needs a group text or --relations");
    rep.add_input("group", o.group_text);
    g = FgAbGroup::parse(o.group_text);
  }
  Json primary = Json::object();
  for (const auto& [prime, exps] : g.primary_decomposition()) primary[prime.get_str()] = exps;
  rep.add_check("canonical text reparses", FgAbGroup::parse(g.to_string()) == g, g.to_string());
  rep.set_result("group", group_json(g));
  rep.set_result("primary_decomposition", primary);
  return rep;
}

Report run_hom(const Options& o) {
  Report rep("hom");
  FgAbGroup a = FgAbGroup::parse(o.hom_a), b = FgAbGroup::parse(o.hom_b);
  rep.add_input("source", o.hom_a);
  rep.add_input("target", o.hom_b);
  const long bound = o.bound.value_or(10000);
  rep.set_bound("brute_force", bound);
  HomGroup h(a, b);
  Json basis = Json::array();
  for (const auto& f : h.basis()) basis.push_back(f.matrix().to_string());
  rep.set_result("hom", group_json(h.group()));
  rep.set_result("basis", basis);
  if (a.is_finite() && b.is_finite()) {
    // The brute-force search looks at every tuple of images.
    Integer space = 1;
    for (std::size_t i = 0; i < a.num_generators(); ++i) space *= b.order();
    if (space <= bound) {
      Integer brute = brute_force_hom_count(a, b, bound);
      rep.add_check("brute-force count", brute == h.group().order(),
                    {{"brute_force", brute.get_str()}, {"order", h.group().order().get_str()}});
    } else {
      rep.set_result("brute_force", "skipped: " + space.get_str() + " candidate maps exceed the bound");
    }
  }
  bool basis_ok = true;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    IntVector e(h.group().num_generators());
    e[i] = 1;
    basis_ok = basis_ok && h.coordinates(h.basis()[i]) == h.group().reduce(e);
  }
  rep.add_check("basis realizes the generators", basis_ok);
  return rep;
}

Report run_ext(const Options& o) {
  Report rep("ext");
  FgAbGroup t = FgAbGroup::parse(o.hom_a), f = FgAbGroup::parse(o.hom_b);
  rep.add_input("t", o.hom_a);
  rep.add_input("f", o.hom_b);
  ExtGroup e(t, f);
  // |Ext^1(+ Z/d_i, Z^r + Z/e_j)| = prod_i d_i^r prod_j gcd(d_i, e_j)
  Integer expected = 1;
  Json blocks = Json::array();
  for (const auto& d : t.torsion()) {
    Integer part = 1;
    for (std::size_t k = 0; k < f.rank(); ++k) part *= d;
    for (const auto& ej : f.torsion()) part *= gcd(d, ej);
    expected *= part;
    blocks.push_back("Ext1(Z/" + d.get_str() + ", f) has order " + part.get_str());
  }
  rep.add_check("order matches gcd formula", e.group().is_finite() && e.group().order() == expected,
                {{"blocks", blocks}, {"expected_order", expected.get_str()}});
  rep.set_result("ext1", group_json(e.group()));
  return rep;
}

Report run_tilt(const Options& o) {
  Report rep("tilt");
  PrimeSet q = PrimeSet::parse(o.q);
  rep.set_bound("q", q.to_string());
  CotiltingReport cot = is_cotilting(q);
  rep.add_check("Y_Q cotilting", cot.cotilting, cot.witness);
  for (const auto& text : o.groups) {
    FgAbGroup m = FgAbGroup::parse(text);
    rep.add_input("group", text);
    TorsionSequence s = canonical_ses(q, m);
    bool exact = is_injective(s.incl) && is_surjective(s.proj) && compose(s.proj, s.incl).is_zero() &&
                 in_torsion_class(q, s.t) && in_torsionfree_class(q, s.f);
    SplitReport sp = is_split(q, {{m, m}});
    rep.add_check("canonical sequence of " + m.to_string(), exact && sp.split,
                  {{"t", s.t.to_string()}, {"f", s.f.to_string()}, {"Ext1(f, t)", sp.certificates.at(0).ext.to_string()}});
  }
  if (!q.empty()) {
    HeartObject t0(q, FgAbGroup::free(1), FgAbGroup());
    std::vector<HeartObject> ws;
    for (const auto& w : o.witnesses) ws.push_back(parse_object(q, w));
    if (ws.empty()) {
      unsigned long r = 2;
      while (q.contains(r) || !is_prime(r)) ++r;
      const Integer p = q.primes().front();
      ws = {HeartObject(q, FgAbGroup::free(1), FgAbGroup()), HeartObject(q, FgAbGroup(), FgAbGroup::cyclic(p)),
            HeartObject(q, FgAbGroup::cyclic(r), FgAbGroup(0, {p, p * p})), HeartObject(q, FgAbGroup(), FgAbGroup())};
    }
    TiltingReport tr = verify_tilting_object(t0, ws);
    for (const auto& c : tr.conditions) rep.add_check("T: " + c.name, c.passed, c.evidence);
    rep.add_check("End(T) = Z", tr.endomorphisms == FgAbGroup::free(1), tr.endomorphisms.to_string());
  }
  return rep;
}

Report run_heart(const Options& o) {
  Report rep("heart " + o.heart_op);
  PrimeSet q = PrimeSet::parse(o.q);
  rep.set_bound("q", q.to_string());
  rep.add_input("object", o.object);
  HeartObject x = parse_object(q, o.object);
  HeartObject y = o.target.empty() ? x : parse_object(q, o.target);
  if (!o.target.empty()) rep.add_input("target", o.target);
  rep.set_result("source", object_json(x));
  const std::string& op = o.heart_op;

  if (op == "hom" || op == "ext1" || op == "ext2") {
    rep.set_result("target", object_json(y));
    if (op == "hom") {
      HeartHomSpace h(x, y);
      Json blocks = Json::object();
      std::vector<FgAbGroup> parts;
      for (const auto& b : h.blocks()) blocks[b.label] = b.group.to_string(), parts.push_back(b.group);
      rep.add_check("blocks sum to Hom", DirectSum(parts).group() == h.group(), blocks);
      rep.set_result("hom", group_json(h.group()));
    } else if (op == "ext1") {
      HeartExtSpace e = ext1_space(x, y);
      Json blocks = Json::object();
      std::vector<FgAbGroup> parts;
      for (const auto& b : e.blocks) blocks[b.label] = b.group.to_string(), parts.push_back(b.group);
      rep.add_check("blocks sum to Ext^1", DirectSum(parts).group() == e.group, blocks);
      rep.set_result("ext1", group_json(e.group));
    } else {
      Ext2Space e = ext2_space(x, y);
      rep.add_check("Ext^2 vanishes", e.vanishes && e.group.is_zero(), e.certificate);
      rep.set_result("ext2", group_json(e.group));
    }
    return rep;
  }
  if (op == "ses") {
    HeartSes s = canonical_ses(x);
    rep.add_check("0 -> f[1] -> x -> t -> 0 exact", is_ses(s.incl, s.proj).exact);
    rep.set_result("incl", morphism_json(s.incl));
    rep.set_result("proj", morphism_json(s.proj));
    return rep;
  }
  if (op == "embed") {
    HeartMorphism e = embed_into_tilt(x);
    rep.add_check("monomorphism", is_mono(e));
    rep.add_check("target in the tilting class", e.target().t().is_zero(), e.target().to_string());
    rep.set_result("embedding", morphism_json(e));
    return rep;
  }

  if (o.morphism.empty()) throw ParseError("heart " + op + " needs --morphism");
  HeartMorphism m = parse_morphism(o.morphism, x, y);
  rep.add_input("morphism", o.morphism);
  rep.set_result("morphism", morphism_json(m));
  if (op == "kernel") {
    KernelResult k = kernel(m);
    ImageResult im = image(m);
    rep.add_check("monomorphism", is_mono(k.mono));
    rep.add_check("m o mono = 0", compose(m, k.mono).is_zero());
    rep.add_check("0 -> ker -> source -> image -> 0 exact", is_ses(k.mono, im.epi).exact);
    if (is_epi(m)) rep.add_check("0 -> ker -> source -> target -> 0 exact", is_ses(k.mono, m).exact);
    rep.set_result("kernel", object_json(k.object));
    rep.set_result("cokernel", object_json(cokernel(m).object));
    rep.set_result("mono", morphism_json(k.mono));
  } else if (op == "cokernel") {
    CokernelResult c = cokernel(m);
    ImageResult im = image(m);
    rep.add_check("epimorphism", is_epi(c.epi));
    rep.add_check("epi o m = 0", compose(c.epi, m).is_zero());
    rep.add_check("0 -> image -> target -> coker -> 0 exact", is_ses(im.mono, c.epi).exact);
    rep.set_result("cokernel", object_json(c.object));
    rep.set_result("epi", morphism_json(c.epi));
  } else if (op == "image") {
    ImageResult im = image(m);
    rep.add_check("m = mono o epi", compose(im.mono, im.epi) == m);
    rep.add_check("epi is an epimorphism", is_epi(im.epi));
    rep.add_check("mono is a monomorphism", is_mono(im.mono));
    rep.set_result("image", object_json(im.object));
  } else {
    throw ParseError("unknown heart operation " + op);
  }
  return rep;
}

// Shared by ah-detect and example73.
void detection_checks(Report& rep, const HomQuiver& q, std::size_t max_vertices) {
  CLevels cl = c_levels(q);
  Json levels = Json::array();
  for (const auto& l : cl.levels) levels.push_back(format_set(q, l));
  rep.set_result("c_levels", levels);
  rep.set_result("c", format_set(q, cl.closure));

  Verdict c1 = verify_c_equals_c1(q);
  rep.add_check("C = C_1", c1.passed, c1.detail);
  TorsionPairOnQuiver tp = torsion_pair_x0y0(q);
  rep.set_result("x0", format_set(q, tp.x));
  rep.set_result("y0", format_set(q, tp.y));
  rep.add_check("(X_0, Y_0) Hom-orthogonal", is_orthogonal(q, tp));
  ConditionReport ii = check_condition_ii(q, tp);
  Json items = Json::object();
  for (const auto& it : ii.items) items[it.name] = {{"passed", it.passed}, {"failures", it.failures}};
  rep.add_check("(X_0, Y_0) split, pd(Y_0) <= 1, R in Y_0", ii.passed, items);
  ConditionReport iii = check_condition_iii(q);
  Json items3 = Json::object();
  for (const auto& it : iii.items) items3[it.name] = {{"passed", it.passed}, {"failures", it.failures}};
  rep.add_check("gldim <= 2 and pd <= 1 or injdim <= 1", iii.passed, items3);
  Verdict hr = hom_to_r_check(q);
  rep.add_check("Hom(C_0, R) = 0", hr.passed, hr.detail);
  LRClasses lr = lr_classes(q);
  rep.set_result("L", format_set(q, lr.l));
  rep.set_result("R", format_set(q, lr.r));

  std::vector<TorsionPairOnQuiver> pairs = enumerate_split_torsion_pairs(q, max_vertices);
  Json listed = Json::array();
  bool nested = true;
  std::size_t with_r = 0;
  for (const auto& p : pairs) {
    bool n = std::includes(tp.y.begin(), tp.y.end(), p.y.begin(), p.y.end()) &&
             std::includes(p.x.begin(), p.x.end(), tp.x.begin(), tp.x.end());
    bool r = contains_r_summands(q, p.y);
    nested = nested && n;
    with_r += r;
    listed.push_back({{"x", format_set(q, p.x)}, {"y", format_set(q, p.y)}, {"r_in_y", r}});
  }
  rep.add_check("split pairs with pd(Y) <= 1 satisfy Y in Y_0, X_0 in X", nested, {{"pairs", pairs.size()}});
  rep.set_result("split_pairs", listed);
  rep.set_result("split_pairs_with_r_in_y", with_r);
}

Report run_ah_detect(const Options& o) {
  Report rep("ah-detect");
  std::string text = read_file(o.fixture);
  HomQuiver q = HomQuiver::from_json(text);  // validated before anything runs
  rep.add_input(std::filesystem::path(o.fixture).filename().string(), text);
  const std::size_t max_vertices = static_cast<std::size_t>(o.bound.value_or(20));
  rep.set_bound("max_vertices", max_vertices);
  if (q.bound()) rep.set_result("fixture_bound", *q.bound());
  rep.set_result("vertices", q.size());
  detection_checks(rep, q, max_vertices);
  return rep;
}

Report run_example73(const Options& o) {
  Report rep("example73");
  const long bound = o.bound.value_or(4);
  if (bound < 1) throw ValidationError("bound must be at least 1");
  if (bound > 9) throw BoundExceeded("bound " + std::to_string(bound) + " gives more than 20 vertices");
  const unsigned long p = o.p;
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  rep.set_bound("bound", bound);
  rep.set_bound("p", p);

  if (!o.module.empty()) {
    rep.add_input("module", o.module);
    TripleModule m = TripleModule::from_json(o.module);
    if (m.is_zero()) throw ValidationError("the zero module has no decomposition");
    std::vector<TripleModule> parts = decompose(m);
    Json names = Json::array();
    for (const auto& s : parts) names.push_back(s.name());
    rep.add_check("summands reassemble to the input", reassemble(m, parts).isomorphic, names);
    int pd = pd_triple(m), pdh = pd_homological(m);
    rep.add_check("pd from summands = pd from syzygy", pd == pdh, {{"summands", pd}, {"syzygy", pdh}});
    InjdimResult inj = injdim_triple(m);
    Json wit = Json::object();
    for (const auto& [name, g] : inj.witnesses) wit["Ext1(gR, " + name + ")"] = g.to_string();
    rep.set_result("module", m.to_json());
    rep.set_result("summands", names);
    rep.set_result("pd", pd);
    rep.set_result("injdim", inj.injdim);
    rep.set_result("injdim_witnesses", wit);
    return rep;
  }

  Json table = Json::array();
  bool pd_ok = true, inj_ok = true;
  for (const auto& m : enumerate_indecomposables(p, static_cast<unsigned>(bound))) {
    int pd = pd_triple(m);
    InjdimResult inj = injdim_triple(m);
    pd_ok = pd_ok && pd == pd_homological(m) && ((pd == 2) == (m.name() == "S"));
    bool witnessed = m.name() == "S" ? inj.injdim == 0 : inj.injdim == 2 && !inj.witnesses.empty() && !inj.witnesses[0].second.is_zero();
    inj_ok = inj_ok && witnessed;
    table.push_back({{"module", m.name()}, {"pd", pd}, {"injdim", inj.injdim},
                     {"ext1_gR", inj.witnesses.empty() ? "0" : inj.witnesses[0].second.to_string()}});
  }
  rep.add_check("pd agrees with the syzygy and is 2 only at S", pd_ok);
  rep.add_check("injdim 2 witnessed by Ext1(gR, -) off S", inj_ok);
  rep.set_result("indecomposables", table);

  HomQuiver q = to_homquiver(static_cast<unsigned>(bound), p);
  std::string fixture = q.to_json();
  rep.set_result("fixture_sha256", sha256_hex(fixture));
  if (!o.emit_fixture.empty()) {
    std::ofstream out(o.emit_fixture, std::ios::binary);
    if (!(out << fixture)) throw Error("cannot write " + o.emit_fixture);
  }
  detection_checks(rep, q, 20);
  if (bound >= 2) {
    HomQuiver smaller = to_homquiver(static_cast<unsigned>(bound - 1), p);
    auto verdicts = [](const HomQuiver& h) {
      TorsionPairOnQuiver tp = torsion_pair_x0y0(h);
      return Json{format_set(h, c_levels(h).closure), verify_c_equals_c1(h).passed, check_condition_ii(h, tp).passed,
                  check_condition_iii(h).passed, hom_to_r_check(h).passed, format_set(h, lr_classes(h).r)};
    };
    rep.add_check("verdicts stable from bound " + std::to_string(bound - 1), verdicts(smaller) == verdicts(q));
  }
  return rep;
}

Report run_selftest(const Options& o) {
  Depth d = o.depth == "full" ? Depth::full : Depth::quick;
  return acceptance_report(run_acceptance(d, o.seed));
}

int exit_for(const Report& rep) { return rep.passed() ? kPass : kCheckFailed; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"tiltlab: tilted hearts, torsion pairs and almost hereditary detection", "tiltlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "seed for sampled checks");
  app.add_option("--bound", o.bound, "search bound for the verb");
  app.add_option("--out", o.out_path, "also write the JSON report here");
  app.set_version_flag("--version", std::string(version()));

  auto* snf = app.add_subcommand("snf", "Smith normal form with certificate");
  snf->add_option("matrix", o.matrix, "\"1 2; 3 4\" or [[1,2],[3,4]]")->required();
  auto* group = app.add_subcommand("group", "canonical form of a group");
  group->add_option("group", o.group_text, "\"Z^2 + Z/6\"");
  group->add_option("--relations", o.relations, "relation matrix, one relation per column");
  auto* hom = app.add_subcommand("hom", "Hom(A, B) with basis");
  hom->add_option("a", o.hom_a)->required();
  hom->add_option("b", o.hom_b)->required();
  auto* ext = app.add_subcommand("ext", "Ext^1(T, F)");
  ext->add_option("t", o.hom_a)->required();
  ext->add_option("f", o.hom_b)->required();
  auto* tilt = app.add_subcommand("tilt", "torsion pair (X_Q, Y_Q) and the tilting object Z[1]");
  tilt->add_option("--q", o.q, "primes of Q, comma separated");
  tilt->add_option("--group", o.groups, "group to split into its canonical sequence");
  tilt->add_option("--witness", o.witnesses, "heart object F,T for the tilting checks");
  auto* heart = app.add_subcommand("heart", "operations in the heart A_Q");
  heart->add_option("op", o.heart_op)
      ->required()
      ->check(CLI::IsMember({"hom", "ext1", "ext2", "kernel", "cokernel", "image", "ses", "embed"}));
  heart->add_option("--q", o.q, "primes of Q, comma separated");
  heart->add_option("--object", o.object, "source object F,T")->required();
  heart->add_option("--target", o.target, "target object F,T (default: source)");
  heart->add_option("--morphism", o.morphism, "p=N, id, zero or coords=c1,c2,...");
  auto* ah = app.add_subcommand("ah-detect", "almost hereditary detection on a Hom-quiver fixture");
  ah->add_option("fixture", o.fixture)->required();
  auto* ex = app.add_subcommand("example73", "modules over the triangular ring [[F_p, F_p], [0, Z_(p)]]");
  ex->add_option("--p", o.p, "the prime p");
  ex->add_option("--module", o.module, "triple as JSON: {\"p\":2,\"l\":1,\"rank\":0,\"exponents\":[2],\"phi\":[[1]]}");
  ex->add_option("--emit-fixture", o.emit_fixture, "write the generated Hom-quiver fixture here");
  auto* st = app.add_subcommand("selftest", "acceptance suite");
  st->add_option("depth", o.depth)->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Report rep;
    if (snf->parsed()) rep = run_snf(o);
    else if (group->parsed()) rep = run_group(o);
    else if (hom->parsed()) rep = run_hom(o);
    else if (ext->parsed()) rep = run_ext(o);
    else if (tilt->parsed()) rep = run_tilt(o);
    else if (heart->parsed()) rep = run_heart(o);
    else if (ah->parsed()) rep = run_ah_detect(o);
    else if (ex->parsed()) rep = run_example73(o);
    else rep = run_selftest(o);

    if (!o.out_path.empty()) {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!(f << rep.render_json())) throw Error("cannot write " + o.out_path);
    }
    out << (o.format == "json" ? rep.render_json() : rep.render_text());
    return exit_for(rep);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const InvariantBreach& e) {
    err << "internal invariant breach: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace tiltlab::cli
