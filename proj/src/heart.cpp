#include "tiltlab/heart.hpp"

#include "tiltlab/error.hpp"

namespace tiltlab {

// ---------------------------------------------------------------- objects

HeartObject::HeartObject(PrimeSet q, FgAbGroup f, FgAbGroup t) : q_(std::move(q)), f_(std::move(f)), t_(std::move(t)) {
  if (!in_torsionfree_class(q_, f_))
    throw ValidationError("f = " + f_.to_string() + " has torsion at a prime of " + q_.to_string());
  if (!in_torsion_class(q_, t_))
    throw ValidationError("t = " + t_.to_string() + " is not a finite group with primes in " + q_.to_string());
}

HeartObject make_object(const PrimeSet& q, const FgAbGroup& f, const FgAbGroup& t) { return HeartObject(q, f, t); }

std::string HeartObject::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (!f_.is_zero()) {
    std::string fs = f_.to_string();
    s = (f_.num_generators() == 1 ? fs : "(" + fs + ")") + "[1]";
  }
  if (!t_.is_zero()) s += (s.empty() ? "" : " + ") + t_.to_string();
  return s;
}

// -------------------------------------------------------------- morphisms

namespace {

void require_same_q(const HeartObject& x, const HeartObject& y) {
  if (x.q() != y.q()) throw ValidationError("objects live in hearts for different prime sets");
}

}  // namespace

HeartMorphism::HeartMorphism(HeartObject source, HeartObject target, GroupHom a, GroupHom b, ExtElement e)
    : source_(std::move(source)), target_(std::move(target)), a_(std::move(a)), b_(std::move(b)), e_(std::move(e)) {
  require_same_q(source_, target_);
  if (a_.source() != source_.f() || a_.target() != target_.f())
    throw ValidationError("f-component must map " + source_.f().to_string() + " -> " + target_.f().to_string());
  if (b_.source() != source_.t() || b_.target() != target_.t())
    throw ValidationError("t-component must map " + source_.t().to_string() + " -> " + target_.t().to_string());
  if (e_.t() != source_.t() || e_.f() != target_.f())
    throw ValidationError("extension component must lie in Ext^1(" + source_.t().to_string() + ", " +
                          target_.f().to_string() + ")");
}

HeartMorphism HeartMorphism::zero(const HeartObject& x, const HeartObject& y) {
  return HeartMorphism(x, y, GroupHom::zero(x.f(), y.f()), GroupHom::zero(x.t(), y.t()), ExtElement::zero(x.t(), y.f()));
}

HeartMorphism HeartMorphism::identity(const HeartObject& x) {
  return HeartMorphism(x, x, GroupHom::identity(x.f()), GroupHom::identity(x.t()), ExtElement::zero(x.t(), x.f()));
}

HeartMorphism HeartMorphism::operator+(const HeartMorphism& o) const {
  if (source_ != o.source_ || target_ != o.target_) throw ValidationError("adding morphisms between different objects");
  return HeartMorphism(source_, target_, a_ + o.a_, b_ + o.b_, e_ + o.e_);
}

HeartMorphism HeartMorphism::operator-(const HeartMorphism& o) const { return *this + (-o); }

HeartMorphism HeartMorphism::operator-() const { return HeartMorphism(source_, target_, -a_, -b_, -e_); }

HeartMorphism compose(const HeartMorphism& g, const HeartMorphism& f) {
  if (f.target() != g.source())
    throw ValidationError("cannot compose: " + f.target().to_string() + " is not " + g.source().to_string());
  return HeartMorphism(f.source(), g.target(), compose(g.a(), f.a()), compose(g.b(), f.b()),
                       ext_pushout(f.e(), g.a()) + ext_pullback(g.e(), f.b()));
}

// ------------------------------------------------------------ Hom and Ext

HeartHomSpace::HeartHomSpace(HeartObject x1, HeartObject x2)
    : x1_(std::move(x1)),
      x2_(std::move(x2)),
      hom_f_(x1_.f(), x2_.f()),
      hom_t_(x1_.t(), x2_.t()),
      ext_(x1_.t(), x2_.f()),
      sum_({hom_f_.group(), hom_t_.group(), ext_.group()}) {
  require_same_q(x1_, x2_);
}

std::vector<LabeledBlock> HeartHomSpace::blocks() const {
  return {{"Hom(f1,f2)", hom_f_.group()}, {"Hom(t1,t2)", hom_t_.group()}, {"Ext1(t1,f2)", ext_.group()}};
}

IntVector HeartHomSpace::coordinates(const HeartMorphism& m) const {
  if (m.source() != x1_ || m.target() != x2_) throw ValidationError("morphism does not belong to this Hom space");
  return sum_.combine({hom_f_.coordinates(m.a()), hom_t_.coordinates(m.b()), ext_.coordinates(m.e())});
}

HeartMorphism HeartHomSpace::morphism(const IntVector& coordinates) const {
  auto parts = sum_.split(sum_.group().reduce(coordinates));
  return HeartMorphism(x1_, x2_, hom_f_.morphism(parts[0]), hom_t_.morphism(parts[1]), ext_.element(parts[2]));
}

std::vector<HeartMorphism> HeartHomSpace::enumerate(const Integer& bound) const {
  std::vector<HeartMorphism> out;
  for (const auto& c : enumerate_elements(group(), bound)) out.push_back(morphism(c));
  return out;
}

HeartHomSpace hom_space(const HeartObject& x1, const HeartObject& x2) { return HeartHomSpace(x1, x2); }

HeartExtSpace ext1_space(const HeartObject& x1, const HeartObject& x2) {
  require_same_q(x1, x2);
  std::vector<LabeledBlock> blocks{{"Ext1(f1,f2)", ext_group(x1.f(), x2.f()).group()},
                                   {"Hom(f1,t2)", hom_group(x1.f(), x2.t()).group()},
                                   {"Ext1(t1,t2)", ext_group(x1.t(), x2.t()).group()}};
  DirectSum sum({blocks[0].group, blocks[1].group, blocks[2].group});
  return {sum.group(), std::move(blocks)};
}

Ext2Space ext2_space(const HeartObject& x1, const HeartObject& x2) {
  require_same_q(x1, x2);
  Ext2Space out;
  out.block = {"Ext1(f1,t2)", ext_group(x1.f(), x2.t()).group()};
  if (x1.f().rank() > 0) out.certificate.push_back("Ext1(Z, -) = 0 on the free part of f1");
  for (const auto& a : x1.f().torsion())
    for (const auto& b : x2.t().torsion())
      out.certificate.push_back("gcd(" + a.get_str() + "," + b.get_str() + ") = " + gcd(a, b).get_str());
  if (x1.f().torsion().empty() || x2.t().is_zero()) out.certificate.push_back("no torsion block pairs f1 with t2");
  out.vanishes = out.block.group.is_zero();
  out.group = out.block.group;
  return out;
}

// ------------------------------------------------------------ chain level

FreeComplex object_complex(const HeartObject& x) { return standard_complex({{-1, x.f()}, {0, x.t()}}); }

// Degree -2: relations of f.  Degree -1: generators of f, then relations of
// t.  Degree 0: generators of t.  A morphism (a, b, e) becomes
//   -2: lift of a to relations
//   -1: [[a, e], [0, lift of b to relations]]
//    0: b
// where column i of e is the class of e on the i-th relation of t1.
ChainMap chain_map(const HeartMorphism& m) {
  const HeartObject& x = m.source();
  const HeartObject& y = m.target();
  FreeComplex cx = object_complex(x), cy = object_complex(y);
  const std::size_t nf1 = x.f().num_generators(), nf2 = y.f().num_generators();
  IntMatrix mid(cy.rank(-1), cx.rank(-1));
  mid.set_block(0, 0, m.a().matrix());
  for (std::size_t i = 0; i < x.t().torsion().size(); ++i)
    for (std::size_t j = 0; j < nf2; ++j) mid(j, nf1 + i) = m.e().coords()[i][j];
  mid.set_block(nf2, nf1, lift_to_relations(m.b()));
  return ChainMap(cx, cy, {{-2, lift_to_relations(m.a())}, {-1, mid}, {0, m.b().matrix()}});
}

HeartMorphism from_chain_map(const ChainMap& c, const HeartObject& source, const HeartObject& target) {
  require_same_q(source, target);
  FreeComplex cx = object_complex(source), cy = object_complex(target);
  for (int n = -2; n <= 0; ++n)
    if (c.source().rank(n) != cx.rank(n) || c.target().rank(n) != cy.rank(n))
      throw InvariantBreach("chain map does not run between the object complexes");
  if (!c.commutes()) throw InvariantBreach("not a chain map");
  const std::size_t nf1 = source.f().num_generators(), nf2 = target.f().num_generators();
  const std::size_t kt1 = source.t().torsion().size();
  IntMatrix mid = c.at(-1);
  if (!mid.block(nf2, mid.rows(), 0, nf1).is_zero())
    throw InvariantBreach("chain map sends generators of f1 into relations of t2");
  std::vector<IntVector> coords;
  for (std::size_t i = 0; i < kt1; ++i) coords.push_back(mid.block(0, nf2, nf1 + i, nf1 + i + 1).col(0));
  return HeartMorphism(source, target, GroupHom(source.f(), target.f(), mid.block(0, nf2, 0, nf1)),
                       GroupHom(source.t(), target.t(), c.at(0)), ExtElement(source.t(), target.f(), coords));
}

// ------------------------------------------------------ kernels, cokernels

namespace {

void expect_zero_outside(const Cohomology& h, int lo, int hi, const char* what) {
  for (const auto& [n, g] : h.groups)
    if ((n < lo || n > hi) && !g.is_zero())
      throw InvariantBreach(std::string(what) + " has cohomology " + g.to_string() + " in degree " + std::to_string(n));
}

}  // namespace

KernelResult kernel(const HeartMorphism& m) {
  const HeartObject& x = m.source();
  const PrimeSet& q = x.q();
  ChainMap g = chain_map(m);
  Cohomology h = cohomology(cocone(g));
  expect_zero_outside(h, -1, 1, "cocone");
  FgAbGroup f = h.groups[-1];
  if (!in_torsionfree_class(q, f)) throw InvariantBreach("cocone H^-1 = " + f.to_string() + " is not in Y_Q");
  TorsionPart tp = torsion_part(q, h.groups[0]);
  HeartObject k(q, f, tp.t);
  ChainMap incl = standard_lift({{-1, k.f()}, {0, k.t()}}, h.groups,
                                {{-1, GroupHom::identity(f)}, {0, tp.incl}});
  ChainMap mono = compose(cocone_projection(g), compose(h.section, incl));
  return {k, from_chain_map(mono, k, x)};
}

CokernelResult cokernel(const HeartMorphism& m) {
  const HeartObject& y = m.target();
  const PrimeSet& q = y.q();
  ChainMap g = chain_map(m);
  Cohomology h = cohomology(cone(g));
  expect_zero_outside(h, -2, 0, "cone");
  if (!in_torsion_class(q, h.groups[0]))
    throw InvariantBreach("cone H^0 = " + h.groups[0].to_string() + " is not in X_Q");
  TorsionSequence s = canonical_ses(q, h.groups[-1]);
  HeartObject c(q, s.f, h.groups[0]);
  ChainMap proj = standard_lift(h.groups, {{-1, c.f()}, {0, c.t()}},
                                {{-1, s.proj}, {0, GroupHom::identity(c.t())}});
  ChainMap epi = compose(proj, compose(h.retraction, cone_inclusion(g)));
  return {c, from_chain_map(epi, y, c)};
}

bool is_mono(const HeartMorphism& m) { return kernel(m).object.is_zero(); }
bool is_epi(const HeartMorphism& m) { return cokernel(m).object.is_zero(); }
bool is_iso(const HeartMorphism& m) { return is_mono(m) && is_epi(m); }

std::optional<HeartMorphism> factor_through(const HeartMorphism& m, const HeartMorphism& through) {
  if (m.target() != through.target()) throw ValidationError("factorization needs a common target");
  HeartHomSpace from(m.source(), through.source());
  HeartHomSpace to(m.source(), m.target());
  std::vector<IntVector> images;
  for (std::size_t i = 0; i < from.group().num_generators(); ++i) {
    IntVector e(from.group().num_generators());
    e[i] = 1;
    images.push_back(to.coordinates(compose(through, from.morphism(e))));
  }
  GroupHom post = GroupHom::from_images(from.group(), to.group(), images);
  auto x = preimage(post, to.coordinates(m));
  if (!x) return std::nullopt;
  return from.morphism(*x);
}

ImageResult image(const HeartMorphism& m) {
  CokernelResult c = cokernel(m);
  KernelResult k = kernel(c.epi);
  auto e = factor_through(m, k.mono);
  if (!e) throw InvariantBreach("morphism does not factor through its image");
  return {k.object, *e, k.mono};
}

SesReport is_ses(const HeartMorphism& f, const HeartMorphism& g) {
  if (f.target() != g.source()) throw ValidationError("sequence is not composable");
  SesReport r;
  r.composite_zero = compose(g, f).is_zero();
  r.first_mono = is_mono(f);
  r.second_epi = is_epi(g);
  if (r.composite_zero) {
    KernelResult k = kernel(g);
    auto c = factor_through(f, k.mono);
    r.middle_exact = c && is_iso(*c);
  }
  r.exact = r.composite_zero && r.first_mono && r.second_epi && r.middle_exact;
  return r;
}

HeartSes canonical_ses(const HeartObject& x) {
  HeartObject fx(x.q(), x.f(), FgAbGroup());
  HeartObject tx(x.q(), FgAbGroup(), x.t());
  HeartMorphism incl(fx, x, GroupHom::identity(x.f()), GroupHom::zero(FgAbGroup(), x.t()),
                     ExtElement::zero(FgAbGroup(), x.f()));
  HeartMorphism proj(x, tx, GroupHom::zero(x.f(), FgAbGroup()), GroupHom::identity(x.t()),
                     ExtElement::zero(x.t(), FgAbGroup()));
  return {incl, proj};
}

HeartMorphism embed_into_tilt(const HeartObject& x) {
  const std::size_t k = x.t().torsion().size();
  FgAbGroup zk = FgAbGroup::free(k);
  DirectSum sum({x.f(), zk});
  HeartObject target(x.q(), sum.group(), FgAbGroup());
  std::vector<IntVector> coords;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector unit(k);
    unit[i] = 1;
    coords.push_back(unit);
  }
  ExtElement connecting(x.t(), zk, coords);
  return HeartMorphism(x, target, sum.inclusion(0), GroupHom::zero(x.t(), FgAbGroup()),
                       ext_pushout(connecting, sum.inclusion(1)));
}

// ------------------------------------------------------------- tilting

TiltingReport verify_tilting_object(const HeartObject& t0, const std::vector<HeartObject>& witnesses) {
  TiltingReport r;
  r.t0 = t0;
  r.endomorphisms = hom_space(t0, t0).group();

  TiltingCondition pd{1, "projective dimension at most one", true, {}};
  pd.evidence.push_back("A_Q is hereditary: Ext^2 reduces to Ext1_Z(f1, t2), which vanishes by coprimality");
  for (const auto& w : witnesses) {
    Ext2Space e = ext2_space(t0, w);
    if (!e.vanishes) pd.passed = false;
    pd.evidence.push_back("Ext^2(T, " + w.to_string() + ") = " + e.group.to_string());
  }

  TiltingCondition self{2, "no self-extensions", true, {}};
  HeartExtSpace e11 = ext1_space(t0, t0);
  self.passed = e11.group.is_zero();
  self.evidence.push_back("Ext^1(T, T) = " + e11.group.to_string());

  TiltingCondition gen{3, "Hom(T, -) and Ext^1(T, -) detect nonzero objects", true, {}};
  for (const auto& w : witnesses) {
    FgAbGroup hom = hom_space(t0, w).group();
    FgAbGroup ext = ext1_space(t0, w).group;
    bool both_zero = hom.is_zero() && ext.is_zero();
    if (both_zero && !w.is_zero()) gen.passed = false;
    gen.evidence.push_back(w.to_string() + ": Hom = " + hom.to_string() + ", Ext^1 = " + ext.to_string() +
                           (both_zero && !w.is_zero() ? "  <- nonzero object invisible to T" : ""));
  }

  TiltingCondition fg{4, "Hom(T, -) and Ext^1(T, -) finitely generated over End(T)", true, {}};
  fg.evidence.push_back("End(T) = " + r.endomorphisms.to_string() + "; Z acts through End(T) by n -> n id");
  for (const auto& w : witnesses) {
    fg.evidence.push_back(w.to_string() + ": Hom generated by " + std::to_string(hom_space(t0, w).group().num_generators()) +
                          ", Ext^1 by " + std::to_string(ext1_space(t0, w).group.num_generators()) + " elements over Z");
  }

  r.conditions = {pd, self, gen, fg};
  for (const auto& c : r.conditions) r.passed = r.passed && c.passed;
  return r;
}

}  // namespace tiltlab
