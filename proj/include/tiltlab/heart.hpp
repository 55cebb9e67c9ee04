#pragma once

// The heart A_Q obtained by tilting finitely generated abelian groups at the
// torsion pair (X_Q, Y_Q). Since Z is hereditary every object splits as
// f[1] + t with f in Y_Q and t in X_Q, and a morphism
// f1[1] + t1 -> f2[1] + t2 is a triple (a, b, e) with
//   a : f1 -> f2,  b : t1 -> t2,  e in Ext^1(t1, f2).
// Kernels and cokernels go through the mapping cone in D^b(mod Z).

#include <string>
#include <vector>

#include "tiltlab/abgrp.hpp"
#include "tiltlab/chain.hpp"
#include "tiltlab/torsion.hpp"

namespace tiltlab {

class HeartObject {
 public:
  HeartObject() = default;
  // Throws ValidationError unless f is in Y_Q and t in X_Q.
  HeartObject(PrimeSet q, FgAbGroup f, FgAbGroup t);

  const PrimeSet& q() const { return q_; }
  const FgAbGroup& f() const { return f_; }
  const FgAbGroup& t() const { return t_; }
  bool is_zero() const { return f_.is_zero() && t_.is_zero(); }
  // "Z[1] + Z/4", "(Z + Z/3)[1]", "0"
  std::string to_string() const;
  bool operator==(const HeartObject&) const = default;

 private:
  PrimeSet q_;
  FgAbGroup f_, t_;
};

HeartObject make_object(const PrimeSet& q, const FgAbGroup& f, const FgAbGroup& t);

class HeartMorphism {
 public:
  HeartMorphism() = default;
  HeartMorphism(HeartObject source, HeartObject target, GroupHom a, GroupHom b, ExtElement e);

  static HeartMorphism zero(const HeartObject& x, const HeartObject& y);
  static HeartMorphism identity(const HeartObject& x);

  const HeartObject& source() const { return source_; }
  const HeartObject& target() const { return target_; }
  const GroupHom& a() const { return a_; }
  const GroupHom& b() const { return b_; }
  const ExtElement& e() const { return e_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero() && e_.is_zero(); }
  HeartMorphism operator+(const HeartMorphism& o) const;
  HeartMorphism operator-(const HeartMorphism& o) const;
  HeartMorphism operator-() const;
  bool operator==(const HeartMorphism&) const = default;

 private:
  HeartObject source_, target_;
  GroupHom a_, b_;
  ExtElement e_;
};

// g o f
HeartMorphism compose(const HeartMorphism& g, const HeartMorphism& f);

struct LabeledBlock {
  std::string label;
  FgAbGroup group;
};

// Hom(x1, x2) = Hom(f1, f2) + Hom(t1, t2) + Ext^1(t1, f2).
class HeartHomSpace {
 public:
  HeartHomSpace(HeartObject x1, HeartObject x2);

  const FgAbGroup& group() const { return sum_.group(); }
  std::vector<LabeledBlock> blocks() const;
  IntVector coordinates(const HeartMorphism& m) const;
  HeartMorphism morphism(const IntVector& coordinates) const;
  // Every morphism; the space must be finite with at most `bound` elements.
  std::vector<HeartMorphism> enumerate(const Integer& bound = 10000) const;

 private:
  HeartObject x1_, x2_;
  HomGroup hom_f_, hom_t_;
  ExtGroup ext_;
  DirectSum sum_;
};

HeartHomSpace hom_space(const HeartObject& x1, const HeartObject& x2);

struct HeartExtSpace {
  FgAbGroup group;
  std::vector<LabeledBlock> blocks;
};

// Ext^1(x1, x2) = Ext^1(f1, f2) + Hom(f1, t2) + Ext^1(t1, t2).
HeartExtSpace ext1_space(const HeartObject& x1, const HeartObject& x2);

struct Ext2Space {
  FgAbGroup group;           // always zero
  LabeledBlock block;        // Ext^1(f1, t2), the only candidate
  std::vector<std::string> certificate;
  bool vanishes = true;
};

Ext2Space ext2_space(const HeartObject& x1, const HeartObject& x2);

struct KernelResult {
  HeartObject object;
  HeartMorphism mono;
};
struct CokernelResult {
  HeartObject object;
  HeartMorphism epi;
};
struct ImageResult {
  HeartObject object;
  HeartMorphism epi;   // source -> image
  HeartMorphism mono;  // image -> target
};

KernelResult kernel(const HeartMorphism& m);
CokernelResult cokernel(const HeartMorphism& m);
ImageResult image(const HeartMorphism& m);

bool is_mono(const HeartMorphism& m);
bool is_epi(const HeartMorphism& m);
bool is_iso(const HeartMorphism& m);

// Some h : x -> through.source() with through o h == m, if one exists.
std::optional<HeartMorphism> factor_through(const HeartMorphism& m, const HeartMorphism& through);

struct SesReport {
  bool exact = false;
  bool composite_zero = false;
  bool first_mono = false;
  bool second_epi = false;
  bool middle_exact = false;
};

SesReport is_ses(const HeartMorphism& f, const HeartMorphism& g);

struct HeartSes {
  HeartMorphism incl;  // (f, 0) -> x
  HeartMorphism proj;  // x -> (0, t)
};

// 0 -> f[1] -> x -> t -> 0
HeartSes canonical_ses(const HeartObject& x);

// Monomorphism x -> (f + Z^k, 0) built from the square presentation
// 0 -> Z^k -> Z^k -> t -> 0.
HeartMorphism embed_into_tilt(const HeartObject& x);

struct TiltingCondition {
  int index = 0;
  std::string name;
  bool passed = true;
  std::vector<std::string> evidence;
};

struct TiltingReport {
  HeartObject t0;
  FgAbGroup endomorphisms;
  std::vector<TiltingCondition> conditions;
  bool passed = true;
};

TiltingReport verify_tilting_object(const HeartObject& t0, const std::vector<HeartObject>& witnesses);

// Chain-level model: the standard two-term resolutions of f (shifted) and t.
FreeComplex object_complex(const HeartObject& x);
ChainMap chain_map(const HeartMorphism& m);
// Reads the homotopy class of a chain map between object complexes.
HeartMorphism from_chain_map(const ChainMap& c, const HeartObject& source, const HeartObject& target);

}  // namespace tiltlab
