#pragma once

// Bounded cochain complexes of finite rank free abelian groups. Every object
// of D^b(mod Z) is represented by one of these; morphisms between them are
// chain maps up to homotopy.

#include <cstddef>
#include <map>
#include <vector>

#include "tiltlab/abgrp.hpp"

namespace tiltlab {

class FreeComplex {
 public:
  FreeComplex() = default;
  // ranks[i] is the rank in degree lo + i; diffs[i] maps degree lo + i to
  // lo + i + 1, so diffs.size() + 1 == ranks.size() (or both empty).
  FreeComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> diffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int n) const;
  // d^n : degree n -> n + 1; a zero matrix of the right shape outside the range.
  IntMatrix d(int n) const;
  bool is_complex() const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<IntMatrix> diffs_;
};

class ChainMap {
 public:
  ChainMap() = default;
  // Missing degrees are zero.
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, IntMatrix> components);

  const FreeComplex& source() const { return source_; }
  const FreeComplex& target() const { return target_; }
  IntMatrix at(int n) const;
  bool commutes() const;

 private:
  FreeComplex source_, target_;
  std::map<int, IntMatrix> components_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

// C(g)^n = X^{n+1} + Y^n, d = [[-d_X, 0], [g, d_Y]].
FreeComplex cone(const ChainMap& g);
ChainMap cone_inclusion(const ChainMap& g);  // Y -> C(g)
// W^n = X^n + Y^{n-1}, d = [[d_X, 0], [-g, -d_Y]]; the rotation of the cone.
FreeComplex cocone(const ChainMap& g);
ChainMap cocone_projection(const ChainMap& g);  // W -> X

// Std(H) = sum_n StdRes(H^n)[-n]. In degree m the basis lists the
// generators of H^m, then the relations of H^{m+1}; the relations of H^n map
// to its generators by (-1)^n times its relation matrix.
FreeComplex standard_complex(const std::map<int, FgAbGroup>& h);

// R with D_b R = H D_a: where h : a -> b sends the relations of a, in terms
// of the relations of b.
IntMatrix lift_to_relations(const GroupHom& h);

// Chain map Std(h_src) -> Std(h_dst) lifting group homomorphisms given per
// degree; degrees without a map contribute zero.
ChainMap standard_lift(const std::map<int, FgAbGroup>& h_src, const std::map<int, FgAbGroup>& h_dst,
                       const std::map<int, GroupHom>& maps);

struct Cohomology {
  std::map<int, FgAbGroup> groups;  // every degree of the complex
  ChainMap section;                 // Std(H) -> C
  ChainMap retraction;              // C -> Std(H)
};

// Both chain maps induce the identity on cohomology in canonical coordinates.
Cohomology cohomology(const FreeComplex& c);

}  // namespace tiltlab
