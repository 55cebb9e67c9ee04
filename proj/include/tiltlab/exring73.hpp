#pragma once

// Right modules over R = [[F_p, F_p], [0, Z_(p)]] as triples (L, N, phi):
// L an F_p-space, N a finitely generated Z_(p)-module, phi : L -> Soc(N).
//
// Z_(p)-modules are modelled by finitely generated abelian groups whose
// torsion is p-primary: Z_(p)^r + sum Z/p^e is stored as Z^r + sum Z/p^e.
// Hom and Ext over Z_(p) are Hom and Ext over Z tensored with Z_(p), and
// localization is exact, so every group computed here is the Z-version
// with its torsion cut down to the p-part.
//
// The indecomposables are
//   S   = (F_p, 0, 0)             simple injective, pd 2
//   fR  = (0, Z_(p), 0)           projective
//   G_r = (0, Z/p^r, 0)           r >= 1, gR = G_1
//   E_s = (F_p, Z/p^s, incl)      s >= 1, eR = E_1 projective

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiltlab/abgrp.hpp"
#include "tiltlab/ahdetect.hpp"

namespace tiltlab {

class PLocalModule {
 public:
  PLocalModule() = default;
  // Exponents are sorted; each must be >= 1.
  PLocalModule(unsigned long p, std::size_t rank, std::vector<unsigned> exponents);

  unsigned long p() const { return p_; }
  std::size_t rank() const { return rank_; }
  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t socle_dimension() const { return exponents_.size(); }
  // Z^rank + Z/p^e_1 + ..., generators in the same order.
  FgAbGroup group() const;
  bool operator==(const PLocalModule&) const = default;

 private:
  unsigned long p_ = 2;
  std::size_t rank_ = 0;
  std::vector<unsigned> exponents_;
};

class TripleModule {
 public:
  TripleModule() = default;
  // phi is socle_dimension() x l with entries reduced into [0, p).
  TripleModule(std::size_t l, PLocalModule n, IntMatrix phi);

  static TripleModule simple(unsigned long p);                   // S
  static TripleModule free(unsigned long p);                     // fR
  static TripleModule cyclic_torsion(unsigned long p, unsigned r);  // G_r
  static TripleModule cyclic_hit(unsigned long p, unsigned s);   // E_s

  // {"p":2,"l":1,"rank":0,"exponents":[2],"phi":[[1]]}
  static TripleModule from_json(std::string_view text);
  std::string to_json() const;

  unsigned long p() const { return n_.p(); }
  std::size_t l() const { return l_; }
  const PLocalModule& n() const { return n_; }
  const IntMatrix& phi() const { return phi_; }
  bool is_zero() const { return l_ == 0 && n_.rank() == 0 && n_.exponents().empty(); }

  FgAbGroup l_group() const;  // (Z/p)^l
  FgAbGroup n_group() const { return n_.group(); }
  // phi as a group homomorphism L -> N, socle coordinate i scaled by p^(e_i - 1).
  GroupHom phi_map() const;

  // "S", "fR", "gR", "G3", "eR", "E2" for indecomposables, else "(l=.., N=.., phi=..)".
  std::string name() const;
  bool operator==(const TripleModule&) const = default;

 private:
  std::size_t l_ = 0;
  PLocalModule n_;
  IntMatrix phi_;
};

TripleModule direct_sum(const std::vector<TripleModule>& summands);

struct TripleHom {
  IntMatrix alpha;  // l2 x l1 over F_p
  GroupHom beta;    // N1 -> N2 in the integral model
};

// beta o phi1 == phi2 o alpha, with matching shapes.
bool is_triple_hom(const TripleModule& m1, const TripleModule& m2, const TripleHom& h);
TripleHom compose(const TripleHom& g, const TripleHom& f);
TripleHom identity_hom(const TripleModule& m);
// alpha invertible mod p and beta bijective after localizing at p.
bool is_triple_iso(const TripleModule& m1, const TripleModule& m2, const TripleHom& h);

// f : m1 -> m2 and g : m2 -> m1 are morphisms with g f = 1 and f g = 1.
bool are_inverse_isos(const TripleModule& m1, const TripleModule& m2, const TripleHom& f, const TripleHom& g);

struct HomTriples {
  FgAbGroup group;                     // Hom_R(m1, m2) as a Z_(p)-module
  std::vector<TripleHom> generators;   // realize the canonical generators of group
};

// Solves the commuting-square system. Throws ValidationError on a p mismatch.
HomTriples hom_triples(const TripleModule& m1, const TripleModule& m2);

// First syzygy of m from the cover eR^l + fR^k -> m, k = number of
// generators of N. It has the form (0, K, 0).
TripleModule syzygy(const TripleModule& m);

// coker(Hom(P_0, m2) -> Hom(syzygy(m1), m2)).
FgAbGroup ext1_triples(const TripleModule& m1, const TripleModule& m2);

struct NormalForm {
  TripleModule module;  // phi a partial permutation: hit socle lines first, S columns last
  TripleHom iso;        // input -> module
  TripleHom inverse;    // module -> input
  std::vector<TripleModule> summands;
};

NormalForm normal_form(const TripleModule& m);
std::vector<TripleModule> decompose(const TripleModule& m);

struct Reassembly {
  bool isomorphic = false;
  TripleHom iso;  // direct_sum(summands) -> input
};

// Builds an isomorphism from the direct sum of the summands back to the
// input and checks it against an explicit inverse.
Reassembly reassemble(const TripleModule& m, const std::vector<TripleModule>& summands);

int pd_triple(const TripleModule& m);
// From the syzygy: 2 iff it has torsion, 0 iff Ext^1(m, syzygy) = 0, else 1.
int pd_homological(const TripleModule& m);

struct InjdimResult {
  int injdim = 0;
  // Ext^1(gR, m) for the reported non-injective summands.
  std::vector<std::pair<std::string, FgAbGroup>> witnesses;
};

InjdimResult injdim_triple(const TripleModule& m);

std::vector<TripleModule> enumerate_indecomposables(unsigned long p, unsigned bound);

// Vertices in enumeration order; r_summand exactly for eR and fR.
HomQuiver to_homquiver(unsigned bound, unsigned long p = 2);

}  // namespace tiltlab
