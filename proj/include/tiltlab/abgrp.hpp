#pragma once

// Finitely generated abelian groups in invariant-factor normal form, their
// homomorphisms, and the Hom / Ext^1 bifunctors over the integers.
//
// Coordinates. A group Z^r + Z/d_1 + ... + Z/d_k has canonical generators
// ordered free-first; an element is an IntVector of length r + k whose
// torsion coordinates are reduced into [0, d_i).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiltlab/integer_matrix.hpp"

namespace tiltlab {

class FgAbGroup {
 public:
  FgAbGroup() = default;
  // Rejects factors < 2 and broken divisibility chains.
  FgAbGroup(std::size_t rank, IntVector torsion);

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }
  // Z/n; n == 0 gives Z and n == 1 the zero group.
  static FgAbGroup cyclic(const Integer& n);
  // "Z^2 + Z/2 + Z/6", "Z", "0". Summands may come in any order and need not
  // form a divisibility chain; the result is canonicalized.
  static FgAbGroup parse(std::string_view text);

  std::size_t rank() const { return rank_; }
  const IntVector& torsion() const { return torsion_; }
  std::size_t num_generators() const { return rank_ + torsion_.size(); }
  // 0 for a free generator.
  Integer generator_order(std::size_t i) const;

  bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return rank_ == 0; }
  Integer order() const;
  // Largest invariant factor (1 for a free or zero group): annihilates the torsion.
  Integer exponent() const;

  IntVector reduce(IntVector x) const;
  IntVector zero_element() const { return IntVector(num_generators()); }
  bool is_zero_element(const IntVector& x) const;

  // Presentation matrix: num_generators() x torsion().size(), one column per
  // torsion generator carrying its order.
  IntMatrix relation_matrix() const;

  // Primary decomposition view: prime -> exponents of the cyclic p-power
  // summands, ascending.
  std::map<Integer, std::vector<unsigned long>> primary_decomposition() const;

  std::string to_string() const;
  bool operator==(const FgAbGroup&) const = default;

 private:
  std::size_t rank_ = 0;
  IntVector torsion_;
};

// A group given by generators and relations together with the coordinate
// change to and from its canonical form.
struct Presentation {
  FgAbGroup group;
  IntMatrix to_canonical;    // group gens x raw gens
  IntMatrix from_canonical;  // raw gens x group gens

  IntVector canonical(const IntVector& raw) const { return group.reduce(to_canonical * raw); }
  IntVector raw(const IntVector& canonical) const { return from_canonical * canonical; }
};

// Group presented by `rows` generators subject to the columns of `relations`.
Presentation present(const IntMatrix& relations);

// Canonical group presented by the columns of m.
FgAbGroup cokernel_group(const IntMatrix& m);

class GroupHom {
 public:
  GroupHom() = default;
  // matrix is target.num_generators() x source.num_generators(); column i is
  // the image of canonical generator i. Entries are reduced against the
  // target; throws ValidationError if a torsion generator's image is not
  // annihilated by its order.
  GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);
  static GroupHom identity(const FgAbGroup& g);
  static GroupHom scalar(const FgAbGroup& g, const Integer& k);
  static GroupHom from_images(const FgAbGroup& source, const FgAbGroup& target,
                              const std::vector<IntVector>& images);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector operator()(const IntVector& x) const;
  GroupHom operator+(const GroupHom& o) const;
  GroupHom operator-(const GroupHom& o) const;
  GroupHom operator-() const;
  bool is_zero() const { return matrix_.is_zero(); }
  bool operator==(const GroupHom& o) const = default;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

// g o f
GroupHom compose(const GroupHom& g, const GroupHom& f);

struct Subgroup {
  FgAbGroup group;
  GroupHom inclusion;
};

// Subgroup of `ambient` generated by the columns of `generators`.
Subgroup subgroup_generated(const FgAbGroup& ambient, const IntMatrix& generators);

struct KernelImageCokernel {
  Subgroup kernel;
  Subgroup image;
  FgAbGroup cokernel;
  GroupHom projection;  // target -> cokernel
};

KernelImageCokernel hom_kernel_cokernel_image(const GroupHom& h);
Subgroup hom_kernel(const GroupHom& h);

// Some x with h(x) == y, if y lies in the image.
std::optional<IntVector> preimage(const GroupHom& h, const IntVector& y);

bool is_injective(const GroupHom& h);
bool is_surjective(const GroupHom& h);
bool is_isomorphism(const GroupHom& h);

// A_1 + ... + A_n with the coordinate change from concatenated summand
// coordinates to the canonical form of the sum.
class DirectSum {
 public:
  explicit DirectSum(std::vector<FgAbGroup> summands);

  const FgAbGroup& group() const { return presentation_.group; }
  const std::vector<FgAbGroup>& summands() const { return summands_; }
  IntVector inject(std::size_t k, const IntVector& x) const;
  IntVector combine(const std::vector<IntVector>& parts) const;
  std::vector<IntVector> split(const IntVector& x) const;
  GroupHom inclusion(std::size_t k) const;
  GroupHom projection(std::size_t k) const;

 private:
  std::vector<FgAbGroup> summands_;
  std::vector<std::size_t> offsets_;
  Presentation presentation_;
};

// Hom_Z(a, b) with an explicit coordinate system.
class HomGroup {
 public:
  HomGroup(FgAbGroup a, FgAbGroup b);

  const FgAbGroup& group() const { return presentation_.group; }
  const FgAbGroup& source() const { return a_; }
  const FgAbGroup& target() const { return b_; }
  // basis()[i] realizes canonical generator i of group().
  std::vector<GroupHom> basis() const;
  IntVector coordinates(const GroupHom& h) const;
  GroupHom morphism(const IntVector& coordinates) const;

 private:
  FgAbGroup a_, b_;
  IntVector unit_;  // per (target gen, source gen) block: value realizing 1
  Presentation presentation_;
};

HomGroup hom_group(const FgAbGroup& a, const FgAbGroup& b);

// A class in Ext^1_Z(t, f). For each torsion generator of t (order d_i) an
// element of f reduced modulo d_i f; free generators of t carry nothing.
class ExtElement {
 public:
  ExtElement() = default;
  ExtElement(FgAbGroup t, FgAbGroup f, std::vector<IntVector> coords);
  static ExtElement zero(const FgAbGroup& t, const FgAbGroup& f);

  const FgAbGroup& t() const { return t_; }
  const FgAbGroup& f() const { return f_; }
  const std::vector<IntVector>& coords() const { return coords_; }
  // Modulus of coordinate j in block i: gcd(d_i, order of f-generator j).
  Integer modulus(std::size_t i, std::size_t j) const;

  bool is_zero() const;
  ExtElement operator+(const ExtElement& o) const;
  ExtElement operator-(const ExtElement& o) const;
  ExtElement operator-() const;
  ExtElement scaled(const Integer& k) const;
  bool operator==(const ExtElement& o) const = default;

 private:
  FgAbGroup t_, f_;
  std::vector<IntVector> coords_;
};

// Ext^1_Z(t, f) = sum_i f / d_i f, with coordinates matching ExtElement.
class ExtGroup {
 public:
  ExtGroup(FgAbGroup t, FgAbGroup f);

  const FgAbGroup& group() const { return presentation_.group; }
  const FgAbGroup& t() const { return t_; }
  const FgAbGroup& f() const { return f_; }
  IntVector coordinates(const ExtElement& e) const;
  ExtElement element(const IntVector& coordinates) const;
  std::vector<ExtElement> basis() const;

 private:
  FgAbGroup t_, f_;
  Presentation presentation_;
};

ExtGroup ext_group(const FgAbGroup& t, const FgAbGroup& f);

// Ext^n_Z vanishes identically for n >= 2.
inline FgAbGroup higher_ext_group(int /*n*/, const FgAbGroup&, const FgAbGroup&) { return {}; }

// Covariant action along a : e.f() -> f'.
ExtElement ext_pushout(const ExtElement& e, const GroupHom& a);
// Contravariant action along b : t' -> e.t().
ExtElement ext_pullback(const ExtElement& e, const GroupHom& b);

struct Extension {
  FgAbGroup middle;
  GroupHom inclusion;   // f -> middle
  GroupHom projection;  // middle -> t
};

// 0 -> f -> E -> t -> 0 with E = (f + free lifts x_i) / (d_i x_i - coords_i).
Extension realize_extension(const ExtElement& e);

// Counts homomorphisms a -> b by enumerating, per generator of a, every
// element of b whose order divides the generator's order.
Integer brute_force_hom_count(const FgAbGroup& a, const FgAbGroup& b, const Integer& bound = 10000);

// All elements of a finite group, in lexicographic coordinate order.
std::vector<IntVector> enumerate_elements(const FgAbGroup& g, const Integer& bound = 10000);

// Z_(p) (x) g: same rank, torsion cut down to its p-primary part.
FgAbGroup p_local_part(const FgAbGroup& g, unsigned long p);

// Exponent of p in n (n != 0).
unsigned long valuation(const Integer& n, unsigned long p);

}  // namespace tiltlab
