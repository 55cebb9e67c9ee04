#pragma once

// Almost-hereditary detection on a finite Hom-quiver: a list of
// indecomposables with their projective and injective dimensions, which of
// them are summands of the regular module, and the relations
// Hom(-,-) != 0 and Ext^1(-,-) != 0.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tiltlab {

struct QuiverVertex {
  std::string name;
  int pd = 0;
  int injdim = 0;
  bool r_summand = false;
  bool operator==(const QuiverVertex&) const = default;
};

using VertexSet = std::set<std::size_t>;

inline constexpr const char* kHomQuiverSchema = "tiltlab.homquiver/1";

class HomQuiver {
 public:
  HomQuiver() = default;
  // Throws ValidationError on a broken invariant: square relations of the
  // right size, reflexive Hom, unique names, dimensions in {0,1,2},
  // r_summand vertices projective, at least one r_summand.
  HomQuiver(std::vector<QuiverVertex> vertices, std::vector<std::vector<bool>> hom_nonzero,
            std::vector<std::vector<bool>> ext1_nonzero, std::optional<int> bound = std::nullopt);

  // JSON document with "schema": "tiltlab.homquiver/1". Syntax errors raise
  // ParseError, schema violations ValidationError.
  static HomQuiver from_json(std::string_view text);
  std::string to_json() const;

  std::size_t size() const { return vertices_.size(); }
  const std::vector<QuiverVertex>& vertices() const { return vertices_; }
  const QuiverVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool hom(std::size_t from, std::size_t to) const { return hom_[from][to]; }
  bool ext1(std::size_t from, std::size_t to) const { return ext1_[from][to]; }
  std::optional<int> bound() const { return bound_; }
  VertexSet all() const;

  // Same data with hom(from, to) set; used to probe monotonicity.
  HomQuiver with_hom_edge(std::size_t from, std::size_t to) const;

  bool operator==(const HomQuiver&) const = default;

 private:
  std::vector<QuiverVertex> vertices_;
  std::vector<std::vector<bool>> hom_, ext1_;
  std::optional<int> bound_;
};

// "{S, fR}"
std::string format_set(const HomQuiver& q, const VertexSet& s);

struct TorsionPairOnQuiver {
  VertexSet x, y;
  bool operator==(const TorsionPairOnQuiver&) const = default;
};

struct CLevels {
  std::vector<VertexSet> levels;  // C_0, C_1, ... up to the first level adding nothing
  VertexSet closure;              // C
};

// C_0 = {pd = 2}, C_{n+1} = Hom-successors of C_n.
CLevels c_levels(const HomQuiver& q);

struct Verdict {
  bool passed = true;
  std::string detail;
};

// C == C_0 u C_1
Verdict verify_c_equals_c1(const HomQuiver& q);

// (C, complement of C)
TorsionPairOnQuiver torsion_pair_x0y0(const HomQuiver& q);

bool is_orthogonal(const HomQuiver& q, const TorsionPairOnQuiver& tp);

struct CheckItem {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

struct ConditionReport {
  bool passed = true;
  std::vector<CheckItem> items;
};

// split / pd(Y) <= 1 / R in Y. Throws ValidationError if tp is not a
// Hom-orthogonal bipartition.
ConditionReport check_condition_ii(const HomQuiver& q, const TorsionPairOnQuiver& tp);

// gldim <= 2 / pd <= 1 or injdim <= 1 per vertex.
ConditionReport check_condition_iii(const HomQuiver& q);

// No nonzero Hom from C_0 into an r_summand.
Verdict hom_to_r_check(const HomQuiver& q);

struct LRClasses {
  VertexSet l, r;
};

// Path reachability along hom_nonzero, length 0 included.
std::vector<std::vector<bool>> reachability(const HomQuiver& q);
LRClasses lr_classes(const HomQuiver& q);

// Every Hom-orthogonal bipartition (X, Y) with Ext^1(Y, X) = 0 and
// pd(Y) <= 1, in increasing order of the bitmask of X.
std::vector<TorsionPairOnQuiver> enumerate_split_torsion_pairs(const HomQuiver& q,
                                                               std::size_t max_vertices = 20);

bool contains_r_summands(const HomQuiver& q, const VertexSet& s);

}  // namespace tiltlab
