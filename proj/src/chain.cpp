#include "tiltlab/chain.hpp"

#include <algorithm>

#include "tiltlab/error.hpp"

namespace tiltlab {

FreeComplex::FreeComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> diffs)
    : lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
  if (ranks_.empty() ? !diffs_.empty() : diffs_.size() + 1 != ranks_.size())
    throw InvariantBreach("complex needs one differential between consecutive degrees");
  for (std::size_t i = 0; i < diffs_.size(); ++i)
    if (diffs_[i].rows() != ranks_[i + 1] || diffs_[i].cols() != ranks_[i])
      throw InvariantBreach("differential in degree " + std::to_string(lo_ + static_cast<int>(i)) + " has the wrong shape");
}

std::size_t FreeComplex::rank(int n) const {
  if (n < lo_ || n > hi()) return 0;
  return ranks_[static_cast<std::size_t>(n - lo_)];
}

IntMatrix FreeComplex::d(int n) const {
  if (n < lo_ || n >= hi()) return IntMatrix(rank(n + 1), rank(n));
  return diffs_[static_cast<std::size_t>(n - lo_)];
}

bool FreeComplex::is_complex() const {
  for (int n = lo_; n + 1 < hi(); ++n)
    if (!(d(n + 1) * d(n)).is_zero()) return false;
  return true;
}

ChainMap::ChainMap(FreeComplex source, FreeComplex target, std::map<int, IntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  for (const auto& [n, m] : components_)
    if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n))
      throw InvariantBreach("chain map component in degree " + std::to_string(n) + " has the wrong shape");
}

IntMatrix ChainMap::at(int n) const {
  auto it = components_.find(n);
  if (it == components_.end()) return IntMatrix(target_.rank(n), source_.rank(n));
  return it->second;
}

bool ChainMap::commutes() const {
  int lo = std::min(source_.lo(), target_.lo()) - 1;
  int hi = std::max(source_.hi(), target_.hi()) + 1;
  for (int n = lo; n <= hi; ++n)
    if (!(target_.d(n) * at(n) == at(n + 1) * source_.d(n))) return false;
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  std::map<int, IntMatrix> comp;
  for (int n = f.source().lo(); n <= f.source().hi(); ++n) comp[n] = g.at(n) * f.at(n);
  return ChainMap(f.source(), g.target(), std::move(comp));
}

namespace {

int lowest(const FreeComplex& a, int shift_a, const FreeComplex& b, int shift_b) {
  return std::min(a.lo() - shift_a, b.lo() - shift_b);
}
int highest(const FreeComplex& a, int shift_a, const FreeComplex& b, int shift_b) {
  return std::max(a.hi() - shift_a, b.hi() - shift_b);
}

}  // namespace

FreeComplex cone(const ChainMap& g) {
  const FreeComplex& x = g.source();
  const FreeComplex& y = g.target();
  const int lo = lowest(x, 1, y, 0), hi = highest(x, 1, y, 0);
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n + 1) + y.rank(n));
  for (int n = lo; n < hi; ++n) {
    IntMatrix m(x.rank(n + 2) + y.rank(n + 1), x.rank(n + 1) + y.rank(n));
    m.set_block(0, 0, -x.d(n + 1));
    m.set_block(x.rank(n + 2), 0, g.at(n + 1));
    m.set_block(x.rank(n + 2), x.rank(n + 1), y.d(n));
    diffs.push_back(std::move(m));
  }
  return FreeComplex(lo, std::move(ranks), std::move(diffs));
}

ChainMap cone_inclusion(const ChainMap& g) {
  FreeComplex c = cone(g);
  const FreeComplex& y = g.target();
  std::map<int, IntMatrix> comp;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    IntMatrix m(c.rank(n), y.rank(n));
    m.set_block(g.source().rank(n + 1), 0, IntMatrix::identity(y.rank(n)));
    comp[n] = std::move(m);
  }
  return ChainMap(y, std::move(c), std::move(comp));
}

FreeComplex cocone(const ChainMap& g) {
  const FreeComplex& x = g.source();
  const FreeComplex& y = g.target();
  const int lo = lowest(x, 0, y, -1), hi = highest(x, 0, y, -1);
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n) + y.rank(n - 1));
  for (int n = lo; n < hi; ++n) {
    IntMatrix m(x.rank(n + 1) + y.rank(n), x.rank(n) + y.rank(n - 1));
    m.set_block(0, 0, x.d(n));
    m.set_block(x.rank(n + 1), 0, -g.at(n));
    m.set_block(x.rank(n + 1), x.rank(n), -y.d(n - 1));
    diffs.push_back(std::move(m));
  }
  return FreeComplex(lo, std::move(ranks), std::move(diffs));
}

ChainMap cocone_projection(const ChainMap& g) {
  FreeComplex w = cocone(g);
  const FreeComplex& x = g.source();
  std::map<int, IntMatrix> comp;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    IntMatrix m(x.rank(n), w.rank(n));
    m.set_block(0, 0, IntMatrix::identity(x.rank(n)));
    comp[n] = std::move(m);
  }
  return ChainMap(std::move(w), x, std::move(comp));
}

namespace {

const FgAbGroup& group_at(const std::map<int, FgAbGroup>& h, int n) {
  static const FgAbGroup zero;
  auto it = h.find(n);
  return it == h.end() ? zero : it->second;
}

int sign(int n) { return n % 2 == 0 ? 1 : -1; }

}  // namespace

FreeComplex standard_complex(const std::map<int, FgAbGroup>& h) {
  if (h.empty()) return {};
  const int lo = h.begin()->first - 1, hi = h.rbegin()->first;
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;
  for (int m = lo; m <= hi; ++m)
    ranks.push_back(group_at(h, m).num_generators() + group_at(h, m + 1).torsion().size());
  for (int m = lo; m < hi; ++m) {
    const FgAbGroup& next = group_at(h, m + 1);
    IntMatrix d(ranks[static_cast<std::size_t>(m + 1 - lo)], ranks[static_cast<std::size_t>(m - lo)]);
    d.set_block(0, group_at(h, m).num_generators(), next.relation_matrix().scaled(sign(m + 1)));
    diffs.push_back(std::move(d));
  }
  return FreeComplex(lo, std::move(ranks), std::move(diffs));
}

IntMatrix lift_to_relations(const GroupHom& h) {
  const FgAbGroup& a = h.source();
  const FgAbGroup& b = h.target();
  IntMatrix target = h.matrix() * a.relation_matrix();
  IntMatrix rel(b.torsion().size(), a.torsion().size());
  for (std::size_t c = 0; c < rel.cols(); ++c) {
    auto x = solve_integer(b.relation_matrix(), target.col(c));
    if (!x) throw InvariantBreach("homomorphism does not lift to relation modules");
    rel.set_col(c, *x);
  }
  return rel;
}

ChainMap standard_lift(const std::map<int, FgAbGroup>& h_src, const std::map<int, FgAbGroup>& h_dst,
                       const std::map<int, GroupHom>& maps) {
  FreeComplex src = standard_complex(h_src), dst = standard_complex(h_dst);
  std::map<int, IntMatrix> comp;
  for (int m = src.lo(); m <= src.hi(); ++m) comp[m] = IntMatrix(dst.rank(m), src.rank(m));
  for (const auto& [n, h] : maps) {
    const FgAbGroup& a = group_at(h_src, n);
    const FgAbGroup& b = group_at(h_dst, n);
    if (h.source() != a || h.target() != b)
      throw InvariantBreach("lifted map in degree " + std::to_string(n) + " has the wrong endpoints");
    if (a.num_generators() == 0 || b.num_generators() == 0) continue;
    comp[n].set_block(0, 0, h.matrix());
    if (a.torsion().empty() || b.torsion().empty()) continue;
    IntMatrix rel = lift_to_relations(h);
    comp[n - 1].set_block(group_at(h_dst, n - 1).num_generators(), group_at(h_src, n - 1).num_generators(), rel);
  }
  return ChainMap(std::move(src), std::move(dst), std::move(comp));
}

Cohomology cohomology(const FreeComplex& c) {
  struct Degree {
    SmithForm snf;         // of d^n
    IntMatrix kernel;      // basis of ker d^n, as columns
    IntMatrix kernel_of;   // coordinates in that basis
    IntMatrix complement;  // columns spanning a complement of the kernel
    IntMatrix complement_of;
    Presentation h;        // H^n in kernel coordinates
  };
  std::map<int, Degree> deg;
  Cohomology out;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    Degree g;
    g.snf = smith_normal_form(c.d(n));
    const std::size_t r = g.snf.rank, dim = c.rank(n);
    std::vector<std::size_t> ker, com;
    for (std::size_t i = 0; i < dim; ++i) (i < r ? com : ker).push_back(i);
    g.kernel = g.snf.v.select_cols(ker);
    g.kernel_of = g.snf.v_inv.select_rows(ker);
    g.complement = g.snf.v.select_cols(com);
    g.complement_of = g.snf.v_inv.select_rows(com);
    deg[n] = std::move(g);
  }
  for (int n = c.lo(); n <= c.hi(); ++n) {
    Degree& g = deg[n];
    g.h = present(g.kernel_of * c.d(n - 1));
    out.groups[n] = g.h.group;
  }
  FreeComplex std_c = standard_complex(out.groups);

  std::map<int, IntMatrix> sec, ret;
  for (int m = c.lo(); m <= c.hi(); ++m) {
    const FgAbGroup& hm = out.groups[m];
    const std::size_t gm = hm.num_generators();
    const Degree& g = deg[m];

    // Section. Generators of H^m go to cocycle representatives; relations
    // of H^{m+1} go to cochains bounding (-1)^{m+1} times their relation.
    IntMatrix s(c.rank(m), std_c.rank(m));
    IntMatrix reps = g.kernel * g.h.from_canonical;
    s.set_block(0, 0, reps);
    // Retraction. Kernel part goes to canonical coordinates of its class,
    // the complement to relations of H^{m+1} solving the chain condition.
    IntMatrix r(std_c.rank(m), c.rank(m));
    r.set_block(0, 0, g.h.to_canonical * g.kernel_of);

    if (m + 1 <= c.hi()) {
      const FgAbGroup& next = out.groups[m + 1];
      const Degree& gn = deg[m + 1];
      IntMatrix rel = next.relation_matrix().scaled(sign(m + 1));
      if (!next.torsion().empty()) {
        IntMatrix next_reps = gn.kernel * gn.h.from_canonical;
        IntMatrix want = next_reps * rel;
        for (std::size_t k = 0; k < want.cols(); ++k) {
          auto x = solve_integer(c.d(m), want.col(k));
          if (!x) throw InvariantBreach("torsion class is not a boundary");
          for (std::size_t i = 0; i < x->size(); ++i) s(i, gm + k) = (*x)[i];
        }
        IntMatrix classes = gn.h.to_canonical * gn.kernel_of * c.d(m) * g.complement;
        IntMatrix rr(next.torsion().size(), g.complement.cols());
        for (std::size_t k = 0; k < classes.cols(); ++k) {
          auto x = solve_integer(rel, classes.col(k));
          if (!x) throw InvariantBreach("boundary class is not a relation");
          rr.set_col(k, *x);
        }
        r.set_block(gm, 0, rr * g.complement_of);
      }
    }
    sec[m] = std::move(s);
    ret[m] = std::move(r);
  }
  // Std(H) starts one degree below c; that degree carries relations of
  // H^{lo} only, which the section sends into c^{lo - 1} = 0.
  out.section = ChainMap(std_c, c, std::move(sec));
  out.retraction = ChainMap(c, std_c, std::move(ret));
  return out;
}

}  // namespace tiltlab
