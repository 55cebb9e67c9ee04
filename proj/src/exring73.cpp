#include "tiltlab/exring73.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>

#include "tiltlab/error.hpp"
#include "tiltlab/torsion.hpp"

namespace tiltlab {

using nlohmann::json;

namespace {

Integer ipow(unsigned long p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

Integer inverse_mod(const Integer& a, unsigned long p) {
  Integer r;
  Integer m(p);
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw InvariantBreach("no inverse mod p");
  return r;
}

IntMatrix reduce_matrix(IntMatrix m, unsigned long p) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = reduce_mod(m(i, j), p);
  return m;
}

std::size_t rank_mod_p(IntMatrix m, unsigned long p) {
  m = reduce_matrix(std::move(m), p);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
    Integer inv = inverse_mod(m(rank, c), p);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer f = m(i, c) * inv;
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = reduce_mod(m(i, j) - f * m(rank, j), p);
    }
    ++rank;
  }
  return rank;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

// Exponents of the p-power torsion of g; throws if g has other torsion.
std::vector<unsigned> p_exponents(const FgAbGroup& g, unsigned long p) {
  std::vector<unsigned> out;
  for (const auto& d : g.torsion()) {
    unsigned long v = valuation(d, p);
    if (ipow(p, static_cast<unsigned>(v)) != d) throw InvariantBreach("torsion prime to p in a Z_(p)-model");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

void require_same_p(const TripleModule& a, const TripleModule& b) {
  if (a.p() != b.p())
    throw ValidationError("triples over different primes: " + std::to_string(a.p()) + " and " + std::to_string(b.p()));
}

// Cover P_0 = eR^l + fR^k -> m, on N-components: Z^k + (Z/p)^l -> N.
struct Cover {
  FgAbGroup p0;
  GroupHom pi;
  std::size_t k = 0;
};

Cover cover(const TripleModule& m) {
  Cover c;
  FgAbGroup n = m.n_group();
  c.k = n.num_generators();
  c.p0 = FgAbGroup(c.k, IntVector(m.l(), Integer(m.p())));
  GroupHom phi = m.phi_map();
  std::vector<IntVector> images;
  for (std::size_t j = 0; j < c.k; ++j) images.push_back(unit(c.k, j));
  for (std::size_t a = 0; a < m.l(); ++a) images.push_back(phi.matrix().col(a));
  c.pi = GroupHom::from_images(c.p0, n, images);
  return c;
}

}  // namespace

PLocalModule::PLocalModule(unsigned long p, std::size_t rank, std::vector<unsigned> exponents)
    : p_(p), rank_(rank), exponents_(std::move(exponents)) {
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  std::sort(exponents_.begin(), exponents_.end());
  for (unsigned e : exponents_)
    if (e == 0) throw ValidationError("torsion exponents must be positive");
}

FgAbGroup PLocalModule::group() const {
  IntVector t;
  for (unsigned e : exponents_) t.push_back(ipow(p_, e));
  return FgAbGroup(rank_, t);
}

TripleModule::TripleModule(std::size_t l, PLocalModule n, IntMatrix phi) : l_(l), n_(std::move(n)) {
  if (phi.rows() != n_.socle_dimension() || phi.cols() != l_) {
    if (!(phi.rows() == 0 && phi.cols() == 0 && (n_.socle_dimension() == 0 || l_ == 0)))
      throw ValidationError("phi must be " + std::to_string(n_.socle_dimension()) + " x " + std::to_string(l_));
    phi = IntMatrix(n_.socle_dimension(), l_);
  }
  phi_ = reduce_matrix(std::move(phi), n_.p());
}

TripleModule TripleModule::simple(unsigned long p) { return TripleModule(1, PLocalModule(p, 0, {}), IntMatrix(0, 1)); }
TripleModule TripleModule::free(unsigned long p) { return TripleModule(0, PLocalModule(p, 1, {}), IntMatrix(0, 0)); }
TripleModule TripleModule::cyclic_torsion(unsigned long p, unsigned r) {
  return TripleModule(0, PLocalModule(p, 0, {r}), IntMatrix(1, 0));
}
TripleModule TripleModule::cyclic_hit(unsigned long p, unsigned s) {
  return TripleModule(1, PLocalModule(p, 0, {s}), IntMatrix{{1}});
}

TripleModule TripleModule::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("triple JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("triple must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "p" && key != "l" && key != "rank" && key != "exponents" && key != "phi")
      throw ValidationError("unknown triple key " + key);
  for (const char* key : {"p", "l", "rank", "exponents", "phi"})
    if (!j.contains(key)) throw ValidationError(std::string("triple missing key ") + key);
  auto nonneg = [](const json& v, const char* what) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw ValidationError(std::string(what) + " must be a nonnegative integer");
    return v.get<unsigned long>();
  };
  unsigned long p = nonneg(j["p"], "p");
  std::size_t l = nonneg(j["l"], "l");
  std::size_t rank = nonneg(j["rank"], "rank");
  if (!j["exponents"].is_array()) throw ValidationError("exponents must be an array");
  std::vector<unsigned> exps;
  for (const auto& e : j["exponents"]) exps.push_back(static_cast<unsigned>(nonneg(e, "exponent")));
  if (!std::is_sorted(exps.begin(), exps.end())) throw ValidationError("exponents must be ascending");
  PLocalModule n(p, rank, exps);
  if (!j["phi"].is_array() || j["phi"].size() != exps.size())
    throw ValidationError("phi must have one row per torsion exponent");
  IntMatrix phi(exps.size(), l);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const auto& row = j["phi"][i];
    if (!row.is_array() || row.size() != l) throw ValidationError("phi rows must have l entries");
    for (std::size_t c = 0; c < l; ++c) phi(i, c) = Integer(static_cast<unsigned long>(nonneg(row[c], "phi entry")));
  }
  return TripleModule(l, n, phi);
}

std::string TripleModule::to_json() const {
  json j;
  j["p"] = p();
  j["l"] = l_;
  j["rank"] = n_.rank();
  j["exponents"] = n_.exponents();
  j["phi"] = json::array();
  for (std::size_t i = 0; i < phi_.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < phi_.cols(); ++c) row.push_back(phi_(i, c).get_ui());
    j["phi"].push_back(row);
  }
  return j.dump();
}

FgAbGroup TripleModule::l_group() const { return FgAbGroup(0, IntVector(l_, Integer(p()))); }

GroupHom TripleModule::phi_map() const {
  FgAbGroup n = n_group();
  IntMatrix m(n.num_generators(), l_);
  for (std::size_t i = 0; i < phi_.rows(); ++i)
    for (std::size_t c = 0; c < l_; ++c) m(n_.rank() + i, c) = phi_(i, c) * ipow(p(), n_.exponents()[i] - 1);
  return GroupHom(l_group(), n, m);
}

std::string TripleModule::name() const {
  const unsigned long p = this->p();
  if (*this == simple(p)) return "S";
  if (*this == free(p)) return "fR";
  if (l_ == 0 && n_.rank() == 0 && n_.exponents().size() == 1) {
    unsigned r = n_.exponents()[0];
    return r == 1 ? "gR" : "G" + std::to_string(r);
  }
  if (l_ == 1 && n_.rank() == 0 && n_.exponents().size() == 1 && phi_(0, 0) != 0) {
    unsigned s = n_.exponents()[0];
    if (phi_(0, 0) == 1) return s == 1 ? "eR" : "E" + std::to_string(s);
  }
  std::string ph;
  for (std::size_t i = 0; i < phi_.rows(); ++i) {
    ph += i ? ";" : "";
    for (std::size_t c = 0; c < phi_.cols(); ++c) ph += (c ? "," : "") + phi_(i, c).get_str();
  }
  return "(l=" + std::to_string(l_) + ", N=" + n_group().to_string() + ", phi=[" + ph + "])";
}

TripleModule direct_sum(const std::vector<TripleModule>& summands) {
  if (summands.empty()) throw ValidationError("direct sum of no triples");
  const unsigned long p = summands[0].p();
  struct Row {
    unsigned e;
    std::size_t summand, local;
  };
  std::vector<Row> rows;
  std::size_t l = 0, rank = 0;
  std::vector<std::size_t> col_offset;
  for (std::size_t s = 0; s < summands.size(); ++s) {
    require_same_p(summands[0], summands[s]);
    col_offset.push_back(l);
    l += summands[s].l();
    rank += summands[s].n().rank();
    for (std::size_t i = 0; i < summands[s].n().exponents().size(); ++i)
      rows.push_back({summands[s].n().exponents()[i], s, i});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.e < b.e; });
  std::vector<unsigned> exps;
  IntMatrix phi(rows.size(), l);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    exps.push_back(rows[r].e);
    const auto& s = summands[rows[r].summand];
    for (std::size_t c = 0; c < s.l(); ++c) phi(r, col_offset[rows[r].summand] + c) = s.phi()(rows[r].local, c);
  }
  return TripleModule(l, PLocalModule(p, rank, exps), phi);
}

bool is_triple_hom(const TripleModule& m1, const TripleModule& m2, const TripleHom& h) {
  if (m1.p() != m2.p()) return false;
  if (h.alpha.rows() != m2.l() || h.alpha.cols() != m1.l()) return false;
  if (h.beta.source() != m1.n_group() || h.beta.target() != m2.n_group()) return false;
  GroupHom alpha(m1.l_group(), m2.l_group(), h.alpha);
  return compose(h.beta, m1.phi_map()) == compose(m2.phi_map(), alpha);
}

TripleHom compose(const TripleHom& g, const TripleHom& f) {
  TripleHom h;
  h.alpha = g.alpha * f.alpha;
  h.beta = compose(g.beta, f.beta);
  return h;
}

TripleHom identity_hom(const TripleModule& m) {
  return {IntMatrix::identity(m.l()), GroupHom::identity(m.n_group())};
}

bool is_triple_iso(const TripleModule& m1, const TripleModule& m2, const TripleHom& h) {
  if (!is_triple_hom(m1, m2, h)) return false;
  if (m1.l() != m2.l() || rank_mod_p(h.alpha, m1.p()) != m1.l()) return false;
  KernelImageCokernel kic = hom_kernel_cokernel_image(h.beta);
  return p_local_part(kic.kernel.group, m1.p()).is_zero() && p_local_part(kic.cokernel, m1.p()).is_zero();
}

bool are_inverse_isos(const TripleModule& m1, const TripleModule& m2, const TripleHom& f, const TripleHom& g) {
  if (!is_triple_hom(m1, m2, f) || !is_triple_hom(m2, m1, g)) return false;
  const unsigned long p = m1.p();
  auto is_id = [p](const TripleHom& h, const TripleModule& m) {
    return reduce_matrix(h.alpha, p) == IntMatrix::identity(m.l()) && h.beta == GroupHom::identity(m.n_group());
  };
  return is_id(compose(g, f), m1) && is_id(compose(f, g), m2);
}

HomTriples hom_triples(const TripleModule& m1, const TripleModule& m2) {
  require_same_p(m1, m2);
  HomGroup ha = hom_group(m1.l_group(), m2.l_group());
  HomGroup hb = hom_group(m1.n_group(), m2.n_group());
  HomGroup ht = hom_group(m1.l_group(), m2.n_group());
  DirectSum pairs({ha.group(), hb.group()});
  GroupHom phi1 = m1.phi_map(), phi2 = m2.phi_map();
  const std::size_t g = pairs.group().num_generators();
  auto split = [&](const IntVector& x) {
    auto parts = pairs.split(x);
    return TripleHom{ha.morphism(parts[0]).matrix(), hb.morphism(parts[1])};
  };
  std::vector<IntVector> images;
  for (std::size_t i = 0; i < g; ++i) {
    TripleHom h = split(unit(g, i));
    GroupHom alpha(m1.l_group(), m2.l_group(), h.alpha);
    images.push_back(ht.coordinates(compose(h.beta, phi1) - compose(phi2, alpha)));
  }
  GroupHom square = GroupHom::from_images(pairs.group(), ht.group(), images);
  Subgroup k = hom_kernel(square);
  HomTriples out;
  out.group = FgAbGroup(k.group.rank(), k.group.torsion());
  p_exponents(out.group, m1.p());
  for (std::size_t i = 0; i < k.group.num_generators(); ++i)
    out.generators.push_back(split(k.inclusion(unit(k.group.num_generators(), i))));
  return out;
}

TripleModule syzygy(const TripleModule& m) {
  Cover c = cover(m);
  FgAbGroup k = hom_kernel(c.pi).group;
  std::vector<unsigned> exps = p_exponents(k, m.p());
  return TripleModule(0, PLocalModule(m.p(), k.rank(), exps), IntMatrix(exps.size(), 0));
}

FgAbGroup ext1_triples(const TripleModule& m1, const TripleModule& m2) {
  require_same_p(m1, m2);
  Cover c = cover(m1);
  Subgroup k = hom_kernel(c.pi);
  HomGroup hk = hom_group(k.group, m2.n_group());
  FgAbGroup n2 = m2.n_group();
  GroupHom phi2 = m2.phi_map();
  std::vector<IntVector> cols;
  auto add = [&](std::size_t p0_gen, const IntVector& value) {
    std::vector<IntVector> imgs(c.p0.num_generators(), n2.zero_element());
    imgs[p0_gen] = value;
    GroupHom f = GroupHom::from_images(c.p0, n2, imgs);
    cols.push_back(hk.coordinates(compose(f, k.inclusion)));
  };
  // Hom(eR, m2) = L2: the generator of eR goes to u in L2, its N-part to phi2(u).
  for (std::size_t a = 0; a < m1.l(); ++a)
    for (std::size_t t = 0; t < m2.l(); ++t) add(c.k + a, phi2(unit(m2.l(), t)));
  // Hom(fR, m2) = N2.
  for (std::size_t j = 0; j < c.k; ++j)
    for (std::size_t t = 0; t < n2.num_generators(); ++t) add(j, unit(n2.num_generators(), t));
  IntMatrix rel = hk.group().relation_matrix();
  for (std::size_t j = 0; j < rel.cols(); ++j) cols.push_back(rel.col(j));
  FgAbGroup ext = cokernel_group(IntMatrix::from_columns(hk.group().num_generators(), cols));
  p_exponents(ext, m1.p());
  return ext;
}

namespace {

// Elimination state for the normal form: phi_new = B phi P where B is the
// socle action of the automorphism beta of N.
struct Reducer {
  unsigned long p;
  std::size_t rank;
  std::vector<unsigned> exps;
  IntMatrix phi, P, P_inv, beta, beta_inv;

  void scale_col(std::size_t c, Integer u) {
    Integer ui = inverse_mod(u, p);
    for (std::size_t i = 0; i < phi.rows(); ++i) phi(i, c) = reduce_mod(phi(i, c) * u, p);
    for (std::size_t i = 0; i < P.rows(); ++i) P(i, c) = reduce_mod(P(i, c) * u, p);
    for (std::size_t j = 0; j < P_inv.cols(); ++j) P_inv(c, j) = reduce_mod(P_inv(c, j) * ui, p);
  }
  // col k -= f * col c
  void sub_col(std::size_t k, std::size_t c, Integer f) {
    for (std::size_t i = 0; i < phi.rows(); ++i) phi(i, k) = reduce_mod(phi(i, k) - f * phi(i, c), p);
    for (std::size_t i = 0; i < P.rows(); ++i) P(i, k) = reduce_mod(P(i, k) - f * P(i, c), p);
    for (std::size_t j = 0; j < P_inv.cols(); ++j) P_inv(c, j) = reduce_mod(P_inv(c, j) + f * P_inv(k, j), p);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < phi.rows(); ++i) std::swap(phi(i, a), phi(i, b));
    for (std::size_t i = 0; i < P.rows(); ++i) std::swap(P(i, a), P(i, b));
    for (std::size_t j = 0; j < P_inv.cols(); ++j) std::swap(P_inv(a, j), P_inv(b, j));
  }
  // row j += f * row i, needs exps[i] <= exps[j]: u_i -> u_i + f p^(e_j - e_i) u_j.
  void add_row(std::size_t j, std::size_t i, Integer f) {
    for (std::size_t c = 0; c < phi.cols(); ++c) phi(j, c) = reduce_mod(phi(j, c) + f * phi(i, c), p);
    Integer s = f * ipow(p, exps[j] - exps[i]);
    const std::size_t rj = rank + j, ri = rank + i;
    for (std::size_t c = 0; c < beta.cols(); ++c) beta(rj, c) += s * beta(ri, c);
    for (std::size_t r = 0; r < beta_inv.rows(); ++r) beta_inv(r, ri) -= s * beta_inv(r, rj);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < phi.cols(); ++c) std::swap(phi(i, c), phi(j, c));
    const std::size_t ri = rank + i, rj = rank + j;
    for (std::size_t c = 0; c < beta.cols(); ++c) std::swap(beta(ri, c), beta(rj, c));
    for (std::size_t r = 0; r < beta_inv.rows(); ++r) std::swap(beta_inv(r, ri), beta_inv(r, rj));
  }
};

}  // namespace

NormalForm normal_form(const TripleModule& m) {
  const std::size_t l = m.l(), rows = m.phi().rows();
  const std::size_t g = m.n_group().num_generators();
  Reducer red{m.p(), m.n().rank(), m.n().exponents(), m.phi(),
              IntMatrix::identity(l), IntMatrix::identity(l), IntMatrix::identity(g), IntMatrix::identity(g)};

  // Greedy pivots, always at a smallest available exponent so that every
  // other entry of the pivot column can be cleared by a legal row operation.
  std::vector<std::size_t> pivot_row_of_col(l, rows);
  std::vector<bool> row_used(rows, false);
  for (;;) {
    std::size_t br = rows, bc = l;
    for (std::size_t c = 0; c < l; ++c) {
      if (pivot_row_of_col[c] != rows) continue;
      for (std::size_t r = 0; r < rows; ++r)
        if (!row_used[r] && red.phi(r, c) != 0 && (br == rows || red.exps[r] < red.exps[br])) br = r, bc = c;
    }
    if (br == rows) break;
    red.scale_col(bc, inverse_mod(red.phi(br, bc), m.p()));
    for (std::size_t k = 0; k < l; ++k)
      if (k != bc && red.phi(br, k) != 0) red.sub_col(k, bc, red.phi(br, k));
    for (std::size_t j = 0; j < rows; ++j)
      if (j != br && red.phi(j, bc) != 0) red.add_row(j, br, -red.phi(j, bc));
    pivot_row_of_col[bc] = br;
    row_used[br] = true;
  }

  // Within each block of equal exponents, move the hit rows to the front.
  for (std::size_t b0 = 0; b0 < rows;) {
    std::size_t b1 = b0;
    while (b1 < rows && red.exps[b1] == red.exps[b0]) ++b1;
    std::size_t next = b0;
    for (std::size_t r = b0; r < b1; ++r) {
      if (!row_used[r]) continue;
      if (r != next) {
        red.swap_rows(r, next);
        std::swap(row_used[r], row_used[next]);
        for (auto& pr : pivot_row_of_col)
          if (pr == r) pr = next;
          else if (pr == next) pr = r;
      }
      ++next;
    }
    b0 = b1;
  }
  // Columns ordered by pivot row, unhit (kernel) columns last.
  std::vector<std::size_t> order(l);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pivot_row_of_col[a] < pivot_row_of_col[b]; });
  red.phi = red.phi.select_cols(order);
  red.P = red.P.select_cols(order);
  red.P_inv = red.P_inv.select_rows(order);

  NormalForm nf;
  nf.module = TripleModule(l, m.n(), red.phi);
  FgAbGroup n = m.n_group();
  nf.iso = {red.P_inv, GroupHom(n, n, red.beta)};
  nf.inverse = {red.P, GroupHom(n, n, red.beta_inv)};
  if (!are_inverse_isos(m, nf.module, nf.iso, nf.inverse))
    throw InvariantBreach("normal form certificate failed for " + m.name());

  const unsigned long p = m.p();
  std::size_t hit = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    bool is_hit = false;
    for (std::size_t c = 0; c < l; ++c) is_hit = is_hit || nf.module.phi()(r, c) != 0;
    unsigned e = red.exps[r];
    nf.summands.push_back(is_hit ? TripleModule::cyclic_hit(p, e) : TripleModule::cyclic_torsion(p, e));
    hit += is_hit;
  }
  for (std::size_t i = 0; i < m.n().rank(); ++i) nf.summands.push_back(TripleModule::free(p));
  for (std::size_t i = hit; i < l; ++i) nf.summands.push_back(TripleModule::simple(p));
  return nf;
}

std::vector<TripleModule> decompose(const TripleModule& m) { return normal_form(m).summands; }

Reassembly reassemble(const TripleModule& m, const std::vector<TripleModule>& summands) {
  Reassembly out;
  if (summands.empty()) {
    out.isomorphic = m.is_zero();
    return out;
  }
  TripleModule d = direct_sum(summands);
  NormalForm nd = normal_form(d), nm = normal_form(m);
  if (!(nd.module == nm.module)) return out;
  out.iso = compose(nm.inverse, nd.iso);
  out.iso.alpha = reduce_matrix(out.iso.alpha, m.p());
  TripleHom back = compose(nd.inverse, nm.iso);
  back.alpha = reduce_matrix(back.alpha, m.p());
  out.isomorphic = are_inverse_isos(d, m, out.iso, back);
  return out;
}

int pd_triple(const TripleModule& m) {
  int pd = 0;
  for (const auto& s : decompose(m)) {
    std::string n = s.name();
    if (n == "S") return 2;
    if (n != "eR" && n != "fR") pd = 1;
  }
  return pd;
}

int pd_homological(const TripleModule& m) {
  TripleModule omega = syzygy(m);
  if (!omega.n().exponents().empty()) return 2;
  if (m.is_zero() || omega.is_zero()) return 0;
  return ext1_triples(m, omega).is_zero() ? 0 : 1;
}

InjdimResult injdim_triple(const TripleModule& m) {
  InjdimResult out;
  const TripleModule g = TripleModule::cyclic_torsion(m.p(), 1);
  for (const auto& s : decompose(m)) {
    if (s.name() == "S") continue;
    FgAbGroup w = ext1_triples(g, s);
    if (w.is_zero()) throw InvariantBreach("Ext1(gR, " + s.name() + ") vanishes");
    out.injdim = 2;
    out.witnesses.emplace_back(s.name(), w);
  }
  return out;
}

std::vector<TripleModule> enumerate_indecomposables(unsigned long p, unsigned bound) {
  std::vector<TripleModule> out{TripleModule::simple(p), TripleModule::free(p)};
  for (unsigned r = 1; r <= bound; ++r) out.push_back(TripleModule::cyclic_torsion(p, r));
  for (unsigned s = 1; s <= bound; ++s) out.push_back(TripleModule::cyclic_hit(p, s));
  return out;
}

HomQuiver to_homquiver(unsigned bound, unsigned long p) {
  auto ind = enumerate_indecomposables(p, bound);
  const std::size_t n = ind.size();
  std::vector<QuiverVertex> vs;
  std::vector<std::vector<bool>> hom(n, std::vector<bool>(n)), ext(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = ind[i].name();
    vs.push_back({name, pd_triple(ind[i]), injdim_triple(ind[i]).injdim, name == "eR" || name == "fR"});
    for (std::size_t j = 0; j < n; ++j) {
      hom[i][j] = !hom_triples(ind[i], ind[j]).group.is_zero();
      ext[i][j] = !ext1_triples(ind[i], ind[j]).is_zero();
    }
  }
  return HomQuiver(std::move(vs), std::move(hom), std::move(ext), static_cast<int>(bound));
}

}  // namespace tiltlab
