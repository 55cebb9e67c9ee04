#include "tiltlab/abgrp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "tiltlab/error.hpp"

namespace tiltlab {

// ---------------------------------------------------------------- FgAbGroup

FgAbGroup::FgAbGroup(std::size_t rank, IntVector torsion) : rank_(rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw ValidationError("invariant factor must be >= 2, got " + torsion_[i].get_str());
    if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw ValidationError("invariant factors must form a divisibility chain");
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& n) {
  if (n < 0) return cyclic(-n);
  if (n == 0) return free(1);
  if (n == 1) return {};
  return FgAbGroup(0, {n});
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Integer parse_integer(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected a nonnegative integer, got '" + s + "'");
  return Integer(s);
}

}  // namespace

FgAbGroup FgAbGroup::parse(std::string_view text) {
  std::size_t rank = 0;
  IntVector orders;
  std::string body = trim(text);
  if (body.empty()) throw ParseError("empty group description");
  std::size_t start = 0;
  for (;;) {
    std::size_t plus = body.find('+', start);
    std::string term = trim(std::string_view(body).substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (term == "0") {
    } else if (term == "Z") {
      rank += 1;
    } else if (term.rfind("Z^", 0) == 0) {
      rank += parse_integer(term.substr(2)).get_ui();
    } else if (term.rfind("Z/", 0) == 0) {
      Integer n = parse_integer(term.substr(2));
      if (n == 0) rank += 1;
      else if (n > 1) orders.push_back(n);
    } else {
      throw ParseError("unrecognized group summand '" + term + "'");
    }
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  if (orders.empty()) return free(rank);
  FgAbGroup t = cokernel_group(IntMatrix::diagonal(orders));
  return FgAbGroup(rank, t.torsion());
}

Integer FgAbGroup::generator_order(std::size_t i) const {
  if (i < rank_) return 0;
  return torsion_.at(i - rank_);
}

Integer FgAbGroup::order() const {
  if (!is_finite()) throw ValidationError("order of an infinite group");
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

Integer FgAbGroup::exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

IntVector FgAbGroup::reduce(IntVector x) const {
  if (x.size() != num_generators()) throw InvariantBreach("element length does not match group");
  for (std::size_t i = 0; i < torsion_.size(); ++i) x[rank_ + i] = reduce_mod(x[rank_ + i], torsion_[i]);
  return x;
}

bool FgAbGroup::is_zero_element(const IntVector& x) const {
  IntVector r = reduce(x);
  return std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix FgAbGroup::relation_matrix() const {
  IntMatrix m(num_generators(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) m(rank_ + i, i) = torsion_[i];
  return m;
}

namespace {

std::vector<std::pair<Integer, unsigned long>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned long>> out;
  for (unsigned long p = 2; p <= 1000000 && Integer(p) * p <= n; ++p) {
    unsigned long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(Integer(p), e);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw BoundExceeded("cannot factor invariant factor " + n.get_str() + " by trial division");
    out.emplace_back(n, 1);
  }
  return out;
}

}  // namespace

std::map<Integer, std::vector<unsigned long>> FgAbGroup::primary_decomposition() const {
  std::map<Integer, std::vector<unsigned long>> out;
  for (const auto& d : torsion_)
    for (const auto& [p, e] : factorize(d)) out[p].push_back(e);
  return out;
}

std::string FgAbGroup::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  if (rank_ == 1) parts.emplace_back("Z");
  else if (rank_ > 1) parts.push_back("Z^" + std::to_string(rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  return s;
}

// ------------------------------------------------------------- presentation

Presentation present(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  SmithForm s = smith_normal_form(relations);
  std::vector<std::size_t> free_idx, tor_idx;
  IntVector tor;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = i < s.rank ? s.d(i, i) : Integer(0);
    if (d == 0) free_idx.push_back(i);
    else if (d > 1) {
      tor_idx.push_back(i);
      tor.push_back(d);
    }
  }
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tor_idx.begin(), tor_idx.end());
  Presentation p;
  p.group = FgAbGroup(free_idx.size(), tor);
  p.to_canonical = s.u.select_rows(order);
  p.from_canonical = s.u_inv.select_cols(order);
  return p;
}

FgAbGroup cokernel_group(const IntMatrix& m) { return present(m).group; }

// ----------------------------------------------------------------- GroupHom

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.num_generators() || matrix_.cols() != source_.num_generators())
    throw ValidationError("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", expected " +
                          std::to_string(target_.num_generators()) + "x" + std::to_string(source_.num_generators()));
  for (std::size_t j = 0; j < matrix_.rows(); ++j) {
    Integer oj = target_.generator_order(j);
    for (std::size_t i = 0; i < matrix_.cols(); ++i) {
      Integer& x = matrix_(j, i);
      x = reduce_mod(x, oj);
      Integer oi = source_.generator_order(i);
      if (oi == 0 || x == 0) continue;
      if (oj == 0 || !mpz_divisible_p(Integer(oi * x).get_mpz_t(), oj.get_mpz_t()))
        throw ValidationError("homomorphism not well defined: generator " + std::to_string(i) + " of order " +
                              oi.get_str() + " maps to an element of larger order");
    }
  }
}

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return GroupHom(source, target, IntMatrix(target.num_generators(), source.num_generators()));
}

GroupHom GroupHom::identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.num_generators())); }

GroupHom GroupHom::scalar(const FgAbGroup& g, const Integer& k) {
  return GroupHom(g, g, IntMatrix::identity(g.num_generators()).scaled(k));
}

GroupHom GroupHom::from_images(const FgAbGroup& source, const FgAbGroup& target,
                               const std::vector<IntVector>& images) {
  if (images.size() != source.num_generators()) throw ValidationError("wrong number of generator images");
  return GroupHom(source, target, IntMatrix::from_columns(target.num_generators(), images));
}

IntVector GroupHom::operator()(const IntVector& x) const { return target_.reduce(matrix_ * x); }

GroupHom GroupHom::operator+(const GroupHom& o) const {
  if (source_ != o.source_ || target_ != o.target_) throw ValidationError("sum of homomorphisms with different endpoints");
  return GroupHom(source_, target_, matrix_ + o.matrix_);
}

GroupHom GroupHom::operator-(const GroupHom& o) const {
  if (source_ != o.source_ || target_ != o.target_)
    throw ValidationError("difference of homomorphisms with different endpoints");
  return GroupHom(source_, target_, matrix_ - o.matrix_);
}

GroupHom GroupHom::operator-() const { return GroupHom(source_, target_, -matrix_); }

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target() != g.source())
    throw ValidationError("cannot compose: " + f.target().to_string() + " is not " + g.source().to_string());
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

// ------------------------------------------------ kernels, images, cokernels

Subgroup subgroup_generated(const FgAbGroup& ambient, const IntMatrix& generators) {
  const std::size_t s = generators.cols();
  IntMatrix basis = kernel_basis(hstack(generators, ambient.relation_matrix()));
  Presentation p = present(basis.block(0, s, 0, basis.cols()));
  return {p.group, GroupHom(p.group, ambient, generators * p.from_canonical)};
}

Subgroup hom_kernel(const GroupHom& h) {
  IntMatrix ker = kernel_basis(hstack(h.matrix(), h.target().relation_matrix()));
  return subgroup_generated(h.source(), ker.block(0, h.source().num_generators(), 0, ker.cols()));
}

KernelImageCokernel hom_kernel_cokernel_image(const GroupHom& h) {
  const FgAbGroup& a = h.source();
  const FgAbGroup& b = h.target();
  IntMatrix stacked = hstack(h.matrix(), b.relation_matrix());
  IntMatrix ker = kernel_basis(stacked);
  Subgroup kernel = subgroup_generated(a, ker.block(0, a.num_generators(), 0, ker.cols()));
  Subgroup image = subgroup_generated(b, h.matrix());
  Presentation c = present(stacked);
  GroupHom proj(b, c.group, c.to_canonical);
  return {std::move(kernel), std::move(image), c.group, std::move(proj)};
}

std::optional<IntVector> preimage(const GroupHom& h, const IntVector& y) {
  auto x = solve_integer(hstack(h.matrix(), h.target().relation_matrix()), y);
  if (!x) return std::nullopt;
  x->resize(h.source().num_generators());
  return h.source().reduce(*x);
}

bool is_injective(const GroupHom& h) {
  IntMatrix ker = kernel_basis(hstack(h.matrix(), h.target().relation_matrix()));
  return subgroup_generated(h.source(), ker.block(0, h.source().num_generators(), 0, ker.cols())).group.is_zero();
}

bool is_surjective(const GroupHom& h) {
  return cokernel_group(hstack(h.matrix(), h.target().relation_matrix())).is_zero();
}

bool is_isomorphism(const GroupHom& h) { return is_injective(h) && is_surjective(h); }

// ---------------------------------------------------------------- DirectSum

DirectSum::DirectSum(std::vector<FgAbGroup> summands) : summands_(std::move(summands)) {
  IntMatrix rel;
  std::size_t total = 0;
  for (const auto& g : summands_) {
    offsets_.push_back(total);
    total += g.num_generators();
    rel = block_diagonal(rel, g.relation_matrix());
  }
  offsets_.push_back(total);
  presentation_ = present(rel);
}

IntVector DirectSum::inject(std::size_t k, const IntVector& x) const {
  IntVector raw(offsets_.back());
  for (std::size_t i = 0; i < x.size(); ++i) raw[offsets_[k] + i] = x[i];
  return presentation_.canonical(raw);
}

IntVector DirectSum::combine(const std::vector<IntVector>& parts) const {
  IntVector raw(offsets_.back());
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (std::size_t i = 0; i < parts[k].size(); ++i) raw[offsets_[k] + i] = parts[k][i];
  return presentation_.canonical(raw);
}

std::vector<IntVector> DirectSum::split(const IntVector& x) const {
  IntVector raw = presentation_.raw(x);
  std::vector<IntVector> parts;
  for (std::size_t k = 0; k < summands_.size(); ++k)
    parts.push_back(summands_[k].reduce(IntVector(raw.begin() + static_cast<long>(offsets_[k]),
                                                  raw.begin() + static_cast<long>(offsets_[k + 1]))));
  return parts;
}

GroupHom DirectSum::inclusion(std::size_t k) const {
  std::vector<IntVector> images;
  for (std::size_t i = 0; i < summands_[k].num_generators(); ++i) {
    IntVector e(summands_[k].num_generators());
    e[i] = 1;
    images.push_back(inject(k, e));
  }
  return GroupHom::from_images(summands_[k], group(), images);
}

GroupHom DirectSum::projection(std::size_t k) const {
  return GroupHom(group(), summands_[k],
                  presentation_.from_canonical.block(offsets_[k], offsets_[k + 1], 0, group().num_generators()));
}

// ----------------------------------------------------------------- HomGroup

HomGroup::HomGroup(FgAbGroup a, FgAbGroup b) : a_(std::move(a)), b_(std::move(b)) {
  const std::size_t na = a_.num_generators(), nb = b_.num_generators();
  IntVector orders(na * nb);
  unit_.assign(na * nb, 0);
  for (std::size_t j = 0; j < nb; ++j) {
    Integer oj = b_.generator_order(j);
    for (std::size_t i = 0; i < na; ++i) {
      Integer oi = a_.generator_order(i);
      std::size_t k = j * na + i;
      if (oj == 0) {
        orders[k] = oi == 0 ? 0 : 1;
        unit_[k] = oi == 0 ? 1 : 0;
      } else if (oi == 0) {
        orders[k] = oj;
        unit_[k] = 1;
      } else {
        Integer g = gcd(oi, oj);
        orders[k] = g;
        unit_[k] = oj / g;
      }
    }
  }
  presentation_ = present(IntMatrix::diagonal(orders));
}

std::vector<GroupHom> HomGroup::basis() const {
  std::vector<GroupHom> out;
  for (std::size_t c = 0; c < group().num_generators(); ++c) {
    IntVector e(group().num_generators());
    e[c] = 1;
    out.push_back(morphism(e));
  }
  return out;
}

IntVector HomGroup::coordinates(const GroupHom& h) const {
  if (h.source() != a_ || h.target() != b_) throw ValidationError("homomorphism does not belong to this Hom group");
  const std::size_t na = a_.num_generators();
  IntVector raw(unit_.size());
  for (std::size_t k = 0; k < unit_.size(); ++k) {
    if (unit_[k] == 0) continue;
    const Integer& x = h.matrix()(k / na, k % na);
    if (!mpz_divisible_p(x.get_mpz_t(), unit_[k].get_mpz_t()))
      throw InvariantBreach("homomorphism entry outside the admissible subgroup");
    mpz_divexact(raw[k].get_mpz_t(), x.get_mpz_t(), unit_[k].get_mpz_t());
  }
  return presentation_.canonical(raw);
}

GroupHom HomGroup::morphism(const IntVector& coordinates) const {
  IntVector raw = presentation_.raw(group().reduce(coordinates));
  const std::size_t na = a_.num_generators();
  IntMatrix m(b_.num_generators(), na);
  for (std::size_t k = 0; k < unit_.size(); ++k) m(k / na, k % na) = raw[k] * unit_[k];
  return GroupHom(a_, b_, m);
}

HomGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) { return HomGroup(a, b); }

// --------------------------------------------------------------- ExtElement

ExtElement::ExtElement(FgAbGroup t, FgAbGroup f, std::vector<IntVector> coords)
    : t_(std::move(t)), f_(std::move(f)), coords_(std::move(coords)) {
  if (coords_.size() != t_.torsion().size())
    throw ValidationError("extension class needs one coordinate per torsion generator of " + t_.to_string());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].size() != f_.num_generators())
      throw ValidationError("extension coordinate has wrong length for " + f_.to_string());
    for (std::size_t j = 0; j < coords_[i].size(); ++j) coords_[i][j] = reduce_mod(coords_[i][j], modulus(i, j));
  }
}

ExtElement ExtElement::zero(const FgAbGroup& t, const FgAbGroup& f) {
  return ExtElement(t, f, std::vector<IntVector>(t.torsion().size(), IntVector(f.num_generators())));
}

Integer ExtElement::modulus(std::size_t i, std::size_t j) const {
  return gcd(t_.torsion()[i], f_.generator_order(j));
}

bool ExtElement::is_zero() const {
  for (const auto& c : coords_)
    for (const auto& x : c)
      if (x != 0) return false;
  return true;
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
  if (t_ != o.t_ || f_ != o.f_) throw ValidationError("Baer sum of classes in different Ext groups");
  std::vector<IntVector> c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += o.coords_[i][j];
  return ExtElement(t_, f_, std::move(c));
}

ExtElement ExtElement::operator-(const ExtElement& o) const { return *this + (-o); }

ExtElement ExtElement::operator-() const { return scaled(-1); }

ExtElement ExtElement::scaled(const Integer& k) const {
  std::vector<IntVector> c = coords_;
  for (auto& v : c)
    for (auto& x : v) x *= k;
  return ExtElement(t_, f_, std::move(c));
}

// ----------------------------------------------------------------- ExtGroup

ExtGroup::ExtGroup(FgAbGroup t, FgAbGroup f) : t_(std::move(t)), f_(std::move(f)) {
  const std::size_t nf = f_.num_generators();
  IntVector orders(t_.torsion().size() * nf);
  for (std::size_t i = 0; i < t_.torsion().size(); ++i)
    for (std::size_t j = 0; j < nf; ++j) orders[i * nf + j] = gcd(t_.torsion()[i], f_.generator_order(j));
  presentation_ = present(IntMatrix::diagonal(orders));
}

IntVector ExtGroup::coordinates(const ExtElement& e) const {
  if (e.t() != t_ || e.f() != f_) throw ValidationError("extension class does not belong to this Ext group");
  IntVector raw;
  for (const auto& c : e.coords()) raw.insert(raw.end(), c.begin(), c.end());
  return presentation_.canonical(raw);
}

ExtElement ExtGroup::element(const IntVector& coordinates) const {
  IntVector raw = presentation_.raw(group().reduce(coordinates));
  const std::size_t nf = f_.num_generators();
  std::vector<IntVector> c(t_.torsion().size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = IntVector(raw.begin() + static_cast<long>(i * nf), raw.begin() + static_cast<long>((i + 1) * nf));
  return ExtElement(t_, f_, std::move(c));
}

std::vector<ExtElement> ExtGroup::basis() const {
  std::vector<ExtElement> out;
  for (std::size_t c = 0; c < group().num_generators(); ++c) {
    IntVector e(group().num_generators());
    e[c] = 1;
    out.push_back(element(e));
  }
  return out;
}

ExtGroup ext_group(const FgAbGroup& t, const FgAbGroup& f) { return ExtGroup(t, f); }

ExtElement ext_pushout(const ExtElement& e, const GroupHom& a) {
  if (a.source() != e.f()) throw ValidationError("pushout map must start at the extension kernel " + e.f().to_string());
  std::vector<IntVector> c;
  for (const auto& x : e.coords()) c.push_back(a(x));
  return ExtElement(e.t(), a.target(), std::move(c));
}

ExtElement ext_pullback(const ExtElement& e, const GroupHom& b) {
  if (b.target() != e.t()) throw ValidationError("pullback map must end at the extension quotient " + e.t().to_string());
  const FgAbGroup& tp = b.source();
  const FgAbGroup& t = e.t();
  const std::size_t nf = e.f().num_generators();
  std::vector<IntVector> c(tp.torsion().size(), IntVector(nf));
  // The lift of b to the relation modules sends relation i' of t' to
  // sum_j (b_{j,i'} d'_{i'} / d_j) * relation j of t.
  for (std::size_t ip = 0; ip < tp.torsion().size(); ++ip) {
    const Integer& dp = tp.torsion()[ip];
    for (std::size_t j = 0; j < t.torsion().size(); ++j) {
      const Integer& entry = b.matrix()(t.rank() + j, tp.rank() + ip);
      if (entry == 0) continue;
      Integer lift;
      mpz_divexact(lift.get_mpz_t(), Integer(entry * dp).get_mpz_t(), t.torsion()[j].get_mpz_t());
      for (std::size_t k = 0; k < nf; ++k) c[ip][k] += lift * e.coords()[j][k];
    }
  }
  return ExtElement(tp, e.f(), std::move(c));
}

Extension realize_extension(const ExtElement& e) {
  const FgAbGroup& f = e.f();
  const FgAbGroup& t = e.t();
  const std::size_t nf = f.num_generators(), nt = t.num_generators();
  IntMatrix rel(nf + nt, f.torsion().size() + t.torsion().size());
  rel.set_block(0, 0, f.relation_matrix());
  for (std::size_t i = 0; i < t.torsion().size(); ++i) {
    std::size_t col = f.torsion().size() + i;
    rel(nf + t.rank() + i, col) = t.torsion()[i];
    for (std::size_t j = 0; j < nf; ++j) rel(j, col) = -e.coords()[i][j];
  }
  Presentation p = present(rel);
  std::vector<IntVector> incl;
  for (std::size_t j = 0; j < nf; ++j) {
    IntVector raw(nf + nt);
    raw[j] = 1;
    incl.push_back(p.canonical(raw));
  }
  GroupHom inclusion = GroupHom::from_images(f, p.group, incl);
  GroupHom projection(p.group, t, p.from_canonical.block(nf, nf + nt, 0, p.group.num_generators()));
  return {p.group, std::move(inclusion), std::move(projection)};
}

// ------------------------------------------------------------------ oracles

std::vector<IntVector> enumerate_elements(const FgAbGroup& g, const Integer& bound) {
  if (!g.is_finite()) throw ValidationError("cannot enumerate the infinite group " + g.to_string());
  if (g.order() > bound) throw BoundExceeded("group order " + g.order().get_str() + " exceeds bound " + bound.get_str());
  std::vector<IntVector> out;
  IntVector x(g.num_generators());
  for (;;) {
    out.push_back(x);
    std::size_t i = 0;
    for (; i < x.size(); ++i) {
      x[i] += 1;
      if (x[i] < g.torsion()[i]) break;
      x[i] = 0;
    }
    if (i == x.size()) break;
  }
  return out;
}

Integer brute_force_hom_count(const FgAbGroup& a, const FgAbGroup& b, const Integer& bound) {
  if (!a.is_finite() || !b.is_finite()) throw ValidationError("brute-force Hom count needs finite groups");
  if (a.order() > bound) throw BoundExceeded("source order exceeds bound " + bound.get_str());
  std::vector<IntVector> elements = enumerate_elements(b, bound);
  Integer count = 1;
  for (const auto& d : a.torsion()) {
    Integer admissible = 0;
    for (const auto& y : elements) {
      IntVector dy = y;
      for (auto& v : dy) v *= d;
      if (b.is_zero_element(dy)) ++admissible;
    }
    count *= admissible;
  }
  return count;
}

unsigned long valuation(const Integer& n, unsigned long p) {
  if (n == 0) throw ValidationError("valuation of zero");
  Integer m = abs(n);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    m /= p;
    ++v;
  }
  return v;
}

FgAbGroup p_local_part(const FgAbGroup& g, unsigned long p) {
  IntVector t;
  for (const auto& d : g.torsion()) {
    unsigned long v = valuation(d, p);
    if (v == 0) continue;
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, v);
    t.push_back(q);
  }
  return FgAbGroup(g.rank(), t);
}

}  // namespace tiltlab
