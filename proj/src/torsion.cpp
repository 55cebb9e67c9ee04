#include "tiltlab/torsion.hpp"

#include <algorithm>
#include <cctype>

#include "tiltlab/error.hpp"

namespace tiltlab {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeSet::PrimeSet(std::vector<unsigned long> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  for (unsigned long p : primes_)
    if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
}

PrimeSet PrimeSet::parse(std::string_view text) {
  std::vector<unsigned long> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    try {
      out.push_back(std::stoul(cur));
    } catch (const std::exception&) {
      throw ParseError("bad prime '" + cur + "'");
    }
    cur.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else if (ch == ',' || ch == ' ' || ch == '{' || ch == '}') {
      flush();
    } else {
      throw ParseError("unexpected character '" + std::string(1, ch) + "' in prime set");
    }
  }
  flush();
  return PrimeSet(std::move(out));
}

bool PrimeSet::contains(unsigned long p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

Integer PrimeSet::part_of(const Integer& n) const {
  Integer rest = abs(n), part = 1;
  if (rest == 0) throw ValidationError("prime part of 0 is undefined");
  for (unsigned long p : primes_) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      part *= p;
    }
  }
  return part;
}

std::string PrimeSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + std::to_string(primes_[i]);
  return s + "}";
}

bool in_torsion_class(const PrimeSet& q, const FgAbGroup& m) {
  if (!m.is_finite()) return false;
  for (const auto& d : m.torsion())
    if (q.part_of(d) != d) return false;
  return true;
}

bool in_torsionfree_class(const PrimeSet& q, const FgAbGroup& m) {
  for (const auto& d : m.torsion())
    if (q.part_of(d) != 1) return false;
  return true;
}

// Torsion generator i of order d splits as Z/d^Q + Z/(d / d^Q); both chains
// d_i^Q and d_i / d_i^Q stay divisibility chains, so the parts are canonical
// without another Smith form.
TorsionPart torsion_part(const PrimeSet& q, const FgAbGroup& m) {
  IntVector orders;
  std::vector<IntVector> images;
  for (std::size_t i = 0; i < m.torsion().size(); ++i) {
    const Integer& d = m.torsion()[i];
    Integer dq = q.part_of(d);
    if (dq == 1) continue;
    orders.push_back(dq);
    IntVector x(m.num_generators());
    x[m.rank() + i] = d / dq;
    images.push_back(std::move(x));
  }
  FgAbGroup t(0, orders);
  return {t, GroupHom::from_images(t, m, images)};
}

TorsionSequence canonical_ses(const PrimeSet& q, const FgAbGroup& m) {
  TorsionPart tp = torsion_part(q, m);
  IntVector orders;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.torsion().size(); ++i) {
    const Integer& d = m.torsion()[i];
    Integer rest = d / q.part_of(d);
    if (rest == 1) continue;
    orders.push_back(rest);
    keep.push_back(m.rank() + i);
  }
  FgAbGroup f(m.rank(), orders);
  IntMatrix proj(f.num_generators(), m.num_generators());
  for (std::size_t i = 0; i < m.rank(); ++i) proj(i, i) = 1;
  for (std::size_t k = 0; k < keep.size(); ++k) proj(m.rank() + k, keep[k]) = 1;
  return {tp.t, tp.incl, f, GroupHom(m, f, proj)};
}

GroupHom restrict_to_torsion_parts(const PrimeSet& q, const GroupHom& h) {
  TorsionPart src = torsion_part(q, h.source());
  TorsionPart dst = torsion_part(q, h.target());
  GroupHom through = compose(h, src.incl);
  std::vector<IntVector> images;
  for (std::size_t i = 0; i < src.t.num_generators(); ++i) {
    IntVector e(src.t.num_generators());
    e[i] = 1;
    auto x = preimage(dst.incl, through(e));
    if (!x) throw InvariantBreach("homomorphism does not preserve Q-torsion");
    images.push_back(*x);
  }
  return GroupHom::from_images(src.t, dst.t, images);
}

SplitReport is_split(const PrimeSet& q, const std::vector<std::pair<FgAbGroup, FgAbGroup>>& sample) {
  SplitReport r;
  for (const auto& [a, b] : sample) {
    FgAbGroup fa = canonical_ses(q, a).f;
    FgAbGroup tb = torsion_part(q, b).t;
    FgAbGroup ext = ext_group(fa, tb).group();
    if (!ext.is_zero()) r.split = false;
    r.certificates.push_back({a, b, fa, tb, ext});
  }
  return r;
}

CotiltingReport is_cotilting(const PrimeSet& q) {
  bool ok = in_torsionfree_class(q, FgAbGroup::free(1));
  return {ok, ok ? "Z lies in Y_" + q.to_string() : "Z is not in Y_" + q.to_string()};
}

}  // namespace tiltlab
