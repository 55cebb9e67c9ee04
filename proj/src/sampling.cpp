#include "tiltlab/sampling.hpp"

#include <vector>

namespace tiltlab {

long Sampler::uniform(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = span == 0 ? 0 : UINT64_MAX - UINT64_MAX % span;
  for (;;) {
    std::uint64_t x = engine_();
    if (span == 0) return static_cast<long>(x);
    if (x < limit) return lo + static_cast<long>(x % span);
  }
}

FgAbGroup Sampler::group(std::size_t max_rank, long max_factor, std::size_t max_factors) {
  std::size_t rank = static_cast<std::size_t>(uniform(0, static_cast<long>(max_rank)));
  std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long>(max_factors)));
  // Build the chain from the top: each factor divides the next one.
  std::vector<long> chain;
  long top = max_factor >= 2 ? uniform(2, max_factor) : 1;
  for (std::size_t i = 0; i < k && top >= 2; ++i) {
    chain.push_back(top);
    std::vector<long> divisors;
    for (long d = 2; d <= top; ++d)
      if (top % d == 0) divisors.push_back(d);
    if (uniform(0, 1) == 0) break;
    top = divisors[static_cast<std::size_t>(uniform(0, static_cast<long>(divisors.size()) - 1))];
  }
  IntVector t;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.push_back(Integer(*it));
  return FgAbGroup(rank, t);
}

HeartObject Sampler::heart_object(const PrimeSet& q, std::size_t max_rank) {
  FgAbGroup f = canonical_ses(q, group(max_rank, 60, 2)).f;
  // Torsion drawn from primes of Q so that the X_Q part is rarely empty.
  IntVector t;
  long n = 1;
  for (long k = uniform(0, 2); k > 0; --k) {
    long m = 1;
    for (unsigned long p : q.primes())
      for (long e = uniform(0, 2); e > 0; --e) m *= static_cast<long>(p);
    if (m > 1 && m % n == 0) t.push_back(Integer(m)), n = m;
  }
  return HeartObject(q, f, FgAbGroup(0, t));
}

HeartMorphism Sampler::heart_morphism(const HeartObject& x, const HeartObject& y, long spread) {
  HeartHomSpace h(x, y);
  IntVector c(h.group().num_generators());
  for (auto& v : c) v = uniform(-spread, spread);
  return h.morphism(c);
}

}  // namespace tiltlab
