#pragma once

// Torsion pairs (X_Q, Y_Q) in finitely generated abelian groups cut out by a
// set of primes Q: X_Q holds the finite groups whose order only involves
// primes of Q, Y_Q the groups whose torsion avoids Q.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tiltlab/abgrp.hpp"

namespace tiltlab {

// A finite set of primes. Only primes dividing some torsion order in play
// ever matter, so a finite set represents Q faithfully.
class PrimeSet {
 public:
  PrimeSet() = default;
  // Sorts and deduplicates; throws ValidationError on a non-prime.
  explicit PrimeSet(std::vector<unsigned long> primes);
  // "2,3,5", "{2,3}", "" (empty set).
  static PrimeSet parse(std::string_view text);

  const std::vector<unsigned long>& primes() const { return primes_; }
  bool empty() const { return primes_.empty(); }
  bool contains(unsigned long p) const;
  // Largest divisor of n built from primes of the set.
  Integer part_of(const Integer& n) const;
  std::string to_string() const;
  bool operator==(const PrimeSet&) const = default;

 private:
  std::vector<unsigned long> primes_;
};

bool is_prime(unsigned long n);

// m in X_Q
bool in_torsion_class(const PrimeSet& q, const FgAbGroup& m);
// m in Y_Q
bool in_torsionfree_class(const PrimeSet& q, const FgAbGroup& m);

struct TorsionPart {
  FgAbGroup t;
  GroupHom incl;
};

// Largest subgroup of m lying in X_Q.
TorsionPart torsion_part(const PrimeSet& q, const FgAbGroup& m);

struct TorsionSequence {
  FgAbGroup t;
  GroupHom incl;  // t -> m
  FgAbGroup f;
  GroupHom proj;  // m -> f
};

// 0 -> t -> m -> f -> 0 with t in X_Q and f in Y_Q.
TorsionSequence canonical_ses(const PrimeSet& q, const FgAbGroup& m);

// The map t-part(m) -> t-part(m') induced by h : m -> m'.
GroupHom restrict_to_torsion_parts(const PrimeSet& q, const GroupHom& h);

struct SplitCertificate {
  FgAbGroup a, b;
  FgAbGroup f_part;  // of a
  FgAbGroup t_part;  // of b
  FgAbGroup ext;     // Ext^1(f_part, t_part)
};

struct SplitReport {
  bool split = true;
  std::vector<SplitCertificate> certificates;
};

// Checks Ext^1(f-part of A, t-part of B) = 0 for each sampled pair.
SplitReport is_split(const PrimeSet& q, const std::vector<std::pair<FgAbGroup, FgAbGroup>>& sample);

struct CotiltingReport {
  bool cotilting = false;
  std::string witness;
};

// Y_Q is cotilting iff Z lies in it.
CotiltingReport is_cotilting(const PrimeSet& q);

}  // namespace tiltlab
