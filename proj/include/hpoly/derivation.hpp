#pragma once

#include <vector>

#include "hpoly/polynomial.hpp"

namespace hpoly {

// First-order differential operator sum_i c_i d/dx_i with polynomial
// coefficients.  Applying it to a polynomial uses the product rule plus the
// declared chain rule of transcendental generators: d/dx_i acts on a
// generator g through the ring's table entry dg/dx_i, which must have been
// declared whenever c_i is nonzero and the argument involves g.
class Derivation {
 public:
  Derivation() = default;
  Derivation(RingPtr ring, std::vector<Polynomial> coeffs);

  static Derivation zero(const RingPtr& ring);
  // c * d/dx_i
  static Derivation along(const RingPtr& ring, int i, const Polynomial& c);

  const RingPtr& ring() const { return ring_; }
  const Polynomial& coeff(int i) const { return coeffs_.at(i); }
  const std::vector<Polynomial>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Derivation operator+(const Derivation& o) const;
  Derivation operator-(const Derivation& o) const;
  Derivation scaled(const Rational& c) const;
  Derivation scaled(const Polynomial& c) const;

  // Same operator expressed over a larger ring (variable i of this ring maps
  // to variable where[i] of target; target-only variables get coefficient 0).
  Derivation remap(const RingPtr& target, const std::vector<int>& where) const;

  Polynomial operator()(const Polynomial& f) const;

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
  }

  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> coeffs_;
};

// Commutator [a, b] = a b - b a, itself a first-order derivation.
Derivation commutator(const Derivation& a, const Derivation& b);

// Composition word of derivations, written left to right in operator order:
// word = (D_1, D_2, ..., D_r) is the operator D_1 D_2 ... D_r, so the LAST
// entry acts first.  The empty word is the identity.
using OperatorWord = std::vector<Derivation>;

Polynomial apply_word(const OperatorWord& word, const Polynomial& f);

}  // namespace hpoly
