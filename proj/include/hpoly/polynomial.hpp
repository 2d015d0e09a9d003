#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hpoly/errors.hpp"
#include "hpoly/rational.hpp"

namespace hpoly {

// Exponent vector of a monomial; one (possibly negative) entry per ring variable.
using Exponents = std::vector<int>;

// Graded lexicographic order, ascending: smaller total degree first; within a
// total degree, monomials in earlier variables come first (x1 < x2,
// x1^2 < x1*x2 < x2^2).  Total degree sums all exponents, including negative
// ones on Laurent variables.
struct MonomialLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

long total_degree(const Exponents& e);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

using TermMap = std::map<Exponents, Rational, MonomialLess>;

// Commutative ring of Laurent polynomials over the rationals, with optional
// transcendental generators.  A transcendental generator g is an extra
// variable carrying a table of declared formal partial derivatives dg/dx_i;
// no simplification rules are attached to it.  That is how functions such as
// L = log y enter exact computations: declare dL/dy = y^-1, dL/dx = 0.
class Ring {
 public:
  struct Variable {
    std::string name;
    bool laurent = false;        // negative exponents allowed
    bool transcendental = false; // carries a derivative table
  };

  static std::shared_ptr<Ring> make(std::vector<Variable> vars);

  // Convenience constructor for a plain polynomial ring with ordinary
  // variables named prefix1..prefixN.
  static std::shared_ptr<Ring> polynomial(const std::string& prefix, int n);

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::string& name(int i) const { return vars_.at(i).name; }
  bool laurent(int i) const { return vars_.at(i).laurent; }
  bool transcendental(int i) const { return vars_.at(i).transcendental; }
  int index_of(const std::string& name) const;  // -1 when absent

  // Declares the formal derivative of transcendental generator `gen` with
  // respect to variable `base`.  The value is given as a term map over this
  // very ring.  Call during setup, before derivations are applied.
  void declare_derivative(int gen, int base, TermMap value);
  bool has_derivative(int gen, int base) const;
  const TermMap& derivative(int gen, int base) const;

  // Structural equality: same variable names and flags.
  bool same_structure(const Ring& other) const;

 private:
  std::vector<Variable> vars_;
  std::map<std::pair<int, int>, TermMap> deriv_table_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

// Sparse exact multivariate polynomial: finitely many monomials, each with a
// nonzero Rational coefficient, held in graded-lex order.
class Polynomial {
 public:
  Polynomial() = default;  // no ring; usable only as a placeholder
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, const Rational& constant);

  static Polynomial variable(const RingPtr& ring, int i);
  static Polynomial monomial(const RingPtr& ring, Exponents e, const Rational& coeff);
  static Polynomial from_terms(const RingPtr& ring, TermMap terms);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t nterms() const { return terms_.size(); }

  // Max total degree over terms; -1 for the zero polynomial.
  long degree() const;

  Rational coeff(const Exponents& e) const;
  Rational constant_term() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Formal partial derivative with respect to variable i: pure exponent rule,
  // no chain rule through transcendental generators (Derivation adds that).
  Polynomial partial(int i) const;

  // Substitutes images[i] for variable i; the images live in `target`.
  // A negative exponent requires its image to be a single-term monomial.
  Polynomial compose(const RingPtr& target, const std::vector<Polynomial>& images) const;

  // Injects into `target`, sending variable i to target variable where[i].
  Polynomial remap(const RingPtr& target, const std::vector<int>& where) const;

  // Full evaluation at a rational point (Laurent variables must be nonzero
  // there; transcendental generators are treated as ordinary coordinates).
  Rational eval(const std::vector<Rational>& point) const;

  // Partial evaluation: entries of `values` that are set get substituted.
  Polynomial eval_partial(const std::vector<std::pair<int, Rational>>& values) const;

  // Terms with the given exponent on variable `var`, with that exponent
  // removed (used to read off coefficients of auxiliary symbols).
  Polynomial coeff_of(int var, int exponent) const;

  // Human-readable form, terms in ascending graded-lex order.
  std::string str() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  void check_exponents(const Exponents& e) const;

  RingPtr ring_;
  TermMap terms_;

  friend class Derivation;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace hpoly
