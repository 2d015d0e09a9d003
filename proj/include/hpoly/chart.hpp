#pragma once

#include <memory>
#include <vector>

#include "hpoly/derivation.hpp"
#include "hpoly/lie_algebra.hpp"

namespace hpoly {

// Baker-Campbell-Hausdorff product in exponential coordinates of the first
// kind, via the Dynkin commutator series truncated past bracket length equal
// to the nilpotency step.  Entries of x and y are polynomials over a common
// ring (symbolic coordinates are just ring variables).
PolyVec bch(const LieAlgebra& A, const PolyVec& x, const PolyVec& y);
RatVec bch(const LieAlgebra& A, const RatVec& x, const RatVec& y);

// Group element in exponential coordinates of the first kind.  The identity
// is the zero vector and inversion is negation.
struct GroupPoint {
  PolyVec coords;
  static GroupPoint identity(const RingPtr& ring, int n);
  GroupPoint inverse() const;
};

GroupPoint bch_product(const LieAlgebra& A, const GroupPoint& p, const GroupPoint& q);

enum class ChartKind { FirstKind, SecondKind };

// Polynomial chart on the simply connected group of a nilpotent Lie algebra.
// First kind: p = exp(a_1 X_1 + ... + a_n X_n).  Second kind: p =
// exp(x_{o_1} X_{o_1}) ... exp(x_{o_n} X_{o_n}) with a declared factor order
// (default descending, i.e. p = exp(x_n X_n) ... exp(x_1 X_1)).  Conversion
// maps in both directions are computed on construction and verified to be
// mutually inverse polynomial maps.
class Chart {
 public:
  static Chart first_kind(const LieAlgebra& A, const std::string& prefix = "a");
  static Chart second_kind(const LieAlgebra& A, const std::string& prefix = "x");
  static Chart second_kind(const LieAlgebra& A, std::vector<int> factor_order,
                           const std::string& prefix);

  ChartKind kind() const { return kind_; }
  int dim() const { return n_; }
  const LieAlgebra& algebra() const { return *algebra_; }
  const RingPtr& ring() const { return ring_; }
  // Factor order of a second-kind chart, leftmost factor first (zero-based).
  const std::vector<int>& factor_order() const { return factors_; }

  // First-kind coordinates of the chart point, as polynomials in chart
  // coordinates (the identity map on a first-kind chart).
  const PolyVec& to_first_map() const { return to_first_; }

  // Chart coordinates of a point given by first-kind coordinates over an
  // arbitrary ring.
  PolyVec from_first(const PolyVec& first_coords) const;

  // Chart coordinates of the product p * exp(sum_i arg_i X_i), both sides in
  // chart coordinates over a common ring.
  PolyVec chart_coords_of_point(const PolyVec& first_coords) const { return from_first(first_coords); }

 private:
  Chart() = default;
  void finish(const LieAlgebra& A);  // builds from_first_, verifies roundtrips

  ChartKind kind_ = ChartKind::FirstKind;
  int n_ = 0;
  std::shared_ptr<const LieAlgebra> algebra_;
  RingPtr ring_;
  std::vector<int> factors_;
  PolyVec to_first_;   // over ring_
  RingPtr aux_ring_;   // internal first-kind symbols
  PolyVec from_first_; // over aux_ring_
};

// Polynomials over src.ring() expressing dst coordinates of the same point.
PolyVec chart_conversion_map(const Chart& src, const Chart& dst);

// Function f given in src chart coordinates, re-expressed in dst coordinates.
Polynomial change_chart(const Polynomial& f, const Chart& src, const Chart& dst);

// Left-invariant vector fields of the basis elements in the given chart:
// X_i f(p) = d/dt f(p * exp(t X_i)) at t = 0.  Requires a nilpotent algebra;
// the built-in non-nilpotent counterexamples carry hardcoded fields instead.
std::vector<Derivation> left_invariant_fields(const Chart& chart);

long weighted_degree(const Exponents& e, const std::vector<int>& weights);
long weighted_degree(const Polynomial& f, const std::vector<int>& weights);  // max; -1 for 0
Polynomial weighted_component(const Polynomial& f, const std::vector<int>& weights, long d);

// Weighted dilation x_i -> lambda^{w_i} x_i with a rational factor.
Polynomial dilate(const Polynomial& f, const std::vector<int>& weights, const Rational& lambda);
// Symbolic factor: lam_var indexes a (Laurent, weight-0) variable of f's ring.
Polynomial dilate_symbolic(const Polynomial& f, const std::vector<int>& weights, int lam_var);

}  // namespace hpoly
