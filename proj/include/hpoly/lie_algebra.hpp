#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpoly/matrix.hpp"
#include "hpoly/polynomial.hpp"

namespace hpoly {

using RatVec = std::vector<Rational>;
using PolyVec = std::vector<Polynomial>;
using PolyMatrix = std::vector<PolyVec>;  // row major

// Finite-dimensional Lie algebra over the rationals, presented by structure
// constants on a fixed basis: [X_i, X_j] = sum_k c_{ijk} X_k.  An optional
// weight per basis element declares a grading; when the weights are the
// layers 1..s of a stratification the algebra is treated as Carnot-stratified
// (adapted basis assumed, i.e. basis elements of weight w span layer w).
class LieAlgebra {
 public:
  struct StructureEntry {
    int i, j, k;  // zero-based
    Rational c;
  };

  LieAlgebra(std::vector<std::string> names, const std::vector<StructureEntry>& entries,
             std::optional<std::vector<int>> weights = std::nullopt);

  int dim() const { return n_; }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 when absent

  const Rational& c(int i, int j, int k) const { return c_[(i * n_ + j) * n_ + k]; }

  bool graded() const { return weights_.has_value(); }
  const std::vector<int>& weights() const;
  int weight(int i) const { return weights().at(i); }
  // Weights present, starting at 1, covering 1..max contiguously.
  bool stratified_weights() const;
  // Indices of basis elements in layer w.
  std::vector<int> layer(int w) const;

  LieAlgebra with_names(std::vector<std::string> names) const;

  RatVec bracket(const RatVec& x, const RatVec& y) const;
  PolyVec bracket(const PolyVec& x, const PolyVec& y) const;

  struct ValidationReport {
    bool antisymmetric = true;
    bool jacobi = true;
    bool grading_consistent = true;  // vacuously true without weights
    bool nilpotent = false;
    int step = -1;                    // meaningful when nilpotent
    std::vector<int> lcs_dims;        // dims of g = g_0, g_1, ... (ends at 0 when nilpotent)
    std::vector<std::string> violations;
    bool axioms_ok() const { return antisymmetric && jacobi && grading_consistent; }
    bool ok() const { return axioms_ok() && nilpotent; }
  };

  // Checks antisymmetry, the Jacobi identity on all triples, grading
  // consistency when weights are declared, and nilpotency via the lower
  // central series.  Non-nilpotent algebras are reported, not rejected.
  ValidationReport validate() const;

  struct LCSChain {
    // bases[k] holds a reduced-echelon basis (rows) of g_k; bases[0] = g.
    std::vector<RationalMatrix> bases;
    std::vector<int> dims;
    int step = 0;  // smallest s with g_s = 0
  };

  // Lower central series g_0 = g, g_{k+1} = [g, g_k]; requires nilpotency.
  LCSChain lower_central_series() const;

  // Nilpotency step; throws InputError on non-nilpotent input.
  int step() const;
  bool nilpotent() const;

 private:
  LCSChain lcs_internal(bool* nilpotent_out) const;

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<Rational> c_;  // n^3, dense
  std::optional<std::vector<int>> weights_;
};

// Matrix of Ad_{exp(X)} = sum_{j < s} ad_X^j / j! on the basis, entries in
// the coefficient ring of X.  Requires a nilpotent algebra.
PolyMatrix ad_exp(const LieAlgebra& A, const PolyVec& X);
std::vector<RatVec> ad_exp(const LieAlgebra& A, const RatVec& X);

PolyVec apply_poly_matrix(const PolyMatrix& M, const PolyVec& v);
PolyVec apply_poly_matrix(const PolyMatrix& M, const RatVec& v, const RingPtr& ring);
PolyMatrix poly_matrix_product(const PolyMatrix& A, const PolyMatrix& B);

// Reduced-echelon basis (rows) of the span of the given vectors.
RationalMatrix span_basis(int dim, const std::vector<RatVec>& vectors);

// Is v in the row space of `basis` (assumed reduced echelon)?
bool in_row_space(const RationalMatrix& basis, const RatVec& v);

struct GenerationResult {
  bool generates = false;
  RationalMatrix closure;  // reduced-echelon basis of the Lie subalgebra generated by S
  GenerationResult() : closure(0, 0) {}
};

// Closes span(S) under the bracket until stable.
GenerationResult lie_generates(const LieAlgebra& A, const std::vector<RatVec>& S);

}  // namespace hpoly
