#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hpoly/lie_algebra.hpp"

namespace hpoly {

// Free nilpotent Lie algebra f_{m,s} on m generators of step s, with the
// classical Hall basis: a bracket [u, v] of Hall elements is itself a Hall
// element iff u > v and, when u = [a, b], b <= v.  Elements are ordered by
// bracket length first, then creation order; generators come first, ordered
// by index.  With this convention f_{2,3} carries the presentation
// [X2,X1] = H3, [H3,X1] = H4, [H3,X2] = H5 on the nose.
class FreeNilpotent {
 public:
  // Requires m >= 2 (the one-generator "free" algebra is a degenerate case
  // this construction refuses) and s >= 1.
  static FreeNilpotent build(int m, int s);

  int generators() const { return m_; }
  int nilpotency_step() const { return s_; }
  const LieAlgebra& algebra() const { return *algebra_; }

  struct Node {
    int gen = -1;       // generator index when a leaf
    int left = -1;      // positions into the basis list otherwise
    int right = -1;
    int length = 1;
  };
  const std::vector<Node>& basis_trees() const { return trees_; }

  // Bracket spelling of basis element i, e.g. "[[X2,X1],X1]".
  std::string bracket_string(int i) const;

  // Coefficients of [h_i, h_j] over the Hall basis.
  RatVec product(int i, int j) const;

 private:
  FreeNilpotent() = default;
  int m_ = 0, s_ = 0;
  std::vector<Node> trees_;
  std::shared_ptr<LieAlgebra> algebra_;
};

// Lie algebra homomorphism with a matrix representation on the bases:
// columns of `matrix` are the images of the domain basis.
struct AlgebraHom {
  RationalMatrix matrix;  // codomain-dim x domain-dim
  bool surjective = false;
  AlgebraHom() : matrix(0, 0) {}

  RatVec apply(const RatVec& v) const { return matrix.mul_vec(v); }
};

// Extends generator targets to the unique homomorphism f_{m,s} -> A by
// evaluating Hall trees as nested brackets of the targets.  Requires one
// target per generator and step(A) <= s; the bracket-compatibility of the
// result is verified on all basis pairs and a failure throws MathError.
AlgebraHom extend_hom(const FreeNilpotent& F, const LieAlgebra& A,
                      const std::vector<RatVec>& targets);

}  // namespace hpoly
