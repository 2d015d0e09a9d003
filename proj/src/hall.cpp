#include "hpoly/hall.hpp"

#include <map>

#include "hpoly/errors.hpp"

namespace hpoly {

namespace {

// Rewriting engine expressing brackets of Hall elements in the Hall basis.
struct HallRewriter {
  const std::vector<FreeNilpotent::Node>& trees;
  int s;
  std::map<std::pair<int, int>, int> hall_pair;     // (left, right) -> basis index
  std::map<std::pair<int, int>, RatVec> memo;       // product cache for i > j

  RatVec zero() const { return RatVec(trees.size(), Rational(0)); }

  RatVec unit(int k) const {
    RatVec v = zero();
    v[k] = 1;
    return v;
  }

  // [h_i, h_j] in the Hall basis.
  RatVec product(int i, int j) {
    if (i == j) return zero();
    if (i < j) {
      RatVec v = product(j, i);
      for (auto& c : v) c = -c;
      return v;
    }
    if (trees[i].length + trees[j].length > s) return zero();
    const auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    RatVec result;
    auto hall = hall_pair.find(key);
    if (hall != hall_pair.end()) {
      result = unit(hall->second);
    } else {
      // i > j and [h_i, h_j] not a Hall element, so h_i = [a, b] with b > j.
      // Jacobi: [[a,b],j] = [[a,j],b] + [a,[b,j]].
      const int a = trees[i].left, b = trees[i].right;
      result = bracket_vec_idx(product(a, j), b, true);
      const RatVec bj = product(b, j);
      RatVec second = bracket_idx_vec(a, bj);
      for (size_t k = 0; k < result.size(); ++k) result[k] += second[k];
    }
    memo.emplace(key, result);
    return result;
  }

  // [sum_k v_k h_k, h_b]; flip selects [v, b] vs [b, v] handling in callers.
  RatVec bracket_vec_idx(const RatVec& v, int b, bool /*left*/) {
    RatVec out = zero();
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      const RatVec p = product(static_cast<int>(k), b);
      for (size_t l = 0; l < out.size(); ++l) out[l] += p[l] * v[k];
    }
    return out;
  }

  RatVec bracket_idx_vec(int a, const RatVec& v) {
    RatVec out = zero();
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      const RatVec p = product(a, static_cast<int>(k));
      for (size_t l = 0; l < out.size(); ++l) out[l] += p[l] * v[k];
    }
    return out;
  }
};

}  // namespace

FreeNilpotent FreeNilpotent::build(int m, int s) {
  if (m < 2)
    throw InputError("free nilpotent algebra requires at least two generators (got m=" +
                     std::to_string(m) + ")");
  if (s < 1) throw InputError("nilpotency step must be positive");

  FreeNilpotent F;
  F.m_ = m;
  F.s_ = s;
  auto& trees = F.trees_;
  for (int g = 0; g < m; ++g) trees.push_back({g, -1, -1, 1});

  // Degree by degree: [u, v] is Hall iff u > v and (u is a generator or
  // u.right <= v).  Candidate pairs are scanned in (v, u) order so that the
  // creation order within each degree is deterministic.
  for (int d = 2; d <= s; ++d) {
    const int known = static_cast<int>(trees.size());
    for (int v = 0; v < known; ++v) {
      for (int u = v + 1; u < known; ++u) {
        if (trees[u].length + trees[v].length != d) continue;
        if (trees[u].gen < 0 && trees[u].right > v) continue;
        trees.push_back({-1, u, v, d});
      }
    }
  }

  HallRewriter rw{trees, s, {}, {}};
  for (size_t i = 0; i < trees.size(); ++i)
    if (trees[i].gen < 0) rw.hall_pair.emplace(std::make_pair(trees[i].left, trees[i].right),
                                               static_cast<int>(i));

  std::vector<LieAlgebra::StructureEntry> entries;
  const int n = static_cast<int>(trees.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const RatVec p = rw.product(i, j);
      for (int k = 0; k < n; ++k)
        if (!p[k].is_zero()) entries.push_back({i, j, k, p[k]});
    }
  }

  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 0; i < n; ++i) {
    names.push_back("Y" + std::to_string(i + 1));
    weights.push_back(trees[i].length);
  }
  F.algebra_ = std::make_shared<LieAlgebra>(std::move(names), entries, std::move(weights));
  return F;
}

std::string FreeNilpotent::bracket_string(int i) const {
  const Node& t = trees_.at(i);
  if (t.gen >= 0) return "X" + std::to_string(t.gen + 1);
  return "[" + bracket_string(t.left) + "," + bracket_string(t.right) + "]";
}

RatVec FreeNilpotent::product(int i, int j) const {
  HallRewriter rw{trees_, s_, {}, {}};
  for (size_t k = 0; k < trees_.size(); ++k)
    if (trees_[k].gen < 0)
      rw.hall_pair.emplace(std::make_pair(trees_[k].left, trees_[k].right), static_cast<int>(k));
  return rw.product(i, j);
}

AlgebraHom extend_hom(const FreeNilpotent& F, const LieAlgebra& A,
                      const std::vector<RatVec>& targets) {
  if (static_cast<int>(targets.size()) != F.generators())
    throw InputError("extend_hom: one target per generator required");
  for (const auto& t : targets)
    if (static_cast<int>(t.size()) != A.dim())
      throw InputError("extend_hom: target has wrong dimension");
  const int steps = A.step();  // also enforces nilpotency of the codomain
  if (steps > F.nilpotency_step())
    throw InputError("extend_hom: codomain step exceeds the free algebra's step");

  const auto& trees = F.basis_trees();
  const int nf = static_cast<int>(trees.size());
  std::vector<RatVec> image(nf);
  for (int i = 0; i < nf; ++i) {
    if (trees[i].gen >= 0)
      image[i] = targets[trees[i].gen];
    else
      image[i] = A.bracket(image[trees[i].left], image[trees[i].right]);
  }

  AlgebraHom hom;
  hom.matrix = RationalMatrix(A.dim(), nf);
  for (int j = 0; j < nf; ++j)
    for (int i = 0; i < A.dim(); ++i)
      if (!image[j][i].is_zero()) hom.matrix.set(i, j, image[j][i]);

  // Homomorphism property on all basis pairs: phi([h_i,h_j]) = [phi h_i, phi h_j].
  const auto& FA = F.algebra();
  for (int i = 0; i < nf; ++i) {
    for (int j = i + 1; j < nf; ++j) {
      RatVec lhs(A.dim(), Rational(0));
      for (int k = 0; k < nf; ++k) {
        const Rational& cc = FA.c(i, j, k);
        if (cc.is_zero()) continue;
        for (int l = 0; l < A.dim(); ++l) lhs[l] += image[k][l] * cc;
      }
      const RatVec rhs = A.bracket(image[i], image[j]);
      if (lhs != rhs)
        throw MathError("extend_hom: images fail the homomorphism property on basis pair (" +
                        F.bracket_string(i) + ", " + F.bracket_string(j) + ")");
    }
  }

  std::vector<RatVec> cols;
  for (int j = 0; j < nf; ++j) cols.push_back(image[j]);
  hom.surjective = (static_cast<int>(span_basis(A.dim(), cols).rows()) == A.dim());
  return hom;
}

}  // namespace hpoly
