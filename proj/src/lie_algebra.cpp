#include "hpoly/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "hpoly/errors.hpp"

namespace hpoly {

LieAlgebra::LieAlgebra(std::vector<std::string> names,
                       const std::vector<StructureEntry>& entries,
                       std::optional<std::vector<int>> weights)
    : n_(static_cast<int>(names.size())), names_(std::move(names)), weights_(std::move(weights)) {
  if (n_ == 0) throw InputError("Lie algebra needs at least one basis element");
  c_.assign(static_cast<size_t>(n_) * n_ * n_, Rational(0));
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_ || e.k < 0 || e.k >= n_)
      throw InputError("structure constant index out of range");
    if (e.i == e.j && !e.c.is_zero()) throw InputError("nonzero structure constant on [X,X]");
    auto conflict = [&]() {
      return InputError("conflicting or duplicate structure constant for ([" + names_[e.i] +
                        "," + names_[e.j] + "], " + names_[e.k] + ")");
    };
    auto& slot = c_[(e.i * n_ + e.j) * n_ + e.k];
    if (!slot.is_zero()) throw conflict();
    slot = e.c;
    // Antisymmetric completion; explicit mirrored entries are rejected above
    // as conflicts, so documents list each bracket once.
    auto& mirror = c_[(e.j * n_ + e.i) * n_ + e.k];
    if (!mirror.is_zero()) throw conflict();
    mirror = -e.c;
  }
  if (weights_) {
    if (static_cast<int>(weights_->size()) != n_)
      throw InputError("one weight per basis element required");
    for (int w : *weights_)
      if (w < 1) throw InputError("weights must be positive");
  }
}

int LieAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return -1;
}

const std::vector<int>& LieAlgebra::weights() const {
  if (!weights_) throw InputError("Lie algebra has no declared grading");
  return *weights_;
}

bool LieAlgebra::stratified_weights() const {
  if (!weights_) return false;
  const int maxw = *std::max_element(weights_->begin(), weights_->end());
  std::vector<bool> seen(maxw + 1, false);
  for (int w : *weights_) seen[w] = true;
  for (int w = 1; w <= maxw; ++w)
    if (!seen[w]) return false;
  return true;
}

std::vector<int> LieAlgebra::layer(int w) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (weight(i) == w) out.push_back(i);
  return out;
}

LieAlgebra LieAlgebra::with_names(std::vector<std::string> names) const {
  if (static_cast<int>(names.size()) != n_) throw InputError("with_names: wrong name count");
  LieAlgebra copy = *this;
  copy.names_ = std::move(names);
  return copy;
}

RatVec LieAlgebra::bracket(const RatVec& x, const RatVec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw InputError("bracket: wrong coefficient vector length");
  RatVec out(n_, Rational(0));
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      const Rational xy = x[i] * y[j];
      for (int k = 0; k < n_; ++k) {
        const Rational& cc = c(i, j, k);
        if (!cc.is_zero()) out[k] += xy * cc;
      }
    }
  }
  return out;
}

PolyVec LieAlgebra::bracket(const PolyVec& x, const PolyVec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw InputError("bracket: wrong coefficient vector length");
  const RingPtr& ring = x.front().ring();
  PolyVec out(n_, Polynomial(ring));
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      const Polynomial xy = x[i] * y[j];
      for (int k = 0; k < n_; ++k) {
        const Rational& cc = c(i, j, k);
        if (!cc.is_zero()) out[k] += xy.scaled(cc);
      }
    }
  }
  return out;
}

LieAlgebra::ValidationReport LieAlgebra::validate() const {
  ValidationReport rep;
  for (int i = 0; i < n_ && rep.violations.size() < 8; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        if (c(i, j, k) != -c(j, i, k)) {
          rep.antisymmetric = false;
          std::ostringstream os;
          os << "antisymmetry fails on ([" << names_[i] << "," << names_[j] << "], " << names_[k]
             << ")";
          rep.violations.push_back(os.str());
        }
      }
    }
  }
  // Jacobi on all triples i < j < k:
  // [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0.
  auto basis = [&](int i) {
    RatVec v(n_, Rational(0));
    v[i] = 1;
    return v;
  };
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      for (int k = j + 1; k < n_; ++k) {
        RatVec sum(n_, Rational(0));
        const RatVec t1 = bracket(bracket(basis(i), basis(j)), basis(k));
        const RatVec t2 = bracket(bracket(basis(j), basis(k)), basis(i));
        const RatVec t3 = bracket(bracket(basis(k), basis(i)), basis(j));
        bool zero = true;
        for (int l = 0; l < n_; ++l) {
          sum[l] = t1[l] + t2[l] + t3[l];
          if (!sum[l].is_zero()) zero = false;
        }
        if (!zero) {
          rep.jacobi = false;
          if (rep.violations.size() < 8) {
            std::ostringstream os;
            os << "Jacobi fails on (" << names_[i] << "," << names_[j] << "," << names_[k] << ")";
            rep.violations.push_back(os.str());
          }
        }
      }
    }
  }
  if (weights_) {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < n_; ++k) {
          if (!c(i, j, k).is_zero() && weight(k) != weight(i) + weight(j)) {
            rep.grading_consistent = false;
            if (rep.violations.size() < 8) {
              std::ostringstream os;
              os << "grading fails: [" << names_[i] << "," << names_[j] << "] meets " << names_[k];
              rep.violations.push_back(os.str());
            }
          }
        }
      }
    }
  }
  if (rep.antisymmetric) {
    bool nil = false;
    const LCSChain chain = lcs_internal(&nil);
    rep.nilpotent = nil;
    rep.lcs_dims = chain.dims;
    rep.step = nil ? chain.step : -1;
  }
  return rep;
}

LieAlgebra::LCSChain LieAlgebra::lcs_internal(bool* nilpotent_out) const {
  LCSChain chain;
  chain.bases.push_back(RationalMatrix::identity(n_));
  chain.dims.push_back(n_);
  while (true) {
    const RationalMatrix& prev = chain.bases.back();
    if (prev.rows() == 0) break;
    std::vector<RatVec> brackets;
    for (int i = 0; i < n_; ++i) {
      RatVec xi(n_, Rational(0));
      xi[i] = 1;
      for (size_t r = 0; r < prev.rows(); ++r) {
        RatVec v(n_, Rational(0));
        for (const auto& [col, val] : prev.row(r)) v[col] = val;
        brackets.push_back(bracket(xi, v));
      }
    }
    RationalMatrix next = span_basis(n_, brackets);
    const int d = static_cast<int>(next.rows());
    if (d == chain.dims.back()) {
      // Stabilized above zero: not nilpotent.
      *nilpotent_out = false;
      return chain;
    }
    chain.bases.push_back(std::move(next));
    chain.dims.push_back(d);
    if (d == 0) break;
  }
  *nilpotent_out = true;
  chain.step = static_cast<int>(chain.dims.size()) - 1;
  return chain;
}

LieAlgebra::LCSChain LieAlgebra::lower_central_series() const {
  bool nil = false;
  LCSChain chain = lcs_internal(&nil);
  if (!nil)
    throw InputError("lower central series stabilized above zero: the algebra is not nilpotent");
  return chain;
}

int LieAlgebra::step() const { return lower_central_series().step; }

bool LieAlgebra::nilpotent() const {
  bool nil = false;
  lcs_internal(&nil);
  return nil;
}

PolyMatrix ad_exp(const LieAlgebra& A, const PolyVec& X) {
  const int n = A.dim();
  if (static_cast<int>(X.size()) != n) throw InputError("ad_exp: wrong coefficient vector length");
  const int s = A.step();  // throws on non-nilpotent input
  const RingPtr& ring = X.front().ring();

  // ad_X as a matrix over the coefficient ring: column j holds [X, e_j].
  PolyMatrix ad(n, PolyVec(n, Polynomial(ring)));
  for (int j = 0; j < n; ++j) {
    PolyVec ej(n, Polynomial(ring));
    ej[j] = Polynomial(ring, Rational(1));
    PolyVec col = A.bracket(X, ej);
    for (int k = 0; k < n; ++k) ad[k][j] = col[k];
  }

  PolyMatrix result(n, PolyVec(n, Polynomial(ring)));
  for (int i = 0; i < n; ++i) result[i][i] = Polynomial(ring, Rational(1));
  PolyMatrix power = result;  // ad_X^0
  for (int j = 1; j <= s - 1; ++j) {
    power = poly_matrix_product(ad, power);
    const Rational invfact = inv_factorial(static_cast<unsigned>(j));
    for (int r = 0; r < n; ++r)
      for (int cidx = 0; cidx < n; ++cidx) result[r][cidx] += power[r][cidx].scaled(invfact);
  }
  return result;
}

std::vector<RatVec> ad_exp(const LieAlgebra& A, const RatVec& X) {
  const RingPtr scalars = Ring::make({});
  PolyVec xp;
  xp.reserve(X.size());
  for (const auto& c : X) xp.push_back(Polynomial(scalars, c));
  const PolyMatrix m = ad_exp(A, xp);
  std::vector<RatVec> out(m.size(), RatVec(m.size(), Rational(0)));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j].constant_term();
  return out;
}

PolyVec apply_poly_matrix(const PolyMatrix& M, const PolyVec& v) {
  const RingPtr& ring = v.front().ring();
  PolyVec out(M.size(), Polynomial(ring));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!M[i][j].is_zero() && !v[j].is_zero()) out[i] += M[i][j] * v[j];
  return out;
}

PolyVec apply_poly_matrix(const PolyMatrix& M, const RatVec& v, const RingPtr& ring) {
  PolyVec out(M.size(), Polynomial(ring));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!M[i][j].is_zero() && !v[j].is_zero()) out[i] += M[i][j].scaled(v[j]);
  return out;
}

PolyMatrix poly_matrix_product(const PolyMatrix& A, const PolyMatrix& B) {
  const size_t n = A.size(), m = B.front().size(), inner = B.size();
  const RingPtr& ring = B.front().front().ring();
  PolyMatrix out(n, PolyVec(m, Polynomial(ring)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (A[i][k].is_zero()) continue;
      for (size_t j = 0; j < m; ++j)
        if (!B[k][j].is_zero()) out[i][j] += A[i][k] * B[k][j];
    }
  return out;
}

RationalMatrix span_basis(int dim, const std::vector<RatVec>& vectors) {
  RationalMatrix m(0, dim);
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != dim) throw InputError("span_basis: wrong vector length");
    RationalMatrix::SparseRow row;
    for (int j = 0; j < dim; ++j)
      if (!v[j].is_zero()) row.emplace_back(j, v[j]);
    m.append_row(std::move(row));
  }
  return m.rref().reduced;
}

bool in_row_space(const RationalMatrix& basis, const RatVec& v) {
  RationalMatrix stacked(0, basis.cols());
  for (size_t i = 0; i < basis.rows(); ++i) stacked.append_row(basis.row(i));
  RationalMatrix::SparseRow row;
  for (size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) row.emplace_back(static_cast<int>(j), v[j]);
  stacked.append_row(std::move(row));
  return stacked.rref().rank == basis.rref().rank;
}

GenerationResult lie_generates(const LieAlgebra& A, const std::vector<RatVec>& S) {
  const int n = A.dim();
  GenerationResult res;
  RationalMatrix current = span_basis(n, S);
  while (true) {
    std::vector<RatVec> vecs;
    auto row_vec = [&](const RationalMatrix& m, size_t r) {
      RatVec v(n, Rational(0));
      for (const auto& [col, val] : m.row(r)) v[col] = val;
      return v;
    };
    for (size_t r = 0; r < current.rows(); ++r) vecs.push_back(row_vec(current, r));
    const size_t base_count = vecs.size();
    for (size_t a = 0; a < base_count; ++a)
      for (size_t b = a + 1; b < base_count; ++b) vecs.push_back(A.bracket(vecs[a], vecs[b]));
    RationalMatrix next = span_basis(n, vecs);
    if (next.rows() == current.rows()) {
      res.closure = std::move(next);
      break;
    }
    current = std::move(next);
  }
  res.generates = (static_cast<int>(res.closure.rows()) == n);
  return res;
}

}  // namespace hpoly
