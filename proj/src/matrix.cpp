#include "hpoly/matrix.hpp"

#include <algorithm>
#include <map>

#include "hpoly/errors.hpp"

namespace hpoly {

namespace {

// Integer sparse row used during fraction-free elimination.
using IRow = std::vector<std::pair<int, mpz_class>>;

IRow integerize(const RationalMatrix::SparseRow& row) {
  mpz_class l(1);
  for (const auto& [c, v] : row) {
    mpz_class den = v.denominator();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    l = l / g * den;
  }
  IRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, v.numerator() * (l / v.denominator()));
  return out;
}

void strip_content(IRow& row) {
  if (row.empty()) return;
  mpz_class g(0);
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1 && g != 0) {
    for (auto& [c, v] : row) v /= g;
  }
}

// r <- (p * r - a * pivot_row), where p is the pivot value and a is r's entry
// in the pivot column; the result is gcd-stripped.  Fraction-free: only
// integer arithmetic.
IRow eliminate(const IRow& r, const mpz_class& a, const IRow& pivot_row, const mpz_class& p) {
  IRow out;
  out.reserve(r.size() + pivot_row.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < pivot_row.size()) {
    if (j == pivot_row.size() || (i < r.size() && r[i].first < pivot_row[j].first)) {
      out.emplace_back(r[i].first, p * r[i].second);
      ++i;
    } else if (i == r.size() || pivot_row[j].first < r[i].first) {
      out.emplace_back(pivot_row[j].first, -a * pivot_row[j].second);
      ++j;
    } else {
      mpz_class v = p * r[i].second - a * pivot_row[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  strip_content(out);
  return out;
}

}  // namespace

RationalMatrix::RationalMatrix(size_t rows, size_t cols)
    : nrows_(rows), ncols_(cols), rows_(rows) {}

RationalMatrix RationalMatrix::identity(size_t n) {
  RationalMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(static_cast<int>(i), Rational(1));
  return m;
}

RationalMatrix RationalMatrix::from_rows(size_t cols, std::vector<std::vector<Rational>> dense) {
  RationalMatrix m(0, cols);
  for (auto& r : dense) {
    if (r.size() != cols) throw InputError("matrix row has wrong length");
    SparseRow row;
    for (size_t j = 0; j < cols; ++j)
      if (!r[j].is_zero()) row.emplace_back(static_cast<int>(j), r[j]);
    m.append_row(std::move(row));
  }
  return m;
}

void RationalMatrix::set(size_t i, size_t j, const Rational& v) {
  if (i >= nrows_ || j >= ncols_) throw InputError("matrix index out of range");
  auto& row = rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(static_cast<int>(j), Rational(0)),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != row.end() && it->first == static_cast<int>(j)) {
    if (v.is_zero())
      row.erase(it);
    else
      it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {static_cast<int>(j), v});
  }
}

Rational RationalMatrix::at(size_t i, size_t j) const {
  if (i >= nrows_ || j >= ncols_) throw InputError("matrix index out of range");
  for (const auto& [c, v] : rows_[i])
    if (c == static_cast<int>(j)) return v;
  return 0;
}

void RationalMatrix::append_row(SparseRow row) {
  for (size_t k = 0; k < row.size(); ++k) {
    if (row[k].first < 0 || row[k].first >= static_cast<int>(ncols_))
      throw InputError("matrix row entry out of range");
    if (k > 0 && row[k - 1].first >= row[k].first)
      throw InputError("matrix row entries must be sorted by column");
  }
  row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second.is_zero(); }),
            row.end());
  rows_.push_back(std::move(row));
  ++nrows_;
}

std::vector<Rational> RationalMatrix::mul_vec(const std::vector<Rational>& v) const {
  if (v.size() != ncols_) throw InputError("mul_vec: wrong vector length");
  std::vector<Rational> out(nrows_, Rational(0));
  for (size_t i = 0; i < nrows_; ++i)
    for (const auto& [c, val] : rows_[i]) out[i] += val * v[c];
  return out;
}

Echelon RationalMatrix::rref() const {
  // Forward pass: incremental sparse echelon over the integers.  Each incoming
  // row is reduced against the pivots it meets (in column order); whatever
  // survives becomes a new pivot at its leading column.
  std::map<int, IRow> pivots;  // leading column -> row
  for (const auto& sr : rows_) {
    IRow r = integerize(sr);
    strip_content(r);
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) break;
      r = eliminate(r, r.front().second, it->second, it->second.front().second);
    }
    if (!r.empty()) pivots.emplace(r.front().first, std::move(r));
  }

  // Back substitution with exact rational arithmetic; pivots normalized to 1.
  std::vector<int> pivot_cols;
  std::vector<std::map<int, Rational>> rows;
  pivot_cols.reserve(pivots.size());
  for (auto& [col, irow] : pivots) {
    pivot_cols.push_back(col);
    std::map<int, Rational> row;
    const Rational lead(irow.front().second, 1);
    for (auto& [c, v] : irow) row.emplace(c, Rational(v, 1) / lead);
    rows.push_back(std::move(row));
  }
  for (size_t i = rows.size(); i-- > 0;) {
    for (size_t j = 0; j < i; ++j) {
      auto hit = rows[j].find(pivot_cols[i]);
      if (hit == rows[j].end()) continue;
      const Rational factor = hit->second;
      for (const auto& [c, v] : rows[i]) {
        auto [it, inserted] = rows[j].emplace(c, Rational(0));
        it->second -= factor * v;
        if (it->second.is_zero()) rows[j].erase(it);
      }
    }
  }

  Echelon e{RationalMatrix(0, ncols_), std::move(pivot_cols), rows.size()};
  for (const auto& row : rows) {
    SparseRow sr;
    sr.reserve(row.size());
    for (const auto& [c, v] : row) sr.emplace_back(c, v);
    e.reduced.append_row(std::move(sr));
  }
  return e;
}

std::vector<std::vector<Rational>> RationalMatrix::kernel_basis() const {
  const Echelon e = rref();
  std::vector<bool> is_pivot(ncols_, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;

  // One kernel vector per free column, from the reduced form; built sparsely
  // by a single sweep over the reduced rows.
  std::map<int, SparseRow> raw;  // free column -> kernel vector entries
  for (size_t f = 0; f < ncols_; ++f)
    if (!is_pivot[f]) raw[static_cast<int>(f)] = {};
  for (size_t i = 0; i < e.rank; ++i) {
    for (const auto& [c, v] : e.reduced.row(i)) {
      if (!is_pivot[c]) raw[c].emplace_back(e.pivot_cols[i], -v);
    }
  }
  if (raw.empty()) return {};

  RationalMatrix km(0, ncols_);
  for (auto& [f, entries] : raw) {
    entries.emplace_back(f, Rational(1));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    km.append_row(std::move(entries));
  }

  // Normalize the presentation: reduced echelon with the leading (smallest
  // column) coefficient equal to 1.  This makes the output canonical in the
  // form used for solution bases.
  const Echelon k = km.rref();
  std::vector<std::vector<Rational>> out;
  out.reserve(k.rank);
  for (size_t i = 0; i < k.rank; ++i) {
    std::vector<Rational> v(ncols_, Rational(0));
    for (const auto& [c, val] : k.reduced.row(i)) v[c] = val;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Rational> RationalMatrix::solve(const std::vector<Rational>& rhs) const {
  if (rhs.size() != nrows_) throw InputError("solve: wrong right-hand side length");
  RationalMatrix aug(0, ncols_ + 1);
  for (size_t i = 0; i < nrows_; ++i) {
    SparseRow r = rows_[i];
    if (!rhs[i].is_zero()) r.emplace_back(static_cast<int>(ncols_), rhs[i]);
    aug.append_row(std::move(r));
  }
  const Echelon e = aug.rref();
  std::vector<Rational> x(ncols_, Rational(0));
  size_t seen = 0;
  for (size_t i = 0; i < e.rank; ++i) {
    const int p = e.pivot_cols[i];
    if (p == static_cast<int>(ncols_)) throw MathError("solve: inconsistent linear system");
    ++seen;
    x[p] = e.reduced.at(i, ncols_);
  }
  if (seen < ncols_) throw MathError("solve: underdetermined linear system");
  return x;
}

std::vector<Rational> RationalMatrix::solve_particular(const std::vector<Rational>& rhs) const {
  if (rhs.size() != nrows_) throw InputError("solve: wrong right-hand side length");
  RationalMatrix aug(0, ncols_ + 1);
  for (size_t i = 0; i < nrows_; ++i) {
    SparseRow r = rows_[i];
    if (!rhs[i].is_zero()) r.emplace_back(static_cast<int>(ncols_), rhs[i]);
    aug.append_row(std::move(r));
  }
  const Echelon e = aug.rref();
  std::vector<Rational> x(ncols_, Rational(0));
  for (size_t i = 0; i < e.rank; ++i) {
    const int p = e.pivot_cols[i];
    if (p == static_cast<int>(ncols_)) throw MathError("solve: inconsistent linear system");
    x[p] = e.reduced.at(i, ncols_);
  }
  return x;
}

bool same_row_space(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols()) return false;
  const auto ea = a.rref();
  const auto eb = b.rref();
  if (ea.rank != eb.rank || ea.pivot_cols != eb.pivot_cols) return false;
  for (size_t i = 0; i < ea.rank; ++i)
    if (ea.reduced.row(i) != eb.reduced.row(i)) return false;
  return true;
}

}  // namespace hpoly
