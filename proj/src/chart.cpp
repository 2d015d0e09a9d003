#include "hpoly/chart.hpp"

#include <algorithm>
#include <utility>

namespace hpoly {

namespace {

bool all_zero(const PolyVec& v) {
  for (const auto& p : v) {
    if (!p.is_zero()) return false;
  }
  return true;
}

RingPtr common_ring(const PolyVec& x, const PolyVec& y, const char* where) {
  RingPtr r;
  for (const auto& p : x) {
    if (p.ring()) { r = p.ring(); break; }
  }
  if (!r) {
    for (const auto& p : y) {
      if (p.ring()) { r = p.ring(); break; }
    }
  }
  if (!r) throw InputError(std::string(where) + ": coordinate entries carry no ring");
  for (const auto& p : x) require_same_ring(p.ring(), r, where);
  for (const auto& p : y) require_same_ring(p.ring(), r, where);
  return r;
}

struct DynkinSum {
  const LieAlgebra& A;
  const PolyVec& x;
  const PolyVec& y;
  PolyVec out;
  std::vector<std::pair<int, int>> blocks;

  void add_term() {
    std::vector<const PolyVec*> letters;
    for (auto [p, q] : blocks) {
      for (int i = 0; i < p; ++i) letters.push_back(&x);
      for (int i = 0; i < q; ++i) letters.push_back(&y);
    }
    const int len = static_cast<int>(letters.size());
    PolyVec acc = *letters[len - 1];
    for (int i = len - 2; i >= 0; --i) {
      if (all_zero(acc)) return;
      acc = A.bracket(*letters[i], acc);
    }
    if (all_zero(acc)) return;
    const int nb = static_cast<int>(blocks.size());
    mpz_class den = nb;
    den *= len;
    for (auto [p, q] : blocks) {
      den *= factorial(static_cast<unsigned>(p));
      den *= factorial(static_cast<unsigned>(q));
    }
    const Rational c(mpz_class(nb % 2 == 1 ? 1 : -1), den);
    for (size_t i = 0; i < out.size(); ++i) out[i] += acc[i].scaled(c);
  }

  void run(int remaining) {
    for (int p = 0; p <= remaining; ++p) {
      for (int q = 0; p + q <= remaining; ++q) {
        if (p + q == 0) continue;
        blocks.emplace_back(p, q);
        add_term();
        if (remaining - p - q >= 1) run(remaining - p - q);
        blocks.pop_back();
      }
    }
  }
};

}  // namespace

PolyVec bch(const LieAlgebra& A, const PolyVec& x, const PolyVec& y) {
  const int n = A.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw InputError("bch: coordinate vectors must match the algebra dimension");
  if (!A.nilpotent()) throw InputError("bch: the algebra is not nilpotent");
  if (all_zero(x)) return y;
  if (all_zero(y)) return x;
  const RingPtr ring = common_ring(x, y, "bch");
  DynkinSum sum{A, x, y, PolyVec(n, Polynomial(ring)), {}};
  sum.run(A.step());
  return std::move(sum.out);
}

RatVec bch(const LieAlgebra& A, const RatVec& x, const RatVec& y) {
  const RingPtr scalars = Ring::make({});
  auto lift = [&](const RatVec& v) {
    PolyVec out;
    out.reserve(v.size());
    for (const auto& c : v) out.emplace_back(scalars, c);
    return out;
  };
  const PolyVec z = bch(A, lift(x), lift(y));
  RatVec out;
  out.reserve(z.size());
  for (const auto& p : z) out.push_back(p.constant_term());
  return out;
}

GroupPoint GroupPoint::identity(const RingPtr& ring, int n) {
  GroupPoint g;
  g.coords.assign(static_cast<size_t>(n), Polynomial(ring));
  return g;
}

GroupPoint GroupPoint::inverse() const {
  GroupPoint g;
  g.coords.reserve(coords.size());
  for (const auto& p : coords) g.coords.push_back(-p);
  return g;
}

GroupPoint bch_product(const LieAlgebra& A, const GroupPoint& p, const GroupPoint& q) {
  return GroupPoint{bch(A, p.coords, q.coords)};
}

Chart Chart::first_kind(const LieAlgebra& A, const std::string& prefix) {
  Chart ch;
  ch.kind_ = ChartKind::FirstKind;
  ch.n_ = A.dim();
  ch.algebra_ = std::make_shared<LieAlgebra>(A);
  ch.ring_ = Ring::polynomial(prefix, ch.n_);
  ch.factors_.resize(ch.n_);
  for (int i = 0; i < ch.n_; ++i) ch.factors_[i] = i;
  ch.to_first_.reserve(ch.n_);
  for (int i = 0; i < ch.n_; ++i) ch.to_first_.push_back(Polynomial::variable(ch.ring_, i));
  ch.finish(A);
  return ch;
}

Chart Chart::second_kind(const LieAlgebra& A, const std::string& prefix) {
  std::vector<int> order(static_cast<size_t>(A.dim()));
  for (int i = 0; i < A.dim(); ++i) order[static_cast<size_t>(i)] = A.dim() - 1 - i;
  return second_kind(A, std::move(order), prefix);
}

Chart Chart::second_kind(const LieAlgebra& A, std::vector<int> factor_order,
                         const std::string& prefix) {
  const int n = A.dim();
  if (!A.nilpotent())
    throw InputError("second-kind chart: the algebra is not nilpotent");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  if (static_cast<int>(factor_order.size()) != n)
    throw InputError("second-kind chart: factor order must list every basis index once");
  for (int i : factor_order) {
    if (i < 0 || i >= n || seen[static_cast<size_t>(i)])
      throw InputError("second-kind chart: factor order must be a permutation of the basis");
    seen[static_cast<size_t>(i)] = true;
  }
  Chart ch;
  ch.kind_ = ChartKind::SecondKind;
  ch.n_ = n;
  ch.algebra_ = std::make_shared<LieAlgebra>(A);
  ch.ring_ = Ring::polynomial(prefix, n);
  ch.factors_ = std::move(factor_order);
  PolyVec acc(static_cast<size_t>(n), Polynomial(ch.ring_));
  for (int idx : ch.factors_) {
    PolyVec factor(static_cast<size_t>(n), Polynomial(ch.ring_));
    factor[static_cast<size_t>(idx)] = Polynomial::variable(ch.ring_, idx);
    acc = bch(A, acc, factor);
  }
  ch.to_first_ = std::move(acc);
  ch.finish(A);
  return ch;
}

void Chart::finish(const LieAlgebra& A) {
  aux_ring_ = Ring::polynomial("u", n_);
  PolyVec first_vars;
  first_vars.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) first_vars.push_back(Polynomial::variable(aux_ring_, i));

  // Solve F(x) = u for x by iterating x <- u - (F(x) - x).  The correction
  // F - id takes values in the derived subalgebra, so each pass is exact one
  // level deeper in the lower central series and the iteration stabilizes
  // within step(A) rounds.
  PolyVec cur = first_vars;
  bool converged = false;
  for (int round = 0; round <= A.step() + 2; ++round) {
    PolyVec next;
    next.reserve(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      Polynomial fi = to_first_[static_cast<size_t>(i)].compose(aux_ring_, cur);
      next.push_back(first_vars[static_cast<size_t>(i)] - fi + cur[static_cast<size_t>(i)]);
    }
    if (next == cur) {
      converged = true;
      break;
    }
    cur = std::move(next);
  }
  if (!converged) throw MathError("chart: coordinate inversion did not stabilize");
  from_first_ = std::move(cur);

  for (int i = 0; i < n_; ++i) {
    const Polynomial roundtrip = from_first_[static_cast<size_t>(i)].compose(ring_, to_first_);
    if (roundtrip != Polynomial::variable(ring_, i))
      throw MathError("chart: conversion maps are not mutually inverse");
  }
}

PolyVec Chart::from_first(const PolyVec& first_coords) const {
  if (static_cast<int>(first_coords.size()) != n_)
    throw InputError("from_first: coordinate vector must match the algebra dimension");
  RingPtr target;
  for (const auto& p : first_coords) {
    if (p.ring()) { target = p.ring(); break; }
  }
  if (!target) throw InputError("from_first: coordinate entries carry no ring");
  PolyVec out;
  out.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i)
    out.push_back(from_first_[static_cast<size_t>(i)].compose(target, first_coords));
  return out;
}

PolyVec chart_conversion_map(const Chart& src, const Chart& dst) {
  if (src.dim() != dst.dim())
    throw InputError("chart conversion: charts belong to algebras of different dimension");
  return dst.from_first(src.to_first_map());
}

Polynomial change_chart(const Polynomial& f, const Chart& src, const Chart& dst) {
  require_same_ring(f.ring(), src.ring(), "change_chart");
  return f.compose(dst.ring(), chart_conversion_map(dst, src));
}

std::vector<Derivation> left_invariant_fields(const Chart& chart) {
  const LieAlgebra& A = chart.algebra();
  if (!A.nilpotent())
    throw InputError(
        "left-invariant fields in exponential coordinates need a nilpotent algebra; "
        "the built-in counterexamples carry hardcoded fields instead");
  const int n = chart.dim();
  std::vector<Ring::Variable> vars;
  vars.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) vars.push_back({chart.ring()->name(i), false, false});
  std::string ename = "eps";
  while (chart.ring()->index_of(ename) >= 0) ename += "_";
  vars.push_back({ename, false, false});
  const RingPtr ext = Ring::make(std::move(vars));
  const int eidx = n;

  std::vector<int> embed(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) embed[static_cast<size_t>(i)] = i;
  PolyVec point;
  point.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    point.push_back(chart.to_first_map()[static_cast<size_t>(i)].remap(ext, embed));

  PolyVec drop_images;
  drop_images.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) drop_images.push_back(Polynomial::variable(chart.ring(), i));
  drop_images.push_back(Polynomial(chart.ring()));

  std::vector<Derivation> fields;
  fields.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    PolyVec dir(static_cast<size_t>(n), Polynomial(ext));
    dir[static_cast<size_t>(k)] = Polynomial::variable(ext, eidx);
    const PolyVec moved = chart.from_first(bch(A, point, dir));
    PolyVec coeffs;
    coeffs.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      coeffs.push_back(moved[static_cast<size_t>(j)].coeff_of(eidx, 1).compose(chart.ring(), drop_images));
    fields.emplace_back(chart.ring(), std::move(coeffs));
  }
  return fields;
}

long weighted_degree(const Exponents& e, const std::vector<int>& weights) {
  if (e.size() != weights.size())
    throw InputError("weighted degree: one weight per variable required");
  long d = 0;
  for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * weights[i];
  return d;
}

long weighted_degree(const Polynomial& f, const std::vector<int>& weights) {
  long d = -1;
  for (const auto& [e, c] : f.terms()) d = std::max(d, weighted_degree(e, weights));
  return d;
}

Polynomial weighted_component(const Polynomial& f, const std::vector<int>& weights, long d) {
  TermMap terms;
  for (const auto& [e, c] : f.terms()) {
    if (weighted_degree(e, weights) == d) terms.emplace(e, c);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

namespace {

Rational rational_power(const Rational& base, long k) {
  Rational b = k >= 0 ? base : base.inverse();
  unsigned long m = static_cast<unsigned long>(k >= 0 ? k : -k);
  Rational out(1);
  while (m > 0) {
    if (m & 1UL) out *= b;
    b *= b;
    m >>= 1UL;
  }
  return out;
}

}  // namespace

Polynomial dilate(const Polynomial& f, const std::vector<int>& weights, const Rational& lambda) {
  TermMap terms;
  for (const auto& [e, c] : f.terms()) {
    const long d = weighted_degree(e, weights);
    const Rational scaled = c * rational_power(lambda, d);
    if (!scaled.is_zero()) terms.emplace(e, scaled);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

Polynomial dilate_symbolic(const Polynomial& f, const std::vector<int>& weights, int lam_var) {
  if (lam_var < 0 || lam_var >= f.ring()->nvars())
    throw InputError("dilate: dilation variable is not part of the ring");
  if (weights.at(static_cast<size_t>(lam_var)) != 0)
    throw InputError("dilate: the dilation variable must carry weight zero");
  TermMap terms;
  for (const auto& [e, c] : f.terms()) {
    const long d = weighted_degree(e, weights);
    Exponents ne = e;
    ne[static_cast<size_t>(lam_var)] += static_cast<int>(d);
    if (ne[static_cast<size_t>(lam_var)] < 0 && !f.ring()->laurent(lam_var))
      throw InputError("dilate: negative powers of the dilation variable need a Laurent variable");
    terms.emplace(std::move(ne), c);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

}  // namespace hpoly
