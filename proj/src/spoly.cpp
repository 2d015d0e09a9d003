#include "hpoly/spoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include "hpoly/hall.hpp"

namespace hpoly {

namespace {

std::string format_element(const std::vector<std::string>& names, const RatVec& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const bool neg = v[i].sign() < 0;
    const Rational mag = neg ? -v[i] : v[i];
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (!mag.is_one()) out += mag.str() + "*";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

bool same_algebra(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim() || a.names() != b.names()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      for (int k = 0; k < a.dim(); ++k) {
        if (a.c(i, j, k) != b.c(i, j, k)) return false;
      }
    }
  }
  if (a.graded() != b.graded()) return false;
  return !a.graded() || a.weights() == b.weights();
}

Derivation direction_field(const RingPtr& ring, const std::vector<Derivation>& fields,
                           const RatVec& v) {
  Derivation d = Derivation::zero(ring);
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) d = d + fields[i].scaled(v[i]);
  }
  return d;
}

RatVec dense_row(const RationalMatrix& m, size_t i) {
  RatVec v(m.cols(), Rational(0));
  for (const auto& [col, val] : m.row(i)) v[static_cast<size_t>(col)] = val;
  return v;
}

// One defining linear condition: the sum of the listed operator words must
// annihilate the solution.
struct Condition {
  std::vector<OperatorWord> words;
  std::string label;

  Polynomial apply(const Polynomial& f) const {
    Polynomial acc(f.ring());
    for (const auto& w : words) acc += apply_word(w, f);
    return acc;
  }
};

std::vector<Condition> build_conditions(const LieAlgebra& A, SPolyMode mode,
                                        const std::vector<RatVec>& S,
                                        const std::vector<int>& orders,
                                        const std::vector<Derivation>& fields,
                                        const RingPtr& ring) {
  std::vector<Condition> conds;
  if (mode == SPolyMode::PerDirection) {
    for (size_t i = 0; i < S.size(); ++i) {
      const Derivation d = direction_field(ring, fields, S[i]);
      Condition c;
      c.words.push_back(OperatorWord(static_cast<size_t>(orders[i]), d));
      c.label = "(" + format_element(A.names(), S[i]) + ")^" + std::to_string(orders[i]);
      conds.push_back(std::move(c));
    }
    return conds;
  }

  // SubspaceUniform: polarized into one condition per size-k multiset over a
  // canonical basis of span(S): the sum over its distinct arrangements.
  const int k = orders.at(0);
  const RationalMatrix span = span_basis(A.dim(), S);
  std::vector<Derivation> base_fields;
  std::vector<std::string> base_names;
  for (size_t r = 0; r < span.rows(); ++r) {
    const RatVec v = dense_row(span, r);
    base_fields.push_back(direction_field(ring, fields, v));
    base_names.push_back(format_element(A.names(), v));
  }
  const int m = static_cast<int>(base_fields.size());
  std::vector<int> multiset;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(multiset.size()) == k) {
      Condition c;
      std::vector<int> arr = multiset;
      do {
        OperatorWord w;
        w.reserve(arr.size());
        for (int idx : arr) w.push_back(base_fields[static_cast<size_t>(idx)]);
        c.words.push_back(std::move(w));
      } while (std::next_permutation(arr.begin(), arr.end()));
      std::string lbl = "sym(";
      for (size_t t = 0; t < multiset.size(); ++t) {
        if (t) lbl += ", ";
        lbl += base_names[static_cast<size_t>(multiset[t])];
      }
      c.label = lbl + ")";
      conds.push_back(std::move(c));
      return;
    }
    for (int i = from; i < m; ++i) {
      multiset.push_back(i);
      rec(i);
      multiset.pop_back();
    }
  };
  rec(0);
  return conds;
}

void enumerate_block(const std::vector<int>& w, long d, std::vector<Exponents>* out, long guard,
                     long* count) {
  Exponents cur(w.size(), 0);
  std::function<void(long, size_t)> rec = [&](long rem, size_t i) {
    if (i + 1 == cur.size()) {
      if (rem % w[i] == 0) {
        if (++*count > guard)
          throw InputError(
              "candidate monomial count exceeded the guard (" + std::to_string(guard) +
              "); supply a smaller --degree (the result is then stabilization-checked instead "
              "of bound-certified)");
        if (out) {
          cur[i] = static_cast<int>(rem / w[i]);
          out->push_back(cur);
          cur[i] = 0;
        }
      }
      return;
    }
    for (long e = 0; e * w[i] <= rem; ++e) {
      cur[i] = static_cast<int>(e);
      rec(rem - e * w[i], i + 1);
    }
    cur[i] = 0;
  };
  rec(d, 0);
}

std::vector<Polynomial> kernel_polys(const RingPtr& ring, const std::vector<Exponents>& cands,
                                     const std::vector<Condition>& conds) {
  std::vector<std::map<Exponents, int, MonomialLess>> row_ids(conds.size());
  std::vector<RationalMatrix::SparseRow> rows;
  for (size_t j = 0; j < cands.size(); ++j) {
    const Polynomial mono = Polynomial::monomial(ring, cands[j], Rational(1));
    for (size_t c = 0; c < conds.size(); ++c) {
      const Polynomial out = conds[c].apply(mono);
      for (const auto& [e, coef] : out.terms()) {
        auto [it, fresh] = row_ids[c].emplace(e, static_cast<int>(rows.size()));
        if (fresh) rows.emplace_back();
        rows[static_cast<size_t>(it->second)].emplace_back(static_cast<int>(j), coef);
      }
    }
  }
  RationalMatrix M(0, cands.size());
  for (auto& r : rows) M.append_row(std::move(r));
  const auto kern = M.kernel_basis();
  std::vector<Polynomial> out;
  out.reserve(kern.size());
  for (const auto& v : kern) {
    TermMap terms;
    for (size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) terms.emplace(cands[j], v[j]);
    }
    out.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return out;
}

const Exponents& leading_monomial(const Polynomial& p) { return p.terms().begin()->first; }

void sort_by_leading(std::vector<Polynomial>* polys) {
  std::sort(polys->begin(), polys->end(), [](const Polynomial& a, const Polynomial& b) {
    return MonomialLess{}(leading_monomial(a), leading_monomial(b));
  });
}

// Stratified weights usable for the layer solve: declared ones when the
// grading is stratified, all-ones for abelian algebras, nothing otherwise.
std::optional<std::vector<int>> effective_stratified_weights(const LieAlgebra& A) {
  if (A.graded() && A.stratified_weights()) return A.weights();
  if (A.step() <= 1) return std::vector<int>(static_cast<size_t>(A.dim()), 1);
  return std::nullopt;
}

RatVec chart_point(const Chart& chart, const RatVec& first_coords) {
  const RingPtr scalars = Ring::make({});
  PolyVec fc;
  fc.reserve(first_coords.size());
  for (const auto& c : first_coords) fc.emplace_back(scalars, c);
  const PolyVec cc = chart.from_first(fc);
  RatVec out;
  out.reserve(cc.size());
  for (const auto& p : cc) out.push_back(p.constant_term());
  return out;
}

// Extension of the chart ring by extra ordinary variables, with name-clash
// guarding for the extras.
RingPtr extend_ring(const RingPtr& base, std::vector<std::string> extra) {
  std::vector<Ring::Variable> vars;
  vars.reserve(static_cast<size_t>(base->nvars()) + extra.size());
  for (int i = 0; i < base->nvars(); ++i) vars.push_back({base->name(i), base->laurent(i), false});
  for (auto& name : extra) {
    while (true) {
      bool clash = base->index_of(name) >= 0;
      for (const auto& v : vars) clash = clash || v.name == name;
      if (!clash) break;
      name += "_";
    }
    vars.push_back({name, false, false});
  }
  return Ring::make(std::move(vars));
}

std::vector<int> identity_embedding(int n) {
  std::vector<int> where(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) where[static_cast<size_t>(i)] = i;
  return where;
}

}  // namespace

SPolyProblem SPolyProblem::directions(const LieAlgebra& A, const Chart& chart,
                                      std::vector<RatVec> S, std::vector<int> orders) {
  return SPolyProblem{A, chart, std::move(S), std::move(orders), SPolyMode::PerDirection};
}

SPolyProblem SPolyProblem::subspace(const LieAlgebra& A, const Chart& chart,
                                    std::vector<RatVec> span_of, int k) {
  return SPolyProblem{A, chart, std::move(span_of), {k}, SPolyMode::SubspaceUniform};
}

int SPolyProblem::max_order() const {
  int k = 1;
  for (int o : orders) k = std::max(k, o);
  return k;
}

DegreeBoundWitness degree_bound(long k, long s, long ell) {
  if (k < 1 || s < 1 || ell < 1) throw InputError("degree_bound: k, s, ell must all be >= 1");
  DegreeBoundWitness w;
  w.k = k;
  w.s = s;
  w.ell = ell;
  w.a.assign(static_cast<size_t>(ell), 0);
  w.a[static_cast<size_t>(ell - 1)] = k - 1;
  for (long j = ell - 1; j >= 1; --j)
    w.a[static_cast<size_t>(j - 1)] = s * w.a[static_cast<size_t>(j)] + (k - 1);
  w.D = w.a[0];
  if (ell == 1) {
    w.nu = k - 1;
    return w;
  }
  w.nu_seq.reserve(static_cast<size_t>(ell - 1));
  mpz_class nu = (k - 1) + w.a[1] * (s - 1);
  w.nu_seq.push_back(nu);
  for (long j = 2; j <= ell - 1; ++j) {
    nu += (k - 1) + w.a[static_cast<size_t>(j)] * (s - 1);
    w.nu_seq.push_back(nu);
  }
  w.nu = nu + (k - 1);
  return w;
}

std::vector<Polynomial> canonicalize_span(const std::vector<Polynomial>& polys) {
  RingPtr ring;
  std::map<Exponents, int, MonomialLess> cols;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (!ring) ring = p.ring();
    require_same_ring(p.ring(), ring, "canonicalize_span");
    for (const auto& [e, c] : p.terms()) cols.emplace(e, 0);
  }
  if (!ring) return {};
  std::vector<Exponents> monos;
  monos.reserve(cols.size());
  for (auto& [e, idx] : cols) {
    idx = static_cast<int>(monos.size());
    monos.push_back(e);
  }
  RationalMatrix M(0, monos.size());
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    RationalMatrix::SparseRow row;
    for (const auto& [e, c] : p.terms()) row.emplace_back(cols.at(e), c);
    M.append_row(std::move(row));
  }
  const auto e = M.rref();
  std::vector<Polynomial> out;
  out.reserve(e.rank);
  for (size_t i = 0; i < e.rank; ++i) {
    TermMap terms;
    for (const auto& [col, val] : e.reduced.row(i)) terms.emplace(monos[static_cast<size_t>(col)], val);
    out.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return out;
}

bool same_span(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  const auto ca = canonicalize_span(a);
  const auto cb = canonicalize_span(b);
  if (ca.size() != cb.size()) return false;
  for (size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] != cb[i]) return false;
  }
  return true;
}

Polynomial integer_scaled(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1;
  for (const auto& [e, c] : p.terms()) den = lcm(den, c.denominator());
  mpz_class content = 0;
  for (const auto& [e, c] : p.terms()) content = gcd(content, mpz_class(c.numerator() * (den / c.denominator())));
  Rational scale(den, content);
  if ((p.terms().begin()->second * scale).sign() < 0) scale = -scale;
  return p.scaled(scale);
}

SPolyBasis spoly_basis(const SPolyProblem& P, const SolveOptions& opt) {
  const LieAlgebra& A = P.algebra;
  const int n = A.dim();

  if (P.S.empty()) throw InputError("spoly: the set S of directions is empty");
  if (P.mode == SPolyMode::PerDirection && P.orders.size() != P.S.size())
    throw InputError("spoly: one order per direction required");
  if (P.mode == SPolyMode::SubspaceUniform && P.orders.size() != 1)
    throw InputError("spoly: subspace mode takes a single uniform order");
  for (int o : P.orders) {
    if (o < 1) throw InputError("spoly: polynomiality orders must be >= 1");
  }
  for (const auto& v : P.S) {
    if (static_cast<int>(v.size()) != n)
      throw InputError("spoly: direction coordinates must match the algebra dimension");
    bool zero = true;
    for (const auto& c : v) zero = zero && c.is_zero();
    if (zero) throw InputError("spoly: zero directions are not allowed");
  }
  if (!same_algebra(A, P.chart.algebra()))
    throw InputError("spoly: the chart was built for a different algebra");
  const LieAlgebra::ValidationReport vrep = A.validate();
  if (!vrep.axioms_ok())
    throw InputError("spoly: the structure constants do not define a Lie algebra");
  if (A.graded() && !vrep.grading_consistent)
    throw InputError("spoly: the declared weights are not consistent with the brackets");
  if (!A.nilpotent())
    throw InputError(
        "spoly: the algebra is not nilpotent, so exponential coordinates are not a polynomial "
        "chart; for the non-nilpotent phenomena see the built-in counterexample checks "
        "(verify counterexamples)");
  const GenerationResult gen = lie_generates(A, P.S);
  if (!gen.generates) {
    std::string closure;
    for (size_t r = 0; r < gen.closure.rows(); ++r) {
      if (r) closure += ", ";
      closure += format_element(A.names(), dense_row(gen.closure, r));
    }
    throw InputError("spoly: S does not Lie generate the algebra (the theorem hypothesis), "
                     "its closure has dimension " +
                     std::to_string(gen.closure.rows()) + " of " + std::to_string(n) +
                     " and is spanned by " + closure);
  }

  const int kmax = P.max_order();
  const long guard = opt.candidate_guard;
  if (opt.degree && *opt.degree < 0) throw InputError("spoly: --degree must be >= 0");

  SPolyBasis R{P};

  // Route: layer-decoupled solve in the problem chart when the directions
  // span the first layer of a stratification.
  const auto strat = effective_stratified_weights(A);
  bool carnot = false;
  if (strat) {
    std::vector<int> layer1;
    for (int i = 0; i < n; ++i) {
      if ((*strat)[static_cast<size_t>(i)] == 1) layer1.push_back(i);
    }
    bool supported = true;
    for (const auto& v : P.S) {
      for (int i = 0; i < n; ++i) {
        if ((*strat)[static_cast<size_t>(i)] != 1 && !v[static_cast<size_t>(i)].is_zero())
          supported = false;
      }
    }
    if (supported) {
      std::vector<RatVec> restricted;
      for (const auto& v : P.S) {
        RatVec r;
        r.reserve(layer1.size());
        for (int i : layer1) r.push_back(v[static_cast<size_t>(i)]);
        restricted.push_back(std::move(r));
      }
      carnot = span_basis(static_cast<int>(layer1.size()), restricted).rows() == layer1.size();
    }
  }

  const std::vector<Derivation> down_fields = left_invariant_fields(P.chart);
  const std::vector<Condition> down_conds =
      build_conditions(A, P.mode, P.S, P.orders, down_fields, P.chart.ring());

  auto resolve_degree = [&](const DegreeBoundWitness& wit) -> long {
    if (opt.degree) return *opt.degree;
    if (!wit.nu.fits_slong_p())
      throw InputError("spoly: the certified degree bound " + wit.nu.get_str() +
                       " is out of enumeration reach; supply --degree");
    return wit.nu.get_si();
  };

  std::function<std::vector<Polynomial>(long)> solve_at;

  if (carnot) {
    R.route = "carnot-layer";
    R.weighted = true;  // solve_degree counts the problem chart's stratified degree
    R.route_detail = "weighted-degree blocks over the stratification, one kernel per degree";
    R.witness = degree_bound(kmax, std::max(A.step(), 1), 2L * n);
    const std::vector<int> w = *strat;
    solve_at = [&, w](long N) {
      long count = 0;
      for (long d = 0; d <= N; ++d) enumerate_block(w, d, nullptr, guard, &count);
      std::vector<Polynomial> basis;
      for (long d = 0; d <= N; ++d) {
        std::vector<Exponents> cands;
        long unused = 0;
        enumerate_block(w, d, &cands, guard + 1, &unused);
        if (cands.empty()) continue;
        std::sort(cands.begin(), cands.end(), MonomialLess{});
        auto part = kernel_polys(P.chart.ring(), cands, down_conds);
        for (auto& p : part) basis.push_back(std::move(p));
      }
      sort_by_leading(&basis);
      return basis;
    };
  } else {
    R.route = "free-lift";
    // Lift each direction to one generator of the free nilpotent algebra of
    // the same step; its generators span the first layer, so the layer solve
    // applies upstairs.  The extra linear conditions cut out the functions
    // that factor through the quotient, and a right inverse of the quotient
    // map pulls the basis back down.
    std::vector<RatVec> targets;
    if (P.mode == SPolyMode::PerDirection) {
      targets = P.S;
    } else {
      const RationalMatrix span = span_basis(n, P.S);
      for (size_t r = 0; r < span.rows(); ++r) targets.push_back(dense_row(span, r));
    }
    const int m = static_cast<int>(targets.size());
    const FreeNilpotent F = FreeNilpotent::build(m, A.step());
    const AlgebraHom hom = extend_hom(F, A, targets);
    if (!hom.surjective) throw MathError("spoly: free lift lost surjectivity");
    const LieAlgebra& FA = F.algebra();
    const int nF = FA.dim();
    R.witness = degree_bound(kmax, A.step(), 2L * nF);
    R.route_detail = "free_nilpotent(" + std::to_string(m) + ", " + std::to_string(A.step()) +
                     ") of dimension " + std::to_string(nF) + ", quotient kernel dimension " +
                     std::to_string(nF - n);

    const Chart up_chart = Chart::first_kind(FA, "y");
    const std::vector<Derivation> up_fields = left_invariant_fields(up_chart);
    std::vector<RatVec> up_S;
    for (int i = 0; i < m; ++i) {
      RatVec e(static_cast<size_t>(nF), Rational(0));
      e[static_cast<size_t>(i)] = Rational(1);
      up_S.push_back(std::move(e));
    }
    std::vector<Condition> up_conds =
        build_conditions(FA, P.mode, up_S, P.orders, up_fields, up_chart.ring());
    for (const auto& wvec : hom.matrix.kernel_basis()) {
      Condition c;
      c.words.push_back(OperatorWord{direction_field(up_chart.ring(), up_fields, wvec)});
      c.label = "invariance along " + format_element(FA.names(), wvec);
      up_conds.push_back(std::move(c));
    }

    // Right inverse of the quotient on first-kind coordinates.
    const Chart* first_chart = nullptr;
    std::optional<Chart> own_first;
    if (P.chart.kind() == ChartKind::FirstKind) {
      first_chart = &P.chart;
    } else {
      own_first.emplace(Chart::first_kind(A));
      first_chart = &*own_first;
    }
    const RingPtr first_ring = first_chart->ring();
    PolyVec sigma_images(static_cast<size_t>(nF), Polynomial(first_ring));
    for (int i = 0; i < n; ++i) {
      RatVec e(static_cast<size_t>(n), Rational(0));
      e[static_cast<size_t>(i)] = Rational(1);
      const RatVec col = hom.matrix.solve_particular(e);
      for (int j = 0; j < nF; ++j) {
        if (!col[static_cast<size_t>(j)].is_zero())
          sigma_images[static_cast<size_t>(j)] +=
              Polynomial::variable(first_ring, i).scaled(col[static_cast<size_t>(j)]);
      }
    }

    const std::vector<int> wF = FA.weights();
    solve_at = [&, wF, up_conds, sigma_images](long N) {
      long count = 0;
      for (long d = 0; d <= N; ++d) enumerate_block(wF, d, nullptr, guard, &count);
      std::vector<Exponents> cands;
      for (long d = 0; d <= N; ++d) {
        long unused = 0;
        enumerate_block(wF, d, &cands, guard + 1, &unused);
      }
      std::sort(cands.begin(), cands.end(), MonomialLess{});
      const auto up_basis = kernel_polys(up_chart.ring(), cands, up_conds);
      std::vector<Polynomial> down;
      down.reserve(up_basis.size());
      for (const auto& h : up_basis) {
        Polynomial f = h.compose(first_ring, sigma_images);
        if (P.chart.kind() != ChartKind::FirstKind) f = change_chart(f, *first_chart, P.chart);
        down.push_back(std::move(f));
      }
      return canonicalize_span(down);
    };

    const long N = resolve_degree(R.witness);
    R.solve_degree = N;
    R.certificate = opt.degree ? Certificate::StabilizationChecked : Certificate::CertifiedBound;
    R.basis = solve_at(N);
    if (opt.degree) {
      if (!same_span(R.basis, solve_at(N + 1)) || !same_span(R.basis, solve_at(N + 2)))
        throw InputError("spoly: the solution space did not stabilize at degree " +
                         std::to_string(N) + "; supply a larger --degree");
    }
    for (const auto& f : R.basis) {
      for (const auto& c : down_conds) {
        if (!c.apply(f).is_zero())
          throw MathError("spoly: soundness check failed for basis element " + f.str() +
                          " under " + c.label);
      }
    }
    return R;
  }

  const long N = resolve_degree(R.witness);
  R.solve_degree = N;
  R.certificate = opt.degree ? Certificate::StabilizationChecked : Certificate::CertifiedBound;
  R.basis = solve_at(N);
  if (opt.degree) {
    if (!same_span(R.basis, solve_at(N + 1)) || !same_span(R.basis, solve_at(N + 2)))
      throw InputError("spoly: the solution space did not stabilize at degree " +
                       std::to_string(N) + "; supply a larger --degree");
  }
  for (const auto& f : R.basis) {
    for (const auto& c : down_conds) {
      if (!c.apply(f).is_zero())
        throw MathError("spoly: soundness check failed for basis element " + f.str() + " under " +
                        c.label);
    }
  }
  return R;
}

int differential_degree(const Chart& chart, const Polynomial& f) {
  require_same_ring(f.ring(), chart.ring(), "differential_degree");
  if (f.is_zero()) return 0;
  const auto fields = left_invariant_fields(chart);
  std::vector<Polynomial> level = {f};
  for (int m = 0; m < 10000; ++m) {
    std::vector<Polynomial> next;
    for (const auto& g : level) {
      for (const auto& X : fields) {
        Polynomial h = X(g);
        if (!h.is_zero()) next.push_back(std::move(h));
      }
    }
    if (next.empty()) return m;
    level = canonicalize_span(next);
  }
  throw MathError("differential_degree: derivative spans did not reach zero");
}

bool leibman_check(const Chart& chart, const Polynomial& f, int d) {
  require_same_ring(f.ring(), chart.ring(), "leibman_check");
  if (d < 0) throw InputError("leibman_check: the degree must be >= 0");
  const LieAlgebra& A = chart.algebra();
  const int n = chart.dim();
  const int m = d + 1;

  std::vector<std::string> extra;
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i <= n; ++i) extra.push_back("g" + std::to_string(j) + "_" + std::to_string(i));
  }
  const RingPtr ext = extend_ring(chart.ring(), std::move(extra));
  const auto embed = identity_embedding(n);

  PolyVec base;
  base.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    base.push_back(chart.to_first_map()[static_cast<size_t>(i)].remap(ext, embed));
  std::vector<PolyVec> gs(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    PolyVec g;
    g.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g.push_back(Polynomial::variable(ext, n + j * n + i));
    gs[static_cast<size_t>(j)] = std::move(g);
  }

  Polynomial acc(ext);
  std::function<void(int, const PolyVec&, int)> rec = [&](int j, const PolyVec& point,
                                                          int included) {
    if (j == m) {
      const Polynomial value = f.compose(ext, chart.from_first(point));
      acc += (m - included) % 2 == 1 ? -value : value;
      return;
    }
    rec(j + 1, point, included);
    rec(j + 1, bch(A, point, gs[static_cast<size_t>(j)]), included + 1);
  };
  rec(0, base, 0);
  return acc.is_zero();
}

bool verify_representation(const Chart& chart, const Polynomial& f, const RatVec& X,
                           const std::vector<RatVec>& word, int k) {
  require_same_ring(f.ring(), chart.ring(), "verify_representation");
  if (k < 1) throw InputError("verify_representation: k must be >= 1");
  const LieAlgebra& A = chart.algebra();
  const int n = chart.dim();
  const auto fields = left_invariant_fields(chart);

  const Derivation DX = direction_field(chart.ring(), fields, X);
  Polynomial chk = f;
  for (int i = 0; i < k; ++i) chk = DX(chk);
  if (!chk.is_zero())
    throw InputError("verify_representation: the hypothesis X^k f = 0 fails for this input");

  const RingPtr ext = extend_ring(chart.ring(), {"t"});
  const int t_idx = n;
  const auto embed = identity_embedding(n);

  // Left side: the word applied downstairs, then composed with q exp(tX).
  OperatorWord down_word;
  down_word.reserve(word.size());
  for (const auto& v : word) down_word.push_back(direction_field(chart.ring(), fields, v));
  const Polynomial wf = apply_word(down_word, f);

  PolyVec base;
  base.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    base.push_back(chart.to_first_map()[static_cast<size_t>(i)].remap(ext, embed));
  PolyVec tX(static_cast<size_t>(n), Polynomial(ext));
  for (int i = 0; i < n; ++i) {
    if (!X[static_cast<size_t>(i)].is_zero()) {
      Exponents e(static_cast<size_t>(ext->nvars()), 0);
      e[static_cast<size_t>(t_idx)] = 1;
      tX[static_cast<size_t>(i)] = Polynomial::monomial(ext, std::move(e), X[static_cast<size_t>(i)]);
    }
  }
  const PolyVec moved = chart.from_first(bch(A, base, tX));
  const Polynomial lhs = wf.compose(ext, moved);

  // Right side: Ad-conjugated word times the Taylor terms in t.
  const PolyMatrix M = ad_exp(A, tX);
  std::vector<Derivation> fields_ext;
  fields_ext.reserve(fields.size());
  for (const auto& fd : fields) fields_ext.push_back(fd.remap(ext, embed));
  OperatorWord conj_word;
  conj_word.reserve(word.size());
  for (const auto& v : word) {
    const PolyVec av = apply_poly_matrix(M, v, ext);
    Derivation dv = Derivation::zero(ext);
    for (int i = 0; i < n; ++i) {
      if (!av[static_cast<size_t>(i)].is_zero())
        dv = dv + fields_ext[static_cast<size_t>(i)].scaled(av[static_cast<size_t>(i)]);
    }
    conj_word.push_back(std::move(dv));
  }

  Polynomial rhs(ext);
  Polynomial xif = f;
  for (int i = 0; i < k; ++i) {
    if (i > 0) xif = DX(xif);
    if (xif.is_zero()) break;
    Exponents e(static_cast<size_t>(ext->nvars()), 0);
    e[static_cast<size_t>(t_idx)] = i;
    const Polynomial ti = Polynomial::monomial(ext, std::move(e), inv_factorial(static_cast<unsigned>(i)));
    rhs += apply_word(conj_word, xif.remap(ext, embed)) * ti;
  }
  return lhs == rhs;
}

Polynomial restrict_along_flows(const Chart& chart, const Polynomial& f, const RatVec& p,
                                const std::vector<RatVec>& Ys, int k) {
  require_same_ring(f.ring(), chart.ring(), "restrict_along_flows");
  if (k < 1) throw InputError("restrict_along_flows: k must be >= 1");
  if (Ys.empty()) throw InputError("restrict_along_flows: at least one flow direction required");
  const LieAlgebra& A = chart.algebra();
  const int n = chart.dim();
  if (static_cast<int>(p.size()) != n)
    throw InputError("restrict_along_flows: base point must be in first-kind coordinates");
  const auto fields = left_invariant_fields(chart);
  const int ell = static_cast<int>(Ys.size());

  for (const auto& Y : Ys) {
    Polynomial chk = f;
    const Derivation DY = direction_field(chart.ring(), fields, Y);
    for (int i = 0; i < k; ++i) chk = DY(chk);
    if (!chk.is_zero())
      throw InputError("restrict_along_flows: f is not k-polynomial along every flow direction");
  }

  const DegreeBoundWitness wit = degree_bound(k, std::max(A.step(), 1), ell);

  // Direct composition in the flow times.
  const RingPtr tring = Ring::polynomial("t", ell);
  PolyVec cur;
  cur.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) cur.emplace_back(tring, p[static_cast<size_t>(i)]);
  for (int j = 0; j < ell; ++j) {
    PolyVec tY(static_cast<size_t>(n), Polynomial(tring));
    for (int i = 0; i < n; ++i) {
      if (!Ys[static_cast<size_t>(j)][static_cast<size_t>(i)].is_zero()) {
        Exponents e(static_cast<size_t>(ell), 0);
        e[static_cast<size_t>(j)] = 1;
        tY[static_cast<size_t>(i)] =
            Polynomial::monomial(tring, std::move(e), Ys[static_cast<size_t>(j)][static_cast<size_t>(i)]);
      }
    }
    cur = bch(A, cur, tY);
  }
  const Polynomial P = f.compose(tring, chart.from_first(cur));

  if (mpz_class(P.degree()) > wit.nu)
    throw MathError("restrict_along_flows: polynomial degree exceeds the certified bound");

  // Explicit expansion: conjugated flow derivatives evaluated at the base
  // point, weighted by the Taylor monomials of each flow time.
  std::vector<std::string> tnames;
  for (int j = 1; j <= ell; ++j) tnames.push_back("t" + std::to_string(j));
  const RingPtr ext = extend_ring(chart.ring(), tnames);
  const auto embed = identity_embedding(n);
  std::vector<Derivation> fields_ext;
  for (const auto& fd : fields) fields_ext.push_back(fd.remap(ext, embed));

  PolyMatrix M(static_cast<size_t>(n), PolyVec(static_cast<size_t>(n), Polynomial(ext)));
  for (int i = 0; i < n; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i)] = Polynomial(ext, Rational(1));
  std::vector<Derivation> flow_ops;
  for (int j = 0; j < ell; ++j) {
    const PolyVec aj = apply_poly_matrix(M, Ys[static_cast<size_t>(j)], ext);
    Derivation dj = Derivation::zero(ext);
    for (int i = 0; i < n; ++i) {
      if (!aj[static_cast<size_t>(i)].is_zero())
        dj = dj + fields_ext[static_cast<size_t>(i)].scaled(aj[static_cast<size_t>(i)]);
    }
    flow_ops.push_back(std::move(dj));
    PolyVec tY(static_cast<size_t>(n), Polynomial(ext));
    for (int i = 0; i < n; ++i) {
      if (!Ys[static_cast<size_t>(j)][static_cast<size_t>(i)].is_zero()) {
        Exponents e(static_cast<size_t>(ext->nvars()), 0);
        e[static_cast<size_t>(n + j)] = 1;
        tY[static_cast<size_t>(i)] =
            Polynomial::monomial(ext, std::move(e), Ys[static_cast<size_t>(j)][static_cast<size_t>(i)]);
      }
    }
    M = poly_matrix_product(M, ad_exp(A, tY));
  }

  const RatVec q = chart_point(chart, p);
  std::vector<std::pair<int, Rational>> at_q;
  for (int i = 0; i < n; ++i) at_q.emplace_back(i, q[static_cast<size_t>(i)]);

  auto formula_sum = [&](const Polynomial& g0) {
    Polynomial acc(ext);
    std::function<void(int, const Polynomial&)> rec = [&](int j, const Polynomial& g) {
      if (j == ell) {
        acc += g.eval_partial(at_q);
        return;
      }
      Polynomial cur_g = g;
      for (int i = 0; i < k; ++i) {
        if (i > 0) {
          cur_g = flow_ops[static_cast<size_t>(j)](cur_g);
          if (cur_g.is_zero()) break;
        }
        Exponents e(static_cast<size_t>(ext->nvars()), 0);
        e[static_cast<size_t>(n + j)] = i;
        rec(j + 1,
            cur_g * Polynomial::monomial(ext, std::move(e), inv_factorial(static_cast<unsigned>(i))));
      }
    };
    rec(0, g0.remap(ext, embed));
    return acc;
  };

  std::vector<int> twhere(static_cast<size_t>(ell));
  for (int j = 0; j < ell; ++j) twhere[static_cast<size_t>(j)] = n + j;
  const Polynomial P_ext = P.remap(ext, twhere);
  if (formula_sum(f) != P_ext)
    throw MathError("restrict_along_flows: conjugated-derivative expansion disagrees");

  // The restriction may only see the jet of f at p up to order D.
  const long fdeg = f.degree();
  if (wit.D.fits_slong_p() && wit.D.get_si() < fdeg) {
    const long D = wit.D.get_si();
    PolyVec shift, unshift;
    for (int i = 0; i < n; ++i) {
      shift.push_back(Polynomial::variable(chart.ring(), i) +
                      Polynomial(chart.ring(), q[static_cast<size_t>(i)]));
      unshift.push_back(Polynomial::variable(chart.ring(), i) -
                        Polynomial(chart.ring(), q[static_cast<size_t>(i)]));
    }
    const Polynomial centered = f.compose(chart.ring(), shift);
    TermMap kept;
    for (const auto& [e, c] : centered.terms()) {
      if (total_degree(e) <= D) kept.emplace(e, c);
    }
    const Polynomial jet = Polynomial::from_terms(chart.ring(), std::move(kept)).compose(chart.ring(), unshift);
    if (formula_sum(jet) != P_ext)
      throw MathError("restrict_along_flows: restriction depends on jets beyond order D");
  }

  return P;
}

bool lcs_invariance(const Chart& chart, const Polynomial& f, int d) {
  require_same_ring(f.ring(), chart.ring(), "lcs_invariance");
  if (d < 0) throw InputError("lcs_invariance: d must be >= 0");
  if (differential_degree(chart, f) > d)
    throw InputError("lcs_invariance: f must have differential degree <= d");
  const LieAlgebra& A = chart.algebra();
  const auto chain = A.lower_central_series();
  if (d >= static_cast<int>(chain.bases.size())) return true;
  const auto fields = left_invariant_fields(chart);
  const RationalMatrix& gd = chain.bases[static_cast<size_t>(d)];
  for (size_t r = 0; r < gd.rows(); ++r) {
    const Derivation X = direction_field(chart.ring(), fields, dense_row(gd, r));
    if (!X(f).is_zero()) return false;
  }
  return true;
}

std::vector<Rational> vandermonde_fit(const std::vector<std::pair<Rational, Rational>>& samples,
                                      int k) {
  if (k < 1) throw InputError("vandermonde_fit: k must be >= 1");
  if (static_cast<int>(samples.size()) != k)
    throw InputError("vandermonde_fit: exactly k samples required");
  for (size_t i = 0; i < samples.size(); ++i) {
    for (size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].first == samples[j].first)
        throw InputError("vandermonde_fit: sample times must be pairwise distinct");
    }
  }
  RationalMatrix V(static_cast<size_t>(k), static_cast<size_t>(k));
  std::vector<Rational> rhs;
  rhs.reserve(samples.size());
  for (int i = 0; i < k; ++i) {
    Rational pw(1);
    for (int j = 0; j < k; ++j) {
      V.set(static_cast<size_t>(i), static_cast<size_t>(j), pw);
      pw *= samples[static_cast<size_t>(i)].first;
    }
    rhs.push_back(samples[static_cast<size_t>(i)].second);
  }
  return V.solve(rhs);
}

}  // namespace hpoly
