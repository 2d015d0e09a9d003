#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpoly/builtins.hpp"
#include "hpoly/chart.hpp"
#include "hpoly/derivation.hpp"
#include "hpoly/errors.hpp"
#include "hpoly/spoly.hpp"

using namespace hpoly;

namespace {

Polynomial var(const RingPtr& r, const std::string& name) {
  return Polynomial::variable(r, r->index_of(name));
}

RatVec unit(const LieAlgebra& A, const std::string& name) {
  RatVec v(A.dim(), Rational(0));
  v[A.index_of(name)] = Rational(1);
  return v;
}

Derivation direction_field(const Chart& chart, const RatVec& v) {
  const auto fields = left_invariant_fields(chart);
  Derivation d = Derivation::zero(chart.ring());
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != Rational(0)) d = d + fields[i].scaled(v[i]);
  return d;
}

bool in_span(const std::vector<Polynomial>& basis, const Polynomial& f) {
  std::vector<Polynomial> extended = basis;
  extended.push_back(f);
  return canonicalize_span(extended).size() == basis.size();
}

// The certified kernel of {X1^2, X2^2} on the Heisenberg group in descending
// second-kind coordinates.  Derived independently of the solver: the general
// solution of the system f = A(x2,x3) + x1 B(x2,x3), A_22 = 0,
// 2 A_23 + B_22 = 0, A_33 + 2 B_23 = 0, B_33 = 0 has exactly eight free
// parameters, spanning the functions below.
std::vector<Polynomial> heisenberg_direction_oracle(const RingPtr& r) {
  const Polynomial x1 = var(r, "x1"), x2 = var(r, "x2"), x3 = var(r, "x3");
  return {Polynomial(r, Rational(1)),
          x1,
          x2,
          x3,
          x1 * x2,
          x1 * x3,
          x2 * x3 - x1 * x2 * x2,
          x3 * x3 - x1 * x2 * x3};
}

int brute_force_degree(const Chart& chart, const Polynomial& f, int cap) {
  const auto fields = left_invariant_fields(chart);
  const int n = static_cast<int>(fields.size());
  for (int d = 0; d <= cap; ++d) {
    // All n^(d+1) words of length d+1 must annihilate f.
    std::vector<int> word(d + 1, 0);
    bool all_zero = true;
    while (true) {
      Polynomial g = f;
      for (int i = d; i >= 0 && !g.is_zero(); --i) g = fields[word[i]](g);
      if (!g.is_zero()) {
        all_zero = false;
        break;
      }
      int pos = 0;
      while (pos <= d && ++word[pos] == n) word[pos++] = 0;
      if (pos > d) break;
    }
    if (all_zero) return d;
  }
  return cap + 1;
}

}  // namespace

TEST_CASE("degree bound recursion on the documented values") {
  const auto one_flow = degree_bound(4, 7, 1);
  CHECK(one_flow.nu == 3);
  CHECK(one_flow.D == 3);
  CHECK(one_flow.a == std::vector<mpz_class>{3});
  CHECK(one_flow.nu_seq.empty());

  const auto constant = degree_bound(1, 5, 9);
  CHECK(constant.nu == 0);
  CHECK(constant.D == 0);

  const auto small = degree_bound(2, 2, 2);
  CHECK(small.a == std::vector<mpz_class>{3, 1});
  CHECK(small.nu_seq == std::vector<mpz_class>{2});
  CHECK(small.nu == 3);
  CHECK(small.D == 3);

  const auto engel_pair = degree_bound(2, 3, 2);
  CHECK(engel_pair.a == std::vector<mpz_class>{4, 1});
  CHECK(engel_pair.nu_seq == std::vector<mpz_class>{3});
  CHECK(engel_pair.nu == 4);
  CHECK(engel_pair.D == 4);

  CHECK(degree_bound(2, 2, 6).nu == 63);
  CHECK(degree_bound(2, 3, 8).nu == 3280);

  CHECK_THROWS_AS((void)degree_bound(0, 2, 2), const InputError&);
  CHECK_THROWS_AS((void)degree_bound(2, 0, 2), const InputError&);
  CHECK_THROWS_AS((void)degree_bound(2, 2, 0), const InputError&);
}

TEST_CASE("degree bound is monotone in every argument") {
  for (long k = 1; k <= 4; ++k)
    for (long s = 1; s <= 4; ++s)
      for (long ell = 1; ell <= 4; ++ell) {
        const auto base = degree_bound(k, s, ell);
        CHECK(degree_bound(k + 1, s, ell).nu >= base.nu);
        CHECK(degree_bound(k, s + 1, ell).nu >= base.nu);
        CHECK(degree_bound(k, s, ell + 1).nu >= base.nu);
      }
}

TEST_CASE("heisenberg per-direction space is the certified eight-dimensional kernel") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto prob =
      SPolyProblem::directions(h, ch, {unit(h, "X1"), unit(h, "X2")}, {2, 2});
  const auto result = spoly_basis(prob);

  CHECK(result.route == "carnot-layer");
  CHECK(result.certificate == Certificate::CertifiedBound);
  CHECK(result.weighted);
  CHECK(result.witness.nu == 63);
  CHECK(result.solve_degree == 63);
  CHECK(result.dimension() == 8);
  CHECK(same_span(result.basis, heisenberg_direction_oracle(ch.ring())));

  // Soundness directly through the fields.
  const Derivation X1 = direction_field(ch, unit(h, "X1"));
  const Derivation X2 = direction_field(ch, unit(h, "X2"));
  for (const auto& f : result.basis) {
    CHECK(X1(X1(f)).is_zero());
    CHECK(X2(X2(f)).is_zero());
  }

  // The reported basis is already canonical.
  const auto canon = canonicalize_span(result.basis);
  REQUIRE(canon.size() == result.basis.size());
  for (size_t i = 0; i < canon.size(); ++i) CHECK(canon[i] == result.basis[i]);
}

TEST_CASE("heisenberg subspace-uniform space in the first kind chart") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::first_kind(h);
  const auto prob = SPolyProblem::subspace(h, ch, {unit(h, "X1"), unit(h, "X2")}, 2);
  const auto result = spoly_basis(prob);
  const RingPtr r = ch.ring();

  CHECK(result.certificate == Certificate::CertifiedBound);
  CHECK(result.dimension() == 4);
  CHECK(same_span(result.basis, {Polynomial(r, Rational(1)), var(r, "a1"), var(r, "a2"),
                                 var(r, "a3")}));
}

TEST_CASE("subspace mode rejects mixed-direction second derivatives") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto prob = SPolyProblem::subspace(h, ch, {unit(h, "X1"), unit(h, "X2")}, 2);
  const auto result = spoly_basis(prob);
  const RingPtr r = ch.ring();

  CHECK(result.dimension() == 4);
  const Polynomial x1x3 = var(r, "x1") * var(r, "x3");
  CHECK(!in_span(result.basis, x1x3));
  // (X1 + X2)^2 kills everything in the subspace-uniform space but not x1x3.
  const Derivation D = direction_field(ch, {Rational(1), Rational(1), Rational(0)});
  for (const auto& f : result.basis) CHECK(D(D(f)).is_zero());
  CHECK(!D(D(x1x3)).is_zero());
}

TEST_CASE("duplicate directions do not change the subspace problem") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto a = spoly_basis(
      SPolyProblem::subspace(h, ch, {unit(h, "X1"), unit(h, "X2")}, 2));
  RatVec sum(3, Rational(0));
  sum[0] = Rational(1);
  sum[1] = Rational(1);
  const auto b = spoly_basis(
      SPolyProblem::subspace(h, ch, {unit(h, "X1"), unit(h, "X2"), sum}, 2));
  CHECK(same_span(a.basis, b.basis));
  CHECK(a.dimension() == b.dimension());
}

TEST_CASE("engel per-direction space at the stabilized degree") {
  const LieAlgebra e = engel();
  const Chart ch = Chart::second_kind(e);
  const auto prob =
      SPolyProblem::directions(e, ch, {unit(e, "X1"), unit(e, "X2")}, {1, 2});
  SolveOptions opt;
  opt.degree = 6;
  const auto result = spoly_basis(prob, opt);
  const RingPtr r = ch.ring();

  CHECK(result.certificate == Certificate::StabilizationChecked);
  CHECK(result.solve_degree == 6);
  CHECK(result.witness.nu == 3280);
  const Polynomial x2 = var(r, "x2"), x3 = var(r, "x3"), x4 = var(r, "x4");
  CHECK(result.dimension() == 5);
  CHECK(same_span(result.basis,
                  {Polynomial(r, Rational(1)), x2, x3, x4,
                   x2 * x4 - (x3 * x3).scaled(Rational(1, 2))}));
}

TEST_CASE("solved spaces agree across charts") {
  const LieAlgebra h = heisenberg();
  const Chart second = Chart::second_kind(h);
  const Chart first = Chart::first_kind(h);

  const auto in_second = spoly_basis(
      SPolyProblem::directions(h, second, {unit(h, "X1"), unit(h, "X2")}, {2, 2}));
  const auto in_first = spoly_basis(
      SPolyProblem::directions(h, first, {unit(h, "X1"), unit(h, "X2")}, {2, 2}));

  std::vector<Polynomial> pushed;
  for (const auto& f : in_second.basis) pushed.push_back(change_chart(f, second, first));
  CHECK(same_span(pushed, in_first.basis));
}

TEST_CASE("free lift route reproduces the carnot result without weights") {
  const LieAlgebra weighted = heisenberg();
  const LieAlgebra plain({"X1", "X2", "X3"}, {{0, 1, 2, Rational(1)}});
  REQUIRE(!plain.graded());
  const Chart ch = Chart::second_kind(plain);
  const auto prob =
      SPolyProblem::directions(plain, ch, {unit(plain, "X1"), unit(plain, "X2")}, {2, 2});
  SolveOptions opt;
  opt.degree = 4;
  const auto result = spoly_basis(prob, opt);

  CHECK(result.route == "free-lift");
  CHECK(!result.weighted);
  CHECK(result.dimension() == 8);
  CHECK(same_span(result.basis, heisenberg_direction_oracle(ch.ring())));

  const auto reference = spoly_basis(SPolyProblem::directions(
      weighted, Chart::second_kind(weighted), {unit(weighted, "X1"), unit(weighted, "X2")},
      {2, 2}));
  CHECK(same_span(result.basis, reference.basis));
}

TEST_CASE("free lift route handles directions outside the first layer") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  RatVec mixed(3, Rational(0));
  mixed[1] = Rational(1);
  mixed[2] = Rational(1);  // X2 + X3
  const auto prob = SPolyProblem::directions(h, ch, {unit(h, "X1"), mixed}, {2, 2});
  SolveOptions opt;
  opt.degree = 5;
  const auto result = spoly_basis(prob, opt);

  CHECK(result.route == "free-lift");
  const RingPtr r = ch.ring();
  const Polynomial x1 = var(r, "x1"), x2 = var(r, "x2"), x3 = var(r, "x3");
  for (const Polynomial& f :
       {Polynomial(r, Rational(1)), x1, x2, x3 - x1 * x2}) {
    CHECK(in_span(result.basis, f));
  }

  const Derivation X1 = direction_field(ch, unit(h, "X1"));
  const Derivation Y = direction_field(ch, mixed);
  for (const auto& f : result.basis) {
    CHECK(X1(X1(f)).is_zero());
    CHECK(Y(Y(f)).is_zero());
  }
}

TEST_CASE("candidate guard refuses oversized enumerations") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto prob =
      SPolyProblem::directions(h, ch, {unit(h, "X1"), unit(h, "X2")}, {2, 2});
  SolveOptions opt;
  opt.candidate_guard = 10;
  CHECK_THROWS_AS((void)spoly_basis(prob, opt), const InputError&);
}

TEST_CASE("stabilization check rejects a degree that is too small") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto prob =
      SPolyProblem::directions(h, ch, {unit(h, "X1"), unit(h, "X2")}, {2, 2});
  SolveOptions opt;
  opt.degree = 2;
  CHECK_THROWS_AS((void)spoly_basis(prob, opt), const InputError&);

  opt.degree = 4;
  const auto result = spoly_basis(prob, opt);
  CHECK(result.certificate == Certificate::StabilizationChecked);
  CHECK(result.dimension() == 8);
  CHECK(same_span(result.basis, heisenberg_direction_oracle(ch.ring())));
}

TEST_CASE("problem validation rejects malformed inputs") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);

  CHECK_THROWS_AS((void)spoly_basis(SPolyProblem::directions(h, ch, {}, {})),
                  const InputError&);
  CHECK_THROWS_AS(
      (void)spoly_basis(SPolyProblem::directions(h, ch, {unit(h, "X1")}, {2, 2})),
      const InputError&);
  CHECK_THROWS_AS(
      (void)spoly_basis(SPolyProblem::directions(h, ch, {unit(h, "X1")}, {0})),
      const InputError&);
  CHECK_THROWS_AS(
      (void)spoly_basis(SPolyProblem::directions(h, ch, {RatVec(3, Rational(0))}, {2})),
      const InputError&);
}

TEST_CASE("non-generating directions are rejected with the closure") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto prob = SPolyProblem::directions(h, ch, {unit(h, "X3")}, {1});
  try {
    (void)spoly_basis(prob);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("Lie generate") != std::string::npos);
    CHECK(msg.find("X3") != std::string::npos);
  }
}

TEST_CASE("differential degree on known functions") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const RingPtr r = ch.ring();
  CHECK(differential_degree(ch, Polynomial(r, Rational(1))) == 0);
  CHECK(differential_degree(ch, var(r, "x1")) == 1);
  CHECK(differential_degree(ch, var(r, "x1") * var(r, "x3")) == 3);

  const LieAlgebra e = engel();
  const Chart first = Chart::first_kind(e);
  const RingPtr rf = first.ring();
  const Polynomial f =
      var(rf, "a4").scaled(Rational(6)) + var(rf, "a1") * var(rf, "a3");
  CHECK(differential_degree(first, f) == brute_force_degree(first, f, 5));
}

TEST_CASE("differential degree agrees with word enumeration on solved bases") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  for (const auto& f : heisenberg_direction_oracle(ch.ring()))
    CHECK(differential_degree(ch, f) == brute_force_degree(ch, f, 5));
}

TEST_CASE("leibman difference operator detects the polynomial degree") {
  const LieAlgebra h = heisenberg();
  const Chart second = Chart::second_kind(h);
  const Chart first = Chart::first_kind(h);
  const RingPtr r = second.ring();

  CHECK(leibman_check(second, Polynomial(r, Rational(1)), 0));
  CHECK(leibman_check(first, var(first.ring(), "a1"), 1));
  const Polynomial f = var(r, "x1") * var(r, "x3");
  CHECK(!leibman_check(second, f, 2));
  CHECK(leibman_check(second, f, 3));
}

TEST_CASE("lcs invariance holds at the differential degree") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const RingPtr r = ch.ring();
  const Polynomial f = var(r, "x1") * var(r, "x3");
  CHECK(lcs_invariance(ch, f, 3));
  CHECK_THROWS_AS((void)lcs_invariance(ch, f, 2), const InputError&);

  const LieAlgebra e = engel();
  const Chart se = Chart::second_kind(e);
  // x3 has differential degree 2 and g_2 = span{X4} with X4 = d/dx4.
  CHECK(differential_degree(se, var(se.ring(), "x3")) == 2);
  CHECK(lcs_invariance(se, var(se.ring(), "x3"), 2));

  const Chart fe = Chart::first_kind(e);
  const RingPtr rf = fe.ring();
  const Polynomial g =
      var(rf, "a4").scaled(Rational(6)) + var(rf, "a1") * var(rf, "a3");
  CHECK(lcs_invariance(fe, g, differential_degree(fe, g)));
}

TEST_CASE("representation formula on the documented instance") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const RingPtr r = ch.ring();
  const Polynomial f = var(r, "x1") * var(r, "x3");

  CHECK(verify_representation(ch, f, unit(h, "X1"), {unit(h, "X2")}, 2));
  CHECK(verify_representation(ch, f, unit(h, "X1"), {}, 2));
  CHECK(verify_representation(ch, f, unit(h, "X2"), {unit(h, "X1"), unit(h, "X3")}, 2));

  const Polynomial bad = var(r, "x3") * var(r, "x3");
  CHECK_THROWS_AS((void)verify_representation(ch, bad, unit(h, "X3"), {}, 2),
                  const InputError&);
}

TEST_CASE("flow restriction produces the expected polynomials") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const RingPtr r = ch.ring();
  const Polynomial f = var(r, "x1") * var(r, "x3");

  // Base point exp(X1), single flow along X2: f(p exp(t X2)) = t.
  const RatVec p{Rational(1), Rational(0), Rational(0)};
  const Polynomial single = restrict_along_flows(ch, f, p, {unit(h, "X2")}, 2);
  REQUIRE(single.ring()->nvars() == 1);
  CHECK(single == Polynomial::variable(single.ring(), 0));

  // Two concatenated flows from the identity: f = t1^2 t2, degree 3 = nu(2,2,2).
  const RatVec e(3, Rational(0));
  const Polynomial pair =
      restrict_along_flows(ch, f, e, {unit(h, "X1"), unit(h, "X2")}, 2);
  const RingPtr rt = pair.ring();
  CHECK(pair == Polynomial::variable(rt, 0) * Polynomial::variable(rt, 0) *
                    Polynomial::variable(rt, 1));
  CHECK(pair.degree() <= degree_bound(2, 2, 2).nu.get_si());

  const Polynomial one_out = restrict_along_flows(ch, Polynomial(r, Rational(1)), e,
                                                  {unit(h, "X1"), unit(h, "X2")}, 2);
  CHECK(one_out == Polynomial(one_out.ring(), Rational(1)));

  const Polynomial bad = var(r, "x3") * var(r, "x3");
  CHECK_THROWS_AS((void)restrict_along_flows(ch, bad, e, {unit(h, "X3")}, 2),
                  const InputError&);
}

TEST_CASE("vandermonde fit recovers exact coefficients") {
  using Sample = std::pair<Rational, Rational>;
  const std::vector<Sample> constant{{Rational(1), Rational(1)},
                                     {Rational(2), Rational(1)},
                                     {Rational(3), Rational(1)}};
  CHECK(vandermonde_fit(constant, 3) ==
        std::vector<Rational>{Rational(1), Rational(0), Rational(0)});

  const std::vector<Sample> square{{Rational(1), Rational(1)},
                                   {Rational(2), Rational(4)},
                                   {Rational(3), Rational(9)}};
  CHECK(vandermonde_fit(square, 3) ==
        std::vector<Rational>{Rational(0), Rational(0), Rational(1)});

  // Samples of x1 x3 along exp(X1) exp(t X2) match the Taylor coefficients.
  const std::vector<Sample> flow{{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
  CHECK(vandermonde_fit(flow, 2) == std::vector<Rational>{Rational(0), Rational(1)});

  const std::vector<Sample> repeated{{Rational(1), Rational(1)}, {Rational(1), Rational(2)}};
  CHECK_THROWS_AS((void)vandermonde_fit(repeated, 2), const InputError&);
}

TEST_CASE("span utilities are canonical and exact") {
  const RingPtr r = Ring::polynomial("x", 2);
  const Polynomial x1 = var(r, "x1"), x2 = var(r, "x2");

  CHECK(same_span({x1, x2}, {x1 + x2, x1 - x2}));
  CHECK(!same_span({x1, x2}, {x1}));
  CHECK(!same_span({x1}, {x2}));

  const auto canon = canonicalize_span({x1 + x2, x1 - x2, x1});
  REQUIRE(canon.size() == 2);
  CHECK(canon[0] == x1);
  CHECK(canon[1] == x2);

  const Polynomial f = x1.scaled(Rational(-1, 2)) + (x1 * x2).scaled(Rational(1, 4));
  CHECK(integer_scaled(f) == x1.scaled(Rational(2)) - x1 * x2);
}

TEST_CASE("weighted components of solved bases stay in the space") {
  const LieAlgebra h = heisenberg();
  const Chart ch = Chart::second_kind(h);
  const auto result = spoly_basis(
      SPolyProblem::directions(h, ch, {unit(h, "X1"), unit(h, "X2")}, {2, 2}));
  const Derivation X1 = direction_field(ch, unit(h, "X1"));
  const Derivation X2 = direction_field(ch, unit(h, "X2"));
  for (const auto& f : result.basis) {
    const long top = weighted_degree(f, h.weights());
    for (long d = 0; d <= top; ++d) {
      const Polynomial comp = weighted_component(f, h.weights(), d);
      if (comp.is_zero()) continue;
      CHECK(X1(X1(comp)).is_zero());
      CHECK(X2(X2(comp)).is_zero());
      CHECK(in_span(result.basis, comp));
    }
  }
}
