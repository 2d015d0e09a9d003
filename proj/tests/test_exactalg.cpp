#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "hpoly/derivation.hpp"
#include "hpoly/errors.hpp"
#include "hpoly/matrix.hpp"
#include "hpoly/polynomial.hpp"

using namespace hpoly;

namespace {

Polynomial var(const RingPtr& r, const std::string& name) {
  return Polynomial::variable(r, r->index_of(name));
}

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed * 2654435761u + 0x9E3779B97F4A7C15ull) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  long pick(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

Polynomial random_poly(Rng& rng, const RingPtr& r, int max_deg, int nterms) {
  Polynomial f(r);
  for (int t = 0; t < nterms; ++t) {
    Exponents e(r->nvars(), 0);
    int budget = static_cast<int>(rng.pick(0, max_deg));
    for (int b = 0; b < budget; ++b) e[rng.pick(0, r->nvars() - 1)]++;
    f += Polynomial::monomial(r, e, Rational(rng.pick(-4, 4)));
  }
  return f;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(7, 2) * Rational(2) == Rational(7));
  CHECK(Rational(1, 7) - Rational(1, 7) == Rational(0));
}

TEST_CASE("ring product expands binomial identity") {
  const RingPtr r = Ring::polynomial("x", 2);
  const Polynomial x1 = var(r, "x1"), x2 = var(r, "x2");
  CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);
}

TEST_CASE("additive inverse cancels to the empty term map") {
  const RingPtr r = Ring::polynomial("x", 3);
  const Polynomial f = var(r, "x1") * var(r, "x3") + Polynomial(r, Rational(5));
  const Polynomial z = f + f.scaled(Rational(-1));
  CHECK(z.is_zero());
  CHECK(z.nterms() == 0);
}

TEST_CASE("square of x3 - x1 x2 / 2 expands exactly") {
  const RingPtr r = Ring::polynomial("x", 3);
  const Polynomial x1 = var(r, "x1"), x2 = var(r, "x2"), x3 = var(r, "x3");
  const Polynomial f = x3 - (x1 * x2).scaled(Rational(1, 2));
  const Polynomial expected =
      x3 * x3 - x1 * x2 * x3 + (x1 * x1 * x2 * x2).scaled(Rational(1, 4));
  CHECK(f.pow(2) == expected);
  CHECK(f * f == expected);
}

TEST_CASE("ring axioms hold on seeded random triples") {
  const RingPtr r = Ring::polynomial("x", 3);
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const Polynomial f = random_poly(rng, r, 3, 3);
    const Polynomial g = random_poly(rng, r, 3, 3);
    const Polynomial h = random_poly(rng, r, 3, 3);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f + g) + h == f + (g + h));
  }
}

TEST_CASE("laurent variable cancels against its inverse") {
  const RingPtr r = Ring::make({{"x", true, false}});
  const Polynomial x = Polynomial::variable(r, 0);
  const Polynomial xinv = Polynomial::monomial(r, {-1}, Rational(1));
  CHECK(x * xinv == Polynomial(r, Rational(1)));
}

TEST_CASE("monomial order is graded lexicographic") {
  const RingPtr r = Ring::polynomial("x", 2);
  const Polynomial x1 = var(r, "x1"), x2 = var(r, "x2");
  // Graded-lex: lower total degree first, then lex on the exponent vector.
  const Polynomial f = x1 * x1 + x2 + x1 + Polynomial(r, Rational(3));
  std::vector<Exponents> order;
  for (const auto& [e, c] : f.terms()) order.push_back(e);
  CHECK(order == std::vector<Exponents>{{0, 0}, {1, 0}, {0, 1}, {2, 0}});
}

TEST_CASE("derivation applies the heisenberg field to coordinates") {
  const RingPtr r = Ring::polynomial("x", 3);
  const Polynomial x1 = var(r, "x1"), x3 = var(r, "x3");
  const Derivation D = Derivation::along(r, 1, Polynomial(r, Rational(1))) +
                       Derivation::along(r, 2, x1);
  CHECK(D(x3) == x1);
  CHECK(D(Polynomial(r, Rational(1))).is_zero());
}

TEST_CASE("derivation respects the declared log derivative") {
  auto r = Ring::make({{"x", false, false}, {"y", true, false}, {"L", false, true}});
  r->declare_derivative(2, 1, {{{0, -1, 0}, Rational(1)}});  // dL/dy = 1/y
  const Polynomial x = Polynomial::variable(r, 0);
  const Polynomial y = Polynomial::variable(r, 1);
  const Polynomial L = Polynomial::variable(r, 2);
  const Derivation D = Derivation::along(r, 1, y);  // y d/dy
  CHECK(D((x + Polynomial(r, Rational(1))) * L) == x + Polynomial(r, Rational(1)));
}

TEST_CASE("derivations satisfy the Leibniz rule on seeded random pairs") {
  const RingPtr r = Ring::polynomial("x", 3);
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial f = random_poly(rng, r, 3, 3);
    const Polynomial g = random_poly(rng, r, 3, 3);
    const Derivation D = Derivation::along(r, rng.pick(0, 2), random_poly(rng, r, 2, 2));
    CHECK(D(f * g) == D(f) * g + f * D(g));
  }
}

TEST_CASE("operator words compose right to left") {
  const RingPtr r = Ring::polynomial("x", 3);
  const Polynomial one(r, Rational(1));
  const Polynomial x1 = var(r, "x1"), x3 = var(r, "x3");
  const Derivation X1 = Derivation::along(r, 0, one);
  const Derivation X2 = Derivation::along(r, 1, one) + Derivation::along(r, 2, x1);
  const Polynomial f = x1 * x3;

  CHECK(apply_word({X1, X2, X1}, f) == one);
  CHECK(apply_word({}, f) == f);
  CHECK(apply_word({X1, X1}, f).is_zero());
}

TEST_CASE("kernel of the identity matrix is empty") {
  RationalMatrix m(2, 2);
  m.set(0, 0, Rational(1));
  m.set(1, 1, Rational(1));
  CHECK(m.kernel_basis().empty());
}

TEST_CASE("kernel of the zero matrix is the standard basis") {
  const RationalMatrix m(2, 2);
  const auto k = m.kernel_basis();
  REQUIRE(k.size() == 2);
  CHECK(k[0] == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(k[1] == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("kernel of a rank-one matrix") {
  RationalMatrix m(2, 2);
  m.set(0, 0, Rational(1));
  m.set(0, 1, Rational(1));
  m.set(1, 0, Rational(2));
  m.set(1, 1, Rational(2));
  const auto k = m.kernel_basis();
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<Rational>{Rational(1), Rational(-1)});
}

TEST_CASE("kernel vectors annihilate and rank accounting holds") {
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const size_t rows = rng.pick(1, 5), cols = rng.pick(1, 5);
    RationalMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (rng.pick(0, 2)) m.set(i, j, Rational(rng.pick(-3, 3)));
    const auto k = m.kernel_basis();
    CHECK(m.rref().rank + k.size() == cols);
    for (const auto& v : k) {
      for (const auto& entry : m.mul_vec(v)) CHECK(entry == Rational(0));
    }
  }
}

TEST_CASE("solve_particular returns an exact preimage") {
  RationalMatrix m(2, 3);
  m.set(0, 0, Rational(1));
  m.set(0, 2, Rational(2));
  m.set(1, 1, Rational(3));
  const std::vector<Rational> rhs{Rational(5), Rational(6)};
  const auto x = m.solve_particular(rhs);
  CHECK(m.mul_vec(x) == rhs);

  const RationalMatrix inconsistent(1, 2);
  CHECK_THROWS_AS((void)inconsistent.solve_particular({Rational(1)}), const Error&);
}

TEST_CASE("ring mismatch is rejected") {
  const RingPtr r1 = Ring::polynomial("x", 2);
  const RingPtr r2 = Ring::polynomial("y", 2);
  const Polynomial f = Polynomial::variable(r1, 0);
  const Polynomial g = Polynomial::variable(r2, 0);
  CHECK_THROWS_AS((void)(f + g), const Error&);
  CHECK_THROWS_AS((void)(f * g), const Error&);
}
