#include "hpoly/counterexamples.hpp"

#include <memory>

namespace hpoly {

namespace {

Polynomial apply_times(const Derivation& d, Polynomial f, int times) {
  for (int i = 0; i < times; ++i) f = d(f);
  return f;
}

}  // namespace

AffPlusModel aff_plus_model() {
  auto ring = Ring::make({{"x", false, false}, {"y", true, false}, {"L", false, true}});
  const int x = 0, y = 1, L = 2;
  ring->declare_derivative(L, y, {{Exponents{0, -1, 0}, Rational(1)}});
  ring->declare_derivative(L, x, {});
  RingPtr r = ring;
  AffPlusModel m;
  m.ring = r;
  const Polynomial vy = Polynomial::variable(r, y);
  m.X = Derivation(r, {vy, Polynomial(r), Polynomial(r)});
  m.Y = Derivation(r, {Polynomial(r), vy, Polynomial(r)});
  m.f = (Polynomial::variable(r, x) + Polynomial(r, Rational(1))) * Polynomial::variable(r, L);
  return m;
}

Sl2Model sl2_model() {
  auto ring = Ring::make({{"x1", true, false}, {"x2", false, false}, {"x3", false, false}});
  RingPtr r = ring;
  const Polynomial v1 = Polynomial::variable(r, 0);
  const Polynomial v2 = Polynomial::variable(r, 1);
  const Polynomial v3 = Polynomial::variable(r, 2);
  const Polynomial inv1 = Polynomial::monomial(r, Exponents{-1, 0, 0}, Rational(1));
  Sl2Model m;
  m.ring = r;
  m.X1 = Derivation(r, {v1, -v2, v3});
  m.X2 = Derivation(r, {Polynomial(r), v1, Polynomial(r)});
  m.X3 = Derivation(r, {v2, Polynomial(r), (Polynomial(r, Rational(1)) + v2 * v3) * inv1});
  return m;
}

const std::vector<std::string>& counterexample_names() {
  static const std::vector<std::string> names = {"aff_plus", "sl2r"};
  return names;
}

namespace {

CounterexampleReport verify_aff_plus() {
  const AffPlusModel m = aff_plus_model();
  const RingPtr& r = m.ring;
  const Polynomial vx = Polynomial::variable(r, 0);
  const Polynomial vy = Polynomial::variable(r, 1);
  const Polynomial vL = Polynomial::variable(r, 2);
  const Polynomial yL = vy * vL;
  const Polynomial one(r, Rational(1));

  CounterexampleReport rep;
  rep.name = "aff_plus";
  rep.note = "f = (x+1) log y is S-polynomial but not g-polynomial";

  rep.checks.push_back({"X^2 f = 0", apply_times(m.X, m.f, 2).is_zero()});
  rep.checks.push_back({"Y^2 f = 0", apply_times(m.Y, m.f, 2).is_zero()});
  for (int alpha = 0; alpha <= 5; ++alpha) {
    const Polynomial lhs = apply_times(m.Y, m.X(m.f), alpha);
    const Polynomial rhs = yL + vy.scaled(Rational(alpha));
    rep.checks.push_back({"Y^" + std::to_string(alpha) + " X f = y log y + " +
                              std::to_string(alpha) + " y",
                          lhs == rhs});
  }
  const Derivation XY = m.X + m.Y;
  rep.checks.push_back({"(X+Y) f = y log y + x + 1", XY(m.f) == yL + vx + one});
  for (int n = 2; n <= 5; ++n) {
    const Polynomial lhs = apply_times(XY, m.f, n);
    const Polynomial rhs = yL + vy.scaled(Rational(n));
    rep.checks.push_back(
        {"(X+Y)^" + std::to_string(n) + " f = y log y + " + std::to_string(n) + " y",
         lhs == rhs});
  }
  return rep;
}

CounterexampleReport verify_sl2r() {
  const Sl2Model m = sl2_model();
  const Polynomial v3 = Polynomial::variable(m.ring, 2);

  CounterexampleReport rep;
  rep.name = "sl2r";
  rep.note = "x3 is S-polynomial for S = {X2, X3} but not polynomial in the Leibman sense";

  rep.checks.push_back({"X2 x3 = 0", m.X2(v3).is_zero()});
  rep.checks.push_back({"X3^2 x3 = 0", apply_times(m.X3, v3, 2).is_zero()});
  for (int k = 1; k <= 4; ++k) {
    rep.checks.push_back(
        {"X1^" + std::to_string(k) + " x3 = x3", apply_times(m.X1, v3, k) == v3});
  }
  return rep;
}

}  // namespace

CounterexampleReport verify_builtin_counterexample(const std::string& name) {
  if (name == "aff_plus") return verify_aff_plus();
  if (name == "sl2r") return verify_sl2r();
  throw InputError("unknown counterexample '" + name + "'; available: aff_plus, sl2r");
}

}  // namespace hpoly
