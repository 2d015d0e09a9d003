#include "hpoly/derivation.hpp"

#include <sstream>

namespace hpoly {

Derivation::Derivation(RingPtr ring, std::vector<Polynomial> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != ring_->nvars())
    throw InputError("derivation needs one coefficient per ring variable");
  for (const auto& c : coeffs_) require_same_ring(c.ring(), ring_, "derivation coefficient");
}

Derivation Derivation::zero(const RingPtr& ring) {
  return Derivation(ring, std::vector<Polynomial>(ring->nvars(), Polynomial(ring)));
}

Derivation Derivation::along(const RingPtr& ring, int i, const Polynomial& c) {
  auto d = zero(ring);
  d.coeffs_.at(i) = c;
  return d;
}

bool Derivation::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

Derivation Derivation::operator+(const Derivation& o) const {
  require_same_ring(ring_, o.ring_, "derivation +");
  Derivation r = *this;
  for (int i = 0; i < ring_->nvars(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

Derivation Derivation::operator-(const Derivation& o) const {
  require_same_ring(ring_, o.ring_, "derivation -");
  Derivation r = *this;
  for (int i = 0; i < ring_->nvars(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

Derivation Derivation::scaled(const Rational& c) const {
  Derivation r = *this;
  for (auto& p : r.coeffs_) p = p.scaled(c);
  return r;
}

Derivation Derivation::scaled(const Polynomial& c) const {
  Derivation r = *this;
  for (auto& p : r.coeffs_) p = p * c;
  return r;
}

Derivation Derivation::remap(const RingPtr& target, const std::vector<int>& where) const {
  std::vector<Polynomial> coeffs(target->nvars(), Polynomial(target));
  for (int i = 0; i < ring_->nvars(); ++i) coeffs.at(where.at(i)) = coeffs_[i].remap(target, where);
  return Derivation(target, std::move(coeffs));
}

Polynomial Derivation::operator()(const Polynomial& f) const {
  require_same_ring(ring_, f.ring(), "derivation application");
  Polynomial result(ring_);
  const int n = ring_->nvars();
  for (int v = 0; v < n; ++v) {
    const Polynomial fv = f.partial(v);
    if (fv.is_zero()) continue;
    // D(x_v) = c_v for ordinary variables; transcendental generators pick up
    // the declared chain rule d(x_v)/d(x_i) for every direction D touches.
    Polynomial dv = coeffs_[v];
    if (ring_->transcendental(v)) {
      for (int i = 0; i < n; ++i) {
        if (i == v || coeffs_[i].is_zero()) continue;
        if (!ring_->has_derivative(v, i))
          throw InputError("derivation touches d/d" + ring_->name(i) +
                           " but generator '" + ring_->name(v) +
                           "' has no declared derivative with respect to it");
        dv += coeffs_[i] * Polynomial::from_terms(ring_, ring_->derivative(v, i));
      }
    }
    if (!dv.is_zero()) result += fv * dv;
  }
  return result;
}

Derivation commutator(const Derivation& a, const Derivation& b) {
  require_same_ring(a.ring(), b.ring(), "derivation commutator");
  const auto& ring = a.ring();
  std::vector<Polynomial> coeffs;
  coeffs.reserve(ring->nvars());
  for (int i = 0; i < ring->nvars(); ++i) coeffs.push_back(a(b.coeff(i)) - b(a.coeff(i)));
  return Derivation(ring, std::move(coeffs));
}

Polynomial apply_word(const OperatorWord& word, const Polynomial& f) {
  Polynomial g = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) g = (*it)(g);
  return g;
}

std::string Derivation::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < ring_->nvars(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string c = coeffs_[i].str();
    if (c == "1")
      os << "d/d" << ring_->name(i);
    else
      os << "(" << c << ")*d/d" << ring_->name(i);
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace hpoly
