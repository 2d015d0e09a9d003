#include "hpoly/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace hpoly {

long total_degree(const Exponents& e) {
  long d = 0;
  for (int x : e) d += x;
  return d;
}

bool MonomialLess::operator()(const Exponents& a, const Exponents& b) const {
  const long da = total_degree(a);
  const long db = total_degree(b);
  if (da != db) return da < db;
  // Same total degree: the monomial with the larger exponent at the first
  // differing variable is the smaller one (x1^2 < x1*x2).
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() < b.size();
}

std::shared_ptr<Ring> Ring::make(std::vector<Variable> vars) {
  auto r = std::make_shared<Ring>();
  for (size_t i = 0; i < vars.size(); ++i) {
    for (size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i].name == vars[j].name)
        throw InputError("duplicate ring variable name '" + vars[i].name + "'");
    }
  }
  r->vars_ = std::move(vars);
  return r;
}

std::shared_ptr<Ring> Ring::polynomial(const std::string& prefix, int n) {
  std::vector<Variable> vars;
  vars.reserve(n);
  for (int i = 1; i <= n; ++i) vars.push_back({prefix + std::to_string(i), false, false});
  return make(std::move(vars));
}

int Ring::index_of(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i].name == name) return i;
  return -1;
}

void Ring::declare_derivative(int gen, int base, TermMap value) {
  if (gen < 0 || gen >= nvars() || base < 0 || base >= nvars())
    throw InputError("derivative declaration out of range");
  if (!vars_[gen].transcendental)
    throw InputError("variable '" + vars_[gen].name + "' is not a transcendental generator");
  deriv_table_[{gen, base}] = std::move(value);
}

bool Ring::has_derivative(int gen, int base) const {
  return deriv_table_.count({gen, base}) > 0;
}

const TermMap& Ring::derivative(int gen, int base) const {
  auto it = deriv_table_.find({gen, base});
  if (it == deriv_table_.end())
    throw InputError("no declared derivative d(" + name(gen) + ")/d(" + name(base) + ")");
  return it->second;
}

bool Ring::same_structure(const Ring& other) const {
  if (vars_.size() != other.vars_.size()) return false;
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name != other.vars_[i].name || vars_[i].laurent != other.vars_[i].laurent ||
        vars_[i].transcendental != other.vars_[i].transcendental)
      return false;
  }
  return true;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
  if (!same_ring(a, b)) throw InputError(std::string(where) + ": operands live in different rings");
}

Polynomial::Polynomial(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
  if (!constant.is_zero()) terms_.emplace(Exponents(ring_->nvars(), 0), constant);
}

Polynomial Polynomial::variable(const RingPtr& ring, int i) {
  if (i < 0 || i >= ring->nvars()) throw InputError("variable index out of range");
  Exponents e(ring->nvars(), 0);
  e[i] = 1;
  return monomial(ring, std::move(e), 1);
}

Polynomial Polynomial::monomial(const RingPtr& ring, Exponents e, const Rational& coeff) {
  Polynomial p(ring);
  if (static_cast<int>(e.size()) != ring->nvars())
    throw InputError("monomial exponent vector has wrong length");
  p.check_exponents(e);
  if (!coeff.is_zero()) p.terms_.emplace(std::move(e), coeff);
  return p;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, TermMap terms) {
  Polynomial p(ring);
  for (auto it = terms.begin(); it != terms.end();) {
    p.check_exponents(it->first);
    if (it->second.is_zero())
      it = terms.erase(it);
    else
      ++it;
  }
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
                            terms_.begin()->first == Exponents(ring_->nvars(), 0));
}

long Polynomial::degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

Rational Polynomial::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const {
  if (!ring_) return 0;
  return coeff(Exponents(ring_->nvars(), 0));
}

void Polynomial::check_exponents(const Exponents& e) const {
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 && !ring_->laurent(static_cast<int>(i)))
      throw InputError("negative exponent on non-Laurent variable '" +
                       ring_->name(static_cast<int>(i)) + "'");
  }
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_ring(ring_, o.ring_, "polynomial +");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_ring(ring_, o.ring_, "polynomial -");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_, "polynomial *");
  Polynomial r(a.ring_);
  Exponents e(a.ring_ ? a.ring_->nvars() : 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(ring_, Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  return a.terms_ == b.terms_;
}

Polynomial Polynomial::partial(int i) const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    d[i] -= 1;
    r.add_term(d, c * Rational(e[i]));
  }
  return r;
}

Polynomial Polynomial::compose(const RingPtr& target, const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) != ring_->nvars())
    throw InputError("compose: one image per variable required");
  for (const auto& im : images) require_same_ring(im.ring(), target, "compose");

  // Powers of each image are cached; negative powers need monomial images.
  std::vector<std::vector<Polynomial>> pows(images.size());
  std::vector<Polynomial> inv_pows_base(images.size());
  auto power = [&](int var, int k) -> Polynomial {
    if (k >= 0) {
      auto& cache = pows[var];
      if (cache.empty()) cache.push_back(Polynomial(target, Rational(1)));
      while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[var]);
      return cache[k];
    }
    Polynomial& inv = inv_pows_base[var];
    if (!inv.ring()) {
      const Polynomial& im = images[var];
      if (im.nterms() != 1)
        throw InputError("compose: negative exponent needs an invertible monomial image for '" +
                         ring_->name(var) + "'");
      const auto& [e, c] = *im.terms().begin();
      Exponents ne(e.size());
      for (size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
      inv = Polynomial::monomial(target, std::move(ne), c.inverse());
    }
    return inv.pow(static_cast<unsigned>(-k));
  };

  Polynomial result(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term(target, c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = term * power(static_cast<int>(i), e[i]);
    }
    result += term;
  }
  return result;
}

Polynomial Polynomial::remap(const RingPtr& target, const std::vector<int>& where) const {
  if (static_cast<int>(where.size()) != ring_->nvars())
    throw InputError("remap: one target index per variable required");
  Polynomial r(target);
  for (const auto& [e, c] : terms_) {
    Exponents ne(target->nvars(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const int t = where[i];
      if (t < 0 || t >= target->nvars()) throw InputError("remap: target index out of range");
      ne[t] += e[i];
    }
    r.check_exponents(ne);
    r.add_term(ne, c);
  }
  return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != ring_->nvars())
    throw InputError("eval: one value per variable required");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (point[i].is_zero() && e[i] < 0) throw MathError("eval: zero value for Laurent variable");
      Rational p(1);
      const Rational base = e[i] > 0 ? point[i] : point[i].inverse();
      for (int k = 0; k < std::abs(e[i]); ++k) p *= base;
      t *= p;
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::eval_partial(const std::vector<std::pair<int, Rational>>& values) const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    Rational factor = c;
    Exponents ne = e;
    for (const auto& [var, val] : values) {
      if (ne[var] == 0) continue;
      if (val.is_zero() && ne[var] < 0)
        throw MathError("eval_partial: zero value for Laurent variable");
      const Rational base = ne[var] > 0 ? val : val.inverse();
      for (int k = 0; k < std::abs(ne[var]); ++k) factor *= base;
      ne[var] = 0;
      if (factor.is_zero()) break;
    }
    r.add_term(ne, factor);
  }
  return r;
}

Polynomial Polynomial::coeff_of(int var, int exponent) const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != exponent) continue;
    Exponents ne = e;
    ne[var] = 0;
    r.add_term(ne, c);
  }
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    if (first) {
      if (coeff.sign() < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff.sign() < 0 ? " - " : " + ");
      if (coeff.sign() < 0) coeff = -coeff;
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(static_cast<int>(i));
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << coeff.str();
    } else if (coeff.is_one()) {
      os << mono;
    } else {
      os << coeff.str() << "*" << mono;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace hpoly
