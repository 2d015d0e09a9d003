#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hpoly/algebra_io.hpp"
#include "hpoly/builtins.hpp"
#include "hpoly/chart.hpp"
#include "hpoly/counterexamples.hpp"
#include "hpoly/errors.hpp"
#include "hpoly/hall.hpp"
#include "hpoly/lie_algebra.hpp"
#include "hpoly/spoly.hpp"

namespace {

using hpoly::AlgebraDocument;
using hpoly::Chart;
using hpoly::ChartKind;
using hpoly::Derivation;
using hpoly::InputError;
using hpoly::LieAlgebra;
using hpoly::MathError;
using hpoly::Polynomial;
using hpoly::PolyVec;
using hpoly::Rational;
using hpoly::RatVec;
using hpoly::RingPtr;
using nlohmann::ordered_json;

struct Check {
  std::string name;
  bool passed;
};

// Deterministic xorshift generator so verification runs are reproducible.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed * 2654435761u + 0x9E3779B97F4A7C15ull) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  long uniform(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

AlgebraDocument get_algebra(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) {
    const std::string name = arg.substr(prefix.size());
    return AlgebraDocument{name, hpoly::builtin(name), ChartKind::SecondKind};
  }
  return hpoly::load_algebra(arg);
}

ChartKind chart_kind_of(const std::string& flag, const AlgebraDocument& doc) {
  if (flag == "first") return ChartKind::FirstKind;
  if (flag == "second") return ChartKind::SecondKind;
  if (!flag.empty())
    throw InputError("--chart must be 'first' or 'second', got '" + flag + "'");
  if (doc.default_chart) return *doc.default_chart;
  return ChartKind::FirstKind;
}

Chart make_chart(const LieAlgebra& A, ChartKind kind) {
  return kind == ChartKind::FirstKind ? Chart::first_kind(A) : Chart::second_kind(A);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

RatVec unit_direction(const LieAlgebra& A, const std::string& name) {
  const int i = A.index_of(name);
  if (i < 0)
    throw InputError("'" + name + "' is not a basis element of the algebra");
  RatVec v(static_cast<size_t>(A.dim()), Rational(0));
  v[static_cast<size_t>(i)] = Rational(1);
  return v;
}

// "X1:2,X2:2" -> directions with orders.
void parse_S(const LieAlgebra& A, const std::string& spec, std::vector<RatVec>* S,
             std::vector<int>* orders) {
  for (const std::string& item : split(spec, ',')) {
    if (item.empty()) throw InputError("--S: empty entry in '" + spec + "'");
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw InputError("--S entries take the form name:order, got '" + item + "'");
    const std::string name = item.substr(0, colon);
    int order = 0;
    try {
      order = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("--S: order in '" + item + "' is not an integer");
    }
    S->push_back(unit_direction(A, name));
    orders->push_back(order);
  }
}

// "V1" (first layer) or a comma-separated list of basis names.
std::vector<RatVec> parse_subspace(const LieAlgebra& A, const std::string& spec) {
  std::vector<RatVec> out;
  if (spec == "V1") {
    if (!A.graded())
      throw InputError("--subspace V1 needs declared weights (the first layer)");
    for (int i : A.layer(1)) {
      RatVec v(static_cast<size_t>(A.dim()), Rational(0));
      v[static_cast<size_t>(i)] = Rational(1);
      out.push_back(std::move(v));
    }
    if (out.empty()) throw InputError("--subspace V1: the first layer is empty");
    return out;
  }
  for (const std::string& name : split(spec, ',')) {
    if (!name.empty()) out.push_back(unit_direction(A, name));
  }
  if (out.empty()) throw InputError("--subspace: no directions in '" + spec + "'");
  return out;
}

std::string field_str(const Derivation& D) {
  const RingPtr r = D.ring();
  std::string out;
  for (int i = 0; i < r->nvars(); ++i) {
    const Polynomial& c = D.coeff(i);
    if (c.is_zero()) continue;
    std::string term = "d/d" + r->name(i);
    if (!(c.is_constant() && c.constant_term().is_one()))
      term = "(" + c.str() + ")*" + term;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

std::string mpz_str(const mpz_class& z) { return z.get_str(); }

ordered_json witness_json(const hpoly::DegreeBoundWitness& w) {
  ordered_json j;
  j["k"] = w.k;
  j["s"] = w.s;
  j["ell"] = w.ell;
  ordered_json a = ordered_json::array();
  for (const auto& ai : w.a) a.push_back(mpz_str(ai));
  j["a"] = std::move(a);
  ordered_json ns = ordered_json::array();
  for (const auto& ni : w.nu_seq) ns.push_back(mpz_str(ni));
  j["nu_seq"] = std::move(ns);
  j["nu"] = mpz_str(w.nu);
  j["D"] = mpz_str(w.D);
  return j;
}

void print_report(const ordered_json& j, bool json_mode) {
  if (json_mode) std::cout << j.dump(2) << "\n";
}

int finish_checks(const std::string& suite, const std::vector<Check>& checks, bool json_mode,
                  uint64_t seed) {
  bool all = true;
  ordered_json j;
  j["command"] = "verify";
  j["suite"] = suite;
  j["seed"] = seed;
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    arr.push_back(std::move(e));
    if (!json_mode) std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "\n";
  }
  j["checks"] = std::move(arr);
  j["passed"] = all;
  print_report(j, json_mode);
  if (!json_mode)
    std::cout << (all ? "all checks passed" : "CHECKS FAILED") << " (" << checks.size()
              << " in suite " << suite << ")\n";
  return all ? 0 : 1;
}

Polynomial mono(const RingPtr& r, const std::vector<std::pair<std::string, int>>& vars,
                const Rational& c) {
  hpoly::Exponents e(static_cast<size_t>(r->nvars()), 0);
  for (const auto& [name, k] : vars) {
    const int i = r->index_of(name);
    if (i < 0) throw InputError("mono: unknown variable " + name);
    e[static_cast<size_t>(i)] = k;
  }
  return Polynomial::monomial(r, std::move(e), c);
}

// The five solved spaces from the worked examples, with their expected spans.
struct AppendixCase {
  std::string name;
  hpoly::SPolyBasis result;
  std::vector<Polynomial> expected;       // in the solve chart
  std::vector<Polynomial> expected_first; // optional: same space in the first kind
};

std::vector<AppendixCase> appendix_cases() {
  std::vector<AppendixCase> cases;
  const Rational one(1), half(1, 2);

  {
    const LieAlgebra A = hpoly::builtin("heisenberg");
    const Chart ch = Chart::second_kind(A);
    const RingPtr r = ch.ring();
    auto prob = hpoly::SPolyProblem::directions(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, {2, 2});
    std::vector<Polynomial> expected = {
        Polynomial(r, one),
        mono(r, {{"x1", 1}}, one),
        mono(r, {{"x2", 1}}, one),
        mono(r, {{"x3", 1}}, one),
        mono(r, {{"x1", 1}, {"x2", 1}}, one),
        mono(r, {{"x1", 1}, {"x3", 1}}, one),
        mono(r, {{"x2", 1}, {"x3", 1}}, one) - mono(r, {{"x1", 1}, {"x2", 2}}, one),
        mono(r, {{"x3", 2}}, one) - mono(r, {{"x1", 1}, {"x2", 1}, {"x3", 1}}, one)};
    cases.push_back(AppendixCase{"heisenberg directions X1:2 X2:2 (second kind)",
                                 hpoly::spoly_basis(prob), std::move(expected), {}});
  }
  {
    const LieAlgebra A = hpoly::builtin("heisenberg");
    const Chart ch = Chart::second_kind(A);
    const RingPtr r = ch.ring();
    auto prob = hpoly::SPolyProblem::subspace(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, 2);
    std::vector<Polynomial> expected = {
        Polynomial(r, one), mono(r, {{"x1", 1}}, one), mono(r, {{"x2", 1}}, one),
        mono(r, {{"x3", 1}}, one) - mono(r, {{"x1", 1}, {"x2", 1}}, half)};
    const RingPtr rf = Chart::first_kind(A).ring();
    std::vector<Polynomial> expected_first = {Polynomial(rf, one), mono(rf, {{"a1", 1}}, one),
                                              mono(rf, {{"a2", 1}}, one),
                                              mono(rf, {{"a3", 1}}, one)};
    cases.push_back(AppendixCase{"heisenberg subspace V1 k=2 (second kind)",
                                 hpoly::spoly_basis(prob), std::move(expected),
                                 std::move(expected_first)});
  }
  {
    const LieAlgebra A = hpoly::builtin("engel");
    const Chart ch = Chart::second_kind(A);
    const RingPtr r = ch.ring();
    auto prob = hpoly::SPolyProblem::subspace(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, 2);
    hpoly::SolveOptions opt;
    opt.degree = 6;
    std::vector<Polynomial> expected = {
        Polynomial(r, one), mono(r, {{"x1", 1}}, one), mono(r, {{"x2", 1}}, one),
        mono(r, {{"x3", 1}}, Rational(2)) - mono(r, {{"x1", 1}, {"x2", 1}}, one),
        mono(r, {{"x4", 1}}, Rational(3)) - mono(r, {{"x1", 1}, {"x3", 1}}, one)};
    const RingPtr rf = Chart::first_kind(A).ring();
    std::vector<Polynomial> expected_first = {
        Polynomial(rf, one), mono(rf, {{"a1", 1}}, one), mono(rf, {{"a2", 1}}, one),
        mono(rf, {{"a3", 1}}, one),
        mono(rf, {{"a4", 1}}, Rational(6)) + mono(rf, {{"a1", 1}, {"a3", 1}}, one)};
    cases.push_back(AppendixCase{"engel subspace V1 k=2 (second kind)",
                                 hpoly::spoly_basis(prob, opt), std::move(expected),
                                 std::move(expected_first)});
  }
  {
    const LieAlgebra A = hpoly::builtin("engel");
    const Chart ch = Chart::second_kind(A);
    const RingPtr r = ch.ring();
    auto prob = hpoly::SPolyProblem::directions(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, {1, 2});
    hpoly::SolveOptions opt;
    opt.degree = 6;
    std::vector<Polynomial> expected = {
        Polynomial(r, one), mono(r, {{"x2", 1}}, one), mono(r, {{"x3", 1}}, one),
        mono(r, {{"x4", 1}}, one),
        mono(r, {{"x2", 1}, {"x4", 1}}, one) - mono(r, {{"x3", 2}}, half)};
    cases.push_back(AppendixCase{"engel directions X1:1 X2:2 (second kind)",
                                 hpoly::spoly_basis(prob, opt), std::move(expected), {}});
  }
  {
    const LieAlgebra A = hpoly::builtin("f23");
    const Chart ch = Chart::second_kind(A);
    const RingPtr r = ch.ring();
    auto prob = hpoly::SPolyProblem::directions(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, {1, 2});
    hpoly::SolveOptions opt;
    opt.degree = 6;
    std::vector<Polynomial> expected = {
        Polynomial(r, one), mono(r, {{"x2", 1}}, one), mono(r, {{"x3", 1}}, one),
        mono(r, {{"x4", 1}}, one),
        mono(r, {{"x2", 1}, {"x4", 1}}, one) - mono(r, {{"x3", 2}}, half),
        mono(r, {{"x5", 1}}, one) + mono(r, {{"x2", 1}, {"x3", 1}}, half)};
    cases.push_back(AppendixCase{"f23 directions X1:1 X2:2 (second kind)",
                                 hpoly::spoly_basis(prob, opt), std::move(expected), {}});
  }
  return cases;
}

void run_counterexample_suite(std::vector<Check>* checks) {
  for (const std::string& name : hpoly::counterexample_names()) {
    const auto report = hpoly::verify_builtin_counterexample(name);
    for (const auto& c : report.checks)
      checks->push_back({name + ": " + c.identity, c.passed});
  }
}

void run_appendix_suite(std::vector<Check>* checks) {
  for (const auto& c : appendix_cases()) {
    checks->push_back({c.name + ": dimension " + std::to_string(c.expected.size()),
                       c.result.basis.size() == c.expected.size()});
    checks->push_back({c.name + ": span matches", hpoly::same_span(c.result.basis, c.expected)});
    if (!c.expected_first.empty()) {
      const Chart src = c.result.problem.chart;
      const Chart dst = Chart::first_kind(c.result.problem.algebra);
      std::vector<Polynomial> converted;
      for (const auto& f : c.result.basis) converted.push_back(hpoly::change_chart(f, src, dst));
      checks->push_back({c.name + ": first-kind span matches",
                         hpoly::same_span(converted, c.expected_first)});
    }
  }
}

void run_leibman_suite(std::vector<Check>* checks) {
  const AppendixCase c = std::move(appendix_cases().front());
  const Chart& ch = c.result.problem.chart;
  for (const auto& f : c.result.basis) {
    const Polynomial g = hpoly::integer_scaled(f);
    const int dd = hpoly::differential_degree(ch, g);
    bool ok = hpoly::leibman_check(ch, g, dd);
    if (dd >= 1) ok = ok && !hpoly::leibman_check(ch, g, dd - 1);
    ok = ok && hpoly::lcs_invariance(ch, g, dd);
    checks->push_back({"heisenberg basis element " + g.str() + ": Leibman degree = " +
                           std::to_string(dd) + " = differential degree",
                       ok});
  }
}

struct RepProblem {
  std::string name;
  hpoly::SPolyBasis solved;
  std::vector<std::pair<RatVec, int>> directions;  // (X, order k) usable as the flow direction
};

std::vector<RepProblem> representation_problems() {
  std::vector<RepProblem> out;
  {
    const LieAlgebra A = hpoly::builtin("heisenberg");
    const Chart ch = Chart::second_kind(A);
    auto prob = hpoly::SPolyProblem::directions(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, {2, 2});
    RepProblem r{"heisenberg", hpoly::spoly_basis(prob), {}};
    r.directions = {{unit_direction(A, "X1"), 2}, {unit_direction(A, "X2"), 2}};
    out.push_back(std::move(r));
  }
  {
    const LieAlgebra A = hpoly::builtin("engel");
    const Chart ch = Chart::second_kind(A);
    auto prob = hpoly::SPolyProblem::subspace(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, 2);
    hpoly::SolveOptions opt;
    opt.degree = 6;
    RepProblem r{"engel", hpoly::spoly_basis(prob, opt), {}};
    r.directions = {{unit_direction(A, "X1"), 2}, {unit_direction(A, "X2"), 2}};
    out.push_back(std::move(r));
  }
  {
    const LieAlgebra A = hpoly::builtin("f23");
    const Chart ch = Chart::second_kind(A);
    auto prob = hpoly::SPolyProblem::directions(
        A, ch, {unit_direction(A, "X1"), unit_direction(A, "X2")}, {1, 2});
    hpoly::SolveOptions opt;
    opt.degree = 6;
    RepProblem r{"f23", hpoly::spoly_basis(prob, opt), {}};
    r.directions = {{unit_direction(A, "X1"), 1}, {unit_direction(A, "X2"), 2}};
    out.push_back(std::move(r));
  }
  return out;
}

void run_representation_suite(std::vector<Check>* checks, uint64_t seed, int per_builtin) {
  for (const auto& rp : representation_problems()) {
    Rng rng(seed ^ std::hash<std::string>{}(rp.name));
    const LieAlgebra& A = rp.solved.problem.algebra;
    const Chart& ch = rp.solved.problem.chart;
    bool all = true;
    for (int t = 0; t < per_builtin; ++t) {
      Polynomial f(ch.ring());
      for (const auto& b : rp.solved.basis)
        f += b.scaled(Rational(rng.uniform(-2, 2)));
      const auto& [X, k] = rp.directions[static_cast<size_t>(
          rng.uniform(0, static_cast<long>(rp.directions.size()) - 1))];
      const long r = rng.uniform(0, 3);
      std::vector<RatVec> word;
      for (long q = 0; q < r; ++q) {
        RatVec v(static_cast<size_t>(A.dim()), Rational(0));
        v[static_cast<size_t>(rng.uniform(0, A.dim() - 1))] = Rational(1);
        word.push_back(std::move(v));
      }
      all = all && hpoly::verify_representation(ch, f, X, word, k);
    }
    checks->push_back({rp.name + ": representation formula on " + std::to_string(per_builtin) +
                           " seeded random instances",
                       all});
  }
}

void run_structural_suite(std::vector<Check>* checks) {
  for (const std::string& name : hpoly::builtin_names()) {
    const LieAlgebra A = hpoly::builtin(name);
    const int n = A.dim();

    {
      const RingPtr r = hpoly::Ring::polynomial("z", 3 * n);
      PolyVec u, v, w;
      for (int i = 0; i < n; ++i) u.push_back(Polynomial::variable(r, i));
      for (int i = 0; i < n; ++i) v.push_back(Polynomial::variable(r, n + i));
      for (int i = 0; i < n; ++i) w.push_back(Polynomial::variable(r, 2 * n + i));
      const PolyVec lhs = hpoly::bch(A, hpoly::bch(A, u, v), w);
      const PolyVec rhs = hpoly::bch(A, u, hpoly::bch(A, v, w));
      bool ok = true;
      for (int i = 0; i < n; ++i) ok = ok && lhs[static_cast<size_t>(i)] == rhs[static_cast<size_t>(i)];
      checks->push_back({name + ": BCH product is associative (symbolic)", ok});
    }

    for (const ChartKind kind : {ChartKind::FirstKind, ChartKind::SecondKind}) {
      const Chart ch = make_chart(A, kind);
      const auto fields = hpoly::left_invariant_fields(ch);
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Derivation expect = Derivation::zero(ch.ring());
          for (int k = 0; k < n; ++k) {
            if (!A.c(i, j, k).is_zero())
              expect = expect + fields[static_cast<size_t>(k)].scaled(A.c(i, j, k));
          }
          const Derivation got =
              hpoly::commutator(fields[static_cast<size_t>(i)], fields[static_cast<size_t>(j)]);
          for (int q = 0; q < n; ++q) ok = ok && got.coeff(q) == expect.coeff(q);
        }
      }
      checks->push_back({name + ": left-invariant fields realize the structure constants (" +
                             std::string(kind == ChartKind::FirstKind ? "first" : "second") +
                             " kind)",
                         ok});
    }

    {
      const RingPtr r = hpoly::Ring::polynomial("s", n);
      PolyVec a;
      for (int i = 0; i < n; ++i) a.push_back(Polynomial::variable(r, i));
      const hpoly::PolyMatrix M = hpoly::ad_exp(A, a);
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          RatVec ei(static_cast<size_t>(n), Rational(0)), ej(static_cast<size_t>(n), Rational(0));
          ei[static_cast<size_t>(i)] = Rational(1);
          ej[static_cast<size_t>(j)] = Rational(1);
          const PolyVec lhs = hpoly::apply_poly_matrix(M, A.bracket(ei, ej), r);
          const PolyVec rhs = A.bracket(hpoly::apply_poly_matrix(M, ei, r),
                                        hpoly::apply_poly_matrix(M, ej, r));
          for (int q = 0; q < n; ++q) ok = ok && lhs[static_cast<size_t>(q)] == rhs[static_cast<size_t>(q)];
        }
      }
      checks->push_back({name + ": Ad of a symbolic exponential is a bracket automorphism", ok});
    }
  }
}

int cmd_validate(const std::string& algebra_arg, bool json_mode) {
  const AlgebraDocument doc = get_algebra(algebra_arg);
  const auto rep = doc.algebra.validate();
  ordered_json j;
  j["command"] = "validate";
  j["algebra"] = doc.name;
  j["dimension"] = doc.algebra.dim();
  j["antisymmetric"] = rep.antisymmetric;
  j["jacobi"] = rep.jacobi;
  j["grading_consistent"] = rep.grading_consistent;
  j["nilpotent"] = rep.nilpotent;
  if (rep.nilpotent) j["step"] = rep.step;
  j["lcs_dims"] = rep.lcs_dims;
  j["violations"] = rep.violations;
  if (json_mode) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "algebra: " << doc.name << " (dim " << doc.algebra.dim() << ")\n";
    std::cout << "antisymmetric: " << (rep.antisymmetric ? "yes" : "no") << "\n";
    std::cout << "jacobi: " << (rep.jacobi ? "yes" : "no") << "\n";
    if (doc.algebra.graded())
      std::cout << "grading consistent: " << (rep.grading_consistent ? "yes" : "no") << "\n";
    std::cout << "nilpotent: " << (rep.nilpotent ? "yes" : "no") << "\n";
    if (rep.nilpotent) std::cout << "step: " << rep.step << "\n";
    std::cout << "lower central series dims:";
    for (int d : rep.lcs_dims) std::cout << " " << d;
    std::cout << "\n";
    for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  }
  return rep.axioms_ok() ? 0 : 1;
}

int cmd_solve(const std::string& algebra_arg, const std::string& s_spec,
              const std::string& subspace_spec, int k, const std::string& chart_flag,
              std::optional<long> degree, bool json_mode, bool timings) {
  const AlgebraDocument doc = get_algebra(algebra_arg);
  const LieAlgebra& A = doc.algebra;
  const ChartKind kind = chart_kind_of(chart_flag, doc);
  const Chart chart = make_chart(A, kind);

  if (s_spec.empty() == subspace_spec.empty())
    throw InputError("exactly one of --S and --subspace must be given");

  std::optional<hpoly::SPolyProblem> prob;
  ordered_json problem_echo;
  if (!s_spec.empty()) {
    std::vector<RatVec> S;
    std::vector<int> orders;
    parse_S(A, s_spec, &S, &orders);
    prob = hpoly::SPolyProblem::directions(A, chart, std::move(S), std::move(orders));
    problem_echo["mode"] = "directions";
    problem_echo["S"] = s_spec;
  } else {
    if (k < 1) throw InputError("--subspace needs --k >= 1");
    prob = hpoly::SPolyProblem::subspace(A, chart, parse_subspace(A, subspace_spec), k);
    problem_echo["mode"] = "subspace";
    problem_echo["span"] = subspace_spec;
    problem_echo["k"] = k;
  }

  hpoly::SolveOptions opt;
  opt.degree = degree;
  const auto t0 = std::chrono::steady_clock::now();
  const hpoly::SPolyBasis result = hpoly::spoly_basis(*prob, opt);
  const auto t1 = std::chrono::steady_clock::now();

  ordered_json j;
  j["command"] = "solve";
  j["algebra"] = doc.name;
  j["chart"] = kind == ChartKind::FirstKind ? "first" : "second";
  j["problem"] = std::move(problem_echo);
  j["route"] = result.route;
  j["route_detail"] = result.route_detail;
  j["witness"] = witness_json(result.witness);
  j["solve_degree"] = result.solve_degree;
  j["certificate"] = result.certificate == hpoly::Certificate::CertifiedBound
                         ? "certified-bound"
                         : "stabilization-checked";
  j["dimension"] = result.basis.size();
  ordered_json jb = ordered_json::array(), js = ordered_json::array();
  for (const auto& f : result.basis) {
    jb.push_back(f.str());
    js.push_back(hpoly::integer_scaled(f).str());
  }
  j["basis"] = std::move(jb);
  j["basis_scaled"] = std::move(js);
  if (timings)
    j["timings"] = {{"solve_seconds",
                     std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0}};

  if (json_mode) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "algebra: " << doc.name << " (dim " << A.dim() << ", step " << A.step() << ")\n";
    std::cout << "chart: " << (kind == ChartKind::FirstKind ? "first" : "second") << " kind\n";
    if (!s_spec.empty())
      std::cout << "S: " << s_spec << "\n";
    else
      std::cout << "subspace: " << subspace_spec << ", uniform order " << k << "\n";
    std::cout << "route: " << result.route << " (" << result.route_detail << ")\n";
    std::cout << "degree bound: nu = " << mpz_str(result.witness.nu) << ", D = "
              << mpz_str(result.witness.D) << "\n";
    if (result.certificate == hpoly::Certificate::CertifiedBound)
      std::cout << "completeness: certified, solved through degree " << result.solve_degree << "\n";
    else
      std::cout << "completeness: stabilization-checked at degree " << result.solve_degree
                << " (re-solved at +1, +2)\n";
    std::cout << "dimension: " << result.basis.size() << "\n";
    std::cout << "basis:\n";
    for (const auto& f : result.basis)
      std::cout << "  " << hpoly::integer_scaled(f).str() << "\n";
    if (timings)
      std::cout << "solve took "
                << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                << " ms\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, bool json_mode) {
  std::vector<Check> checks;
  if (suite == "counterexamples" || suite == "all") run_counterexample_suite(&checks);
  if (suite == "appendix" || suite == "all") run_appendix_suite(&checks);
  if (suite == "leibman" || suite == "all") run_leibman_suite(&checks);
  if (suite == "representation" || suite == "all")
    run_representation_suite(&checks, seed, 10);
  if (suite == "structural" || suite == "all") run_structural_suite(&checks);
  if (checks.empty())
    throw InputError("unknown suite '" + suite +
                     "'; available: all, representation, leibman, counterexamples, appendix, "
                     "structural");
  return finish_checks(suite, checks, json_mode, seed);
}

int cmd_bound(long k, long s, long ell, bool json_mode) {
  const auto w = hpoly::degree_bound(k, s, ell);
  if (json_mode) {
    ordered_json j;
    j["command"] = "bound";
    j["witness"] = witness_json(w);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "k = " << w.k << ", s = " << w.s << ", ell = " << w.ell << "\n";
  for (size_t i = 0; i < w.a.size(); ++i)
    std::cout << "a_" << i << " = " << mpz_str(w.a[i]) << "\n";
  for (size_t i = 0; i < w.nu_seq.size(); ++i)
    std::cout << "nu_" << (i + 1) << " = " << mpz_str(w.nu_seq[i]) << "\n";
  std::cout << "nu = " << mpz_str(w.nu) << "\n";
  std::cout << "D = " << mpz_str(w.D) << "\n";
  return 0;
}

int cmd_fields(const std::string& algebra_arg, const std::string& chart_flag, bool json_mode) {
  const AlgebraDocument doc = get_algebra(algebra_arg);
  const ChartKind kind = chart_kind_of(chart_flag, doc);
  const Chart chart = make_chart(doc.algebra, kind);
  const auto fields = hpoly::left_invariant_fields(chart);
  ordered_json j;
  j["command"] = "fields";
  j["algebra"] = doc.name;
  j["chart"] = kind == ChartKind::FirstKind ? "first" : "second";
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < doc.algebra.dim(); ++i) {
    ordered_json e;
    e["name"] = doc.algebra.name(i);
    e["field"] = field_str(fields[static_cast<size_t>(i)]);
    arr.push_back(std::move(e));
  }
  j["fields"] = std::move(arr);
  if (json_mode) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "left-invariant fields of " << doc.name << " ("
              << (kind == ChartKind::FirstKind ? "first" : "second") << " kind)\n";
    for (int i = 0; i < doc.algebra.dim(); ++i)
      std::cout << doc.algebra.name(i) << " = " << field_str(fields[static_cast<size_t>(i)])
                << "\n";
  }
  return 0;
}

int cmd_convert(const std::string& algebra_arg, bool json_mode) {
  const AlgebraDocument doc = get_algebra(algebra_arg);
  const Chart first = Chart::first_kind(doc.algebra);
  const Chart second = Chart::second_kind(doc.algebra);
  const PolyVec x_of_a = hpoly::chart_conversion_map(first, second);
  const PolyVec a_of_x = hpoly::chart_conversion_map(second, first);
  ordered_json j;
  j["command"] = "convert";
  j["algebra"] = doc.name;
  ordered_json j1 = ordered_json::array(), j2 = ordered_json::array();
  for (int i = 0; i < doc.algebra.dim(); ++i) {
    j1.push_back(second.ring()->name(i) + " = " + x_of_a[static_cast<size_t>(i)].str());
    j2.push_back(first.ring()->name(i) + " = " + a_of_x[static_cast<size_t>(i)].str());
  }
  j["second_in_first"] = std::move(j1);
  j["first_in_second"] = std::move(j2);
  if (json_mode) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "second-kind coordinates in terms of first-kind:\n";
    for (const auto& line : j["second_in_first"]) std::cout << "  " << line.get<std::string>() << "\n";
    std::cout << "first-kind coordinates in terms of second-kind:\n";
    for (const auto& line : j["first_in_second"]) std::cout << "  " << line.get<std::string>() << "\n";
  }
  return 0;
}

int cmd_examples(bool json_mode) {
  ordered_json j;
  j["command"] = "examples";
  ordered_json arr = ordered_json::array();
  for (const std::string& name : hpoly::builtin_names()) {
    const LieAlgebra A = hpoly::builtin(name);
    const auto rep = A.validate();
    ordered_json e;
    e["name"] = name;
    e["dimension"] = A.dim();
    e["step"] = rep.step;
    arr.push_back(std::move(e));
  }
  j["builtins"] = std::move(arr);
  j["document_example"] =
      hpoly::algebra_to_json(AlgebraDocument{"heisenberg", hpoly::builtin("heisenberg"),
                                             ChartKind::SecondKind});
  if (json_mode) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "built-in algebras (use as builtin:<name>):\n";
  for (const auto& e : j["builtins"])
    std::cout << "  " << e["name"].get<std::string>() << "  (dim " << e["dimension"].get<int>()
              << ", step " << e["step"].get<int>() << ")\n";
  std::cout << "\nalgebra document format (JSON):\n"
            << j["document_example"].dump(2) << "\n";
  std::cout << "\nexample invocations:\n"
               "  hpoly solve builtin:heisenberg --S X1:2,X2:2 --chart second\n"
               "  hpoly solve builtin:engel --subspace V1 --k 2 --chart second --degree 6\n"
               "  hpoly solve builtin:f23 --S X1:1,X2:2 --chart second --degree 6\n"
               "  hpoly bound 2 2 2\n"
               "  hpoly fields builtin:heisenberg --chart second\n"
               "  hpoly convert builtin:engel\n"
               "  hpoly verify all\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver for polynomial functions on nilpotent Lie groups"};
  app.require_subcommand(1);

  std::string algebra_arg, s_spec, subspace_spec, chart_flag, suite;
  int k = 0;
  long bk = 0, bs = 0, bell = 0;
  std::optional<long> degree;
  bool json_mode = false, timings = false;
  uint64_t seed = 1;

  auto* v = app.add_subcommand("validate", "check the Lie algebra axioms and nilpotency");
  v->add_option("algebra", algebra_arg, "builtin:<name> or a JSON document path")->required();
  v->add_flag("--json", json_mode, "machine-readable report");

  auto* s = app.add_subcommand("solve", "compute the space of S-polynomial functions");
  s->add_option("algebra", algebra_arg, "builtin:<name> or a JSON document path")->required();
  s->add_option("--S", s_spec, "directions with orders, e.g. X1:2,X2:2");
  s->add_option("--subspace", subspace_spec, "V1 or a comma-separated list of basis names");
  s->add_option("--k", k, "uniform order for --subspace");
  s->add_option("--chart", chart_flag, "first|second (default: document, else first)");
  s->add_option("--degree", degree,
                "replace the certified degree bound by a stabilization-checked cap");
  s->add_flag("--json", json_mode, "machine-readable report");
  s->add_flag("--timings", timings, "include wall-clock timings in the report");

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("suite", suite,
                 "all|representation|leibman|counterexamples|appendix|structural")
      ->required();
  vf->add_option("--seed", seed, "seed for the randomized instances");
  vf->add_flag("--json", json_mode, "machine-readable report");

  auto* b = app.add_subcommand("bound", "print the certified degree-bound witness");
  b->add_option("k", bk, "polynomiality order")->required();
  b->add_option("s", bs, "nilpotency step")->required();
  b->add_option("ell", bell, "number of flows")->required();
  b->add_flag("--json", json_mode, "machine-readable report");

  auto* fl = app.add_subcommand("fields", "print the left-invariant coordinate fields");
  fl->add_option("algebra", algebra_arg, "builtin:<name> or a JSON document path")->required();
  fl->add_option("--chart", chart_flag, "first|second (default: document, else first)");
  fl->add_flag("--json", json_mode, "machine-readable report");

  auto* cv = app.add_subcommand("convert", "print the conversion between the two chart kinds");
  cv->add_option("algebra", algebra_arg, "builtin:<name> or a JSON document path")->required();
  cv->add_flag("--json", json_mode, "machine-readable report");

  auto* ex = app.add_subcommand("examples", "list built-ins and the document format");
  ex->add_flag("--json", json_mode, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(v)) return cmd_validate(algebra_arg, json_mode);
    if (app.got_subcommand(s))
      return cmd_solve(algebra_arg, s_spec, subspace_spec, k, chart_flag, degree, json_mode,
                       timings);
    if (app.got_subcommand(vf)) return cmd_verify(suite, seed, json_mode);
    if (app.got_subcommand(b)) return cmd_bound(bk, bs, bell, json_mode);
    if (app.got_subcommand(fl)) return cmd_fields(algebra_arg, chart_flag, json_mode);
    if (app.got_subcommand(cv)) return cmd_convert(algebra_arg, json_mode);
    if (app.got_subcommand(ex)) return cmd_examples(json_mode);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "math failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
