#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpoly/chart.hpp"
#include "hpoly/matrix.hpp"

namespace hpoly {

enum class SPolyMode {
  PerDirection,     // X^{k_X} f = 0 for each listed direction with its own order
  SubspaceUniform,  // X^k f = 0 for every X in the span of the listed directions
};

// The data of "find all f with X^k f = 0 along S" over a fixed chart.
struct SPolyProblem {
  LieAlgebra algebra;
  Chart chart;
  std::vector<RatVec> S;    // direction coordinates in the algebra basis
  std::vector<int> orders;  // one per direction, or a single uniform order
  SPolyMode mode = SPolyMode::PerDirection;

  static SPolyProblem directions(const LieAlgebra& A, const Chart& chart,
                                 std::vector<RatVec> S, std::vector<int> orders);
  static SPolyProblem subspace(const LieAlgebra& A, const Chart& chart,
                               std::vector<RatVec> span_of, int k);
  int max_order() const;
};

// The degree-bound recursion for one k-polynomial function restricted along
// ell concatenated flows in a step-s group: a_{ell-1} = k-1,
// a_{j-1} = s a_j + k - 1, nu_1 = k-1 + a_1 (s-1),
// nu_{j+1} = nu_j + k-1 + a_{j+1} (s-1), nu = nu_{ell-1} + k - 1, D = a_0.
// Values grow geometrically, hence arbitrary-precision integers.
struct DegreeBoundWitness {
  long k = 0, s = 0, ell = 0;
  std::vector<mpz_class> a;       // a_0 .. a_{ell-1}
  std::vector<mpz_class> nu_seq;  // nu_1 .. nu_{ell-1}; empty when ell = 1
  mpz_class nu;
  mpz_class D;
};

DegreeBoundWitness degree_bound(long k, long s, long ell);

enum class Certificate {
  CertifiedBound,        // candidate degree is the proved bound
  StabilizationChecked,  // user-supplied degree; +1 and +2 re-solves agreed
};

struct SolveOptions {
  std::optional<long> degree;        // candidate-degree override
  long candidate_guard = 2'000'000;  // refuse larger enumerations
};

struct SPolyBasis {
  SPolyProblem problem;
  DegreeBoundWitness witness;  // bound behind the certificate
  long solve_degree = 0;       // candidate degree actually enumerated
  bool weighted = false;       // true: solve_degree is the problem chart's stratified
                               // weighted degree; false: it is the lifted free
                               // algebra's weighted degree (free-lift route)
  Certificate certificate = Certificate::CertifiedBound;
  std::string route;           // "carnot-layer" or "free-lift"
  std::string route_detail;
  std::vector<Polynomial> basis;  // canonical reduced echelon over chart ring
  int dimension() const { return static_cast<int>(basis.size()); }
};

// Solves for the full space of S-polynomial functions in the problem's chart.
// Stratified algebra with span(S) = first layer: candidates run over weighted
// degrees up to nu(k_max, s, 2n) and the system splits per weighted degree.
// Otherwise: lift to the free nilpotent algebra on |S| generators, solve
// there (its generators span the first layer), intersect with the conditions
// that the solution factors through the quotient, and pull back along a right
// inverse.  Either way a user degree downgrades the certificate and is
// accepted only when re-solving at +1 and +2 returns the same subspace.
SPolyBasis spoly_basis(const SPolyProblem& P, const SolveOptions& opt = {});

// Minimal d such that every word of d+1 left-invariant basis fields kills f,
// found by iterating "span of all first derivatives" until it reaches zero.
int differential_degree(const Chart& chart, const Polynomial& f);

// Discrete polynomiality test: with D_g f = f(x g) - f(x), expands
// D_{g_1} ... D_{g_{d+1}} f over fully symbolic group elements g_j and
// reports whether it vanishes identically.
bool leibman_check(const Chart& chart, const Polynomial& f, int d);

// Checks the propagation identity
//   (X_1 ... X_r f)(q exp(tX)) =
//     sum_{i<k} t^i/i! (Ad_{exp tX}(X_1) ... Ad_{exp tX}(X_r) X^i f)(q)
// with symbolic q and t.  Requires X^k f = 0.
bool verify_representation(const Chart& chart, const Polynomial& f, const RatVec& X,
                           const std::vector<RatVec>& word, int k);

// f(p exp(t_1 Y_1) ... exp(t_ell Y_ell)) as an exact polynomial in the t_j,
// for a rational base point p given in first-kind coordinates.  Verifies that
// the total degree respects the bound nu(k, s, ell), that the explicit
// Ad-conjugated derivative expansion reproduces the same polynomial, and that
// the result only depends on the order-D jet of f at p.
Polynomial restrict_along_flows(const Chart& chart, const Polynomial& f, const RatVec& p,
                                const std::vector<RatVec>& Ys, int k);

// True iff X f = 0 for every X in the d-th term of the lower central series
// (g_0 = g); requires differential_degree(f) <= d.
bool lcs_invariance(const Chart& chart, const Polynomial& f, int d);

// Exact coefficients a_0..a_{k-1} of the degree-<k polynomial through the
// given (time, value) samples; the k sample times must be pairwise distinct.
std::vector<Rational> vandermonde_fit(const std::vector<std::pair<Rational, Rational>>& samples,
                                      int k);

// Canonical reduced-echelon representatives of the span of the given
// polynomials (all over one ring).
std::vector<Polynomial> canonicalize_span(const std::vector<Polynomial>& polys);
bool same_span(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);

// Display form: basis element scaled to coprime integer coefficients with a
// positive leading (lowest-monomial) coefficient.
Polynomial integer_scaled(const Polynomial& p);

}  // namespace hpoly
