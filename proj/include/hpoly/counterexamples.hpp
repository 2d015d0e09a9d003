#pragma once

#include <string>
#include <vector>

#include "hpoly/derivation.hpp"

namespace hpoly {

// Non-nilpotent verification targets.  Exponential coordinates are not
// polynomial charts here, so the fields and the test functions are hardcoded
// over extended rings (a Laurent variable for the positive coordinate, a
// transcendental generator for the logarithm) and every identity is checked
// by exact symbolic differentiation.

struct CounterexampleCheck {
  std::string identity;
  bool passed = false;
};

struct CounterexampleReport {
  std::string name;
  std::vector<CounterexampleCheck> checks;
  std::string note;
  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

const std::vector<std::string>& counterexample_names();  // {"aff_plus", "sl2r"}
CounterexampleReport verify_builtin_counterexample(const std::string& name);

// The underlying rings and fields, exposed for direct tests.
struct AffPlusModel {
  RingPtr ring;      // x, y (Laurent), L with dL/dy = 1/y and dL/dx = 0
  Derivation X;      // y d/dx
  Derivation Y;      // y d/dy
  Polynomial f;      // (x + 1) L
};
AffPlusModel aff_plus_model();

struct Sl2Model {
  RingPtr ring;      // x1 (Laurent), x2, x3
  Derivation X1;     // x1 d/dx1 - x2 d/dx2 + x3 d/dx3
  Derivation X2;     // x1 d/dx2
  Derivation X3;     // x2 d/dx1 + (1 + x2 x3) x1^-1 d/dx3
};
Sl2Model sl2_model();

}  // namespace hpoly
