#include "hpoly/builtins.hpp"

namespace hpoly {

LieAlgebra heisenberg() {
  return LieAlgebra({"X1", "X2", "X3"}, {{0, 1, 2, Rational(1)}}, std::vector<int>{1, 1, 2});
}

LieAlgebra engel() {
  return LieAlgebra({"X1", "X2", "X3", "X4"},
                    {{0, 1, 2, Rational(1)}, {0, 2, 3, Rational(1)}},
                    std::vector<int>{1, 1, 2, 3});
}

LieAlgebra f23() {
  return LieAlgebra({"X1", "X2", "X3", "X4", "X5"},
                    {{1, 0, 2, Rational(1)}, {2, 0, 3, Rational(1)}, {2, 1, 4, Rational(1)}},
                    std::vector<int>{1, 1, 2, 3, 3});
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"heisenberg", "engel", "f23"};
  return names;
}

bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names()) {
    if (n == name) return true;
  }
  return false;
}

LieAlgebra builtin(const std::string& name) {
  if (name == "heisenberg") return heisenberg();
  if (name == "engel") return engel();
  if (name == "f23") return f23();
  throw InputError("unknown built-in algebra '" + name + "'; available: heisenberg, engel, f23");
}

}  // namespace hpoly
