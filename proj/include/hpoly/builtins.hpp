#pragma once

#include <string>
#include <vector>

#include "hpoly/lie_algebra.hpp"

namespace hpoly {

// Stratified built-in algebras with the bracket conventions the second-kind
// bases depend on.
LieAlgebra heisenberg();  // [X1,X2] = X3
LieAlgebra engel();       // [X1,X2] = X3, [X1,X3] = X4
LieAlgebra f23();         // [X2,X1] = X3, [X3,X1] = X4, [X3,X2] = X5

const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);
LieAlgebra builtin(const std::string& name);

}  // namespace hpoly
