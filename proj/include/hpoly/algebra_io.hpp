#pragma once

#include <optional>
#include <string>

#include "hpoly/chart.hpp"
#include "hpoly/lie_algebra.hpp"

#include <json.hpp>

namespace hpoly {

// A Lie algebra together with its document metadata: a display name and an
// optional preferred chart kind.
struct AlgebraDocument {
  std::string name;
  LieAlgebra algebra;
  std::optional<ChartKind> default_chart;
};

// Document layout: {"name", "dimension", "basis": [names], "brackets":
// [{"i", "j", "k", "c"}], "weights"?, "chart"?}.  Bracket entries are
// one-based ([X_i, X_j] has a coefficient c on X_k) and coefficients are
// rationals written as strings, plain integers also accepted.
AlgebraDocument parse_algebra(const nlohmann::ordered_json& doc);
AlgebraDocument load_algebra(const std::string& path);
nlohmann::ordered_json algebra_to_json(const AlgebraDocument& doc);

}  // namespace hpoly
