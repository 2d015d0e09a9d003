#include "hpoly/algebra_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hpoly/errors.hpp"

namespace hpoly {

namespace {

using nlohmann::ordered_json;

const ordered_json& field(const ordered_json& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError("algebra document: missing field '" + key + "'");
  return *it;
}

int int_field(const ordered_json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError("algebra document: " + where + " must be an integer");
  return j.get<int>();
}

Rational rational_field(const ordered_json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::from_string(j.get<std::string>());
    } catch (const Error&) {
      throw InputError("algebra document: " + where + " is not a rational ('" +
                       j.get<std::string>() + "')");
    }
  }
  throw InputError("algebra document: " + where + " must be a rational string like \"-1/2\"");
}

}  // namespace

AlgebraDocument parse_algebra(const ordered_json& doc) {
  if (!doc.is_object()) throw InputError("algebra document: top level must be an object");

  const ordered_json& jname = field(doc, "name");
  if (!jname.is_string()) throw InputError("algebra document: 'name' must be a string");
  const std::string name = jname.get<std::string>();

  const int dim = int_field(field(doc, "dimension"), "'dimension'");
  if (dim < 1) throw InputError("algebra document: 'dimension' must be >= 1");

  const ordered_json& jbasis = field(doc, "basis");
  if (!jbasis.is_array() || static_cast<int>(jbasis.size()) != dim)
    throw InputError("algebra document: 'basis' must list exactly 'dimension' names");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& jn : jbasis) {
    if (!jn.is_string() || jn.get<std::string>().empty())
      throw InputError("algebra document: basis names must be nonempty strings");
    if (!seen.insert(jn.get<std::string>()).second)
      throw InputError("algebra document: duplicate basis name '" + jn.get<std::string>() + "'");
    names.push_back(jn.get<std::string>());
  }

  const ordered_json& jbr = field(doc, "brackets");
  if (!jbr.is_array()) throw InputError("algebra document: 'brackets' must be an array");
  std::vector<LieAlgebra::StructureEntry> entries;
  for (size_t t = 0; t < jbr.size(); ++t) {
    const std::string where = "brackets[" + std::to_string(t) + "]";
    const ordered_json& e = jbr[t];
    if (!e.is_object()) throw InputError("algebra document: " + where + " must be an object");
    const int i = int_field(field(e, "i"), where + ".i");
    const int j = int_field(field(e, "j"), where + ".j");
    const int k = int_field(field(e, "k"), where + ".k");
    for (const auto& [label, idx] : {std::pair<const char*, int>{"i", i}, {"j", j}, {"k", k}}) {
      if (idx < 1 || idx > dim)
        throw InputError("algebra document: " + where + "." + label + " is out of range (one-based)");
    }
    const Rational c = rational_field(field(e, "c"), where + ".c");
    entries.push_back(LieAlgebra::StructureEntry{i - 1, j - 1, k - 1, c});
  }

  std::optional<std::vector<int>> weights;
  if (doc.contains("weights")) {
    const ordered_json& jw = doc.at("weights");
    if (!jw.is_array() || static_cast<int>(jw.size()) != dim)
      throw InputError("algebra document: 'weights' must list one integer per basis element");
    std::vector<int> w;
    for (size_t t = 0; t < jw.size(); ++t) {
      const int wi = int_field(jw[t], "weights[" + std::to_string(t) + "]");
      if (wi < 1) throw InputError("algebra document: weights must be >= 1");
      w.push_back(wi);
    }
    weights = std::move(w);
  }

  std::optional<ChartKind> chart;
  if (doc.contains("chart")) {
    const ordered_json& jc = doc.at("chart");
    if (!jc.is_string()) throw InputError("algebra document: 'chart' must be \"first\" or \"second\"");
    const std::string s = jc.get<std::string>();
    if (s == "first") chart = ChartKind::FirstKind;
    else if (s == "second") chart = ChartKind::SecondKind;
    else throw InputError("algebra document: 'chart' must be \"first\" or \"second\", got '" + s + "'");
  }

  return AlgebraDocument{name, LieAlgebra(std::move(names), std::move(entries), std::move(weights)),
                         chart};
}

AlgebraDocument load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open algebra document '" + path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("algebra document '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_algebra(doc);
}

nlohmann::ordered_json algebra_to_json(const AlgebraDocument& doc) {
  ordered_json out;
  out["name"] = doc.name;
  const LieAlgebra& A = doc.algebra;
  out["dimension"] = A.dim();
  out["basis"] = A.names();
  ordered_json brackets = ordered_json::array();
  for (int i = 0; i < A.dim(); ++i) {
    for (int j = i + 1; j < A.dim(); ++j) {
      for (int k = 0; k < A.dim(); ++k) {
        const Rational c = A.c(i, j, k);
        if (c.is_zero()) continue;
        ordered_json e;
        e["i"] = i + 1;
        e["j"] = j + 1;
        e["k"] = k + 1;
        e["c"] = c.str();
        brackets.push_back(std::move(e));
      }
    }
  }
  out["brackets"] = std::move(brackets);
  if (A.graded()) out["weights"] = A.weights();
  if (doc.default_chart)
    out["chart"] = *doc.default_chart == ChartKind::FirstKind ? "first" : "second";
  return out;
}

}  // namespace hpoly
