#include "randroots/polyjson.hpp"

#include <sstream>

#include "randroots/error.hpp"

namespace randroots::poly {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) parse_fail(name, "enclosing value is not an object");
  auto it = j.find(name);
  if (it == j.end()) parse_fail(name, "missing");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) parse_fail(name, "expected an integer");
  return v.get<int>();
}

std::vector<double> real_array(const json& v, const char* name) {
  if (!v.is_array()) parse_fail(name, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) parse_fail(name, "non-numeric entry");
    out.push_back(e.get<double>());
  }
  return out;
}

json multi_coeffs(const MultiPoly& p) {
  json obj = json::object();
  for (std::size_t n = 0; n < p.size(); ++n) obj[index_key(p.indices()[n])] = p.coeffs()[n];
  return obj;
}

MultiPoly parse_multi(const json& coeffs, int m, int d) {
  if (!coeffs.is_object()) parse_fail("coeffs", "expected an object keyed by multi-index");
  std::map<MultiIndex, double> entries;
  for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
    if (!it.value().is_number()) parse_fail("coeffs." + it.key(), "non-numeric coefficient");
    MultiIndex j = parse_index_key(it.key());
    if (static_cast<int>(j.size()) != m) parse_fail("coeffs." + it.key(), "index length differs from m");
    entries[j] += it.value().get<double>();
  }
  try {
    return MultiPoly(m, d, entries);
  } catch (const Error& e) {
    parse_fail("coeffs", e.what());
  }
}

}  // namespace

std::string index_key(const MultiIndex& j) {
  std::string out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(j[i]);
  }
  return out;
}

MultiIndex parse_index_key(const std::string& key) {
  MultiIndex j;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int e = std::stoi(part, &used);
      if (used != part.size() || e < 0) throw std::invalid_argument(part);
      j.push_back(e);
    } catch (const std::exception&) {
      parse_fail("coeffs", "bad multi-index key '" + key + "'");
    }
  }
  if (j.empty()) parse_fail("coeffs", "empty multi-index key");
  return j;
}

json to_json(const MonomialPoly& p) {
  return {{"basis", "monomial"}, {"m", 1}, {"degree", p.degree()},
          {"coeffs", std::vector<double>(p.coeffs().begin(), p.coeffs().end())}};
}

json to_json(const BernsteinPoly& p) {
  return {{"basis", "bernstein"}, {"m", 1}, {"degree", p.degree()},
          {"coeffs", std::vector<double>(p.coeffs().begin(), p.coeffs().end())}};
}

json to_json(const ComplexPoly& p) {
  json c = json::array();
  for (const auto& a : p.coeffs()) c.push_back({a.real(), a.imag()});
  return {{"basis", "complex"}, {"m", 1}, {"degree", p.degree()}, {"coeffs", c}};
}

json to_json(const MultiPoly& p) {
  return {{"basis", "multi"}, {"m", p.vars()}, {"degree", p.degree()}, {"coeffs", multi_coeffs(p)}};
}

json to_json(const PolySystemCoeffs& system) {
  if (system.empty()) throw Error(ErrorCode::InvalidArgument, "empty system");
  json degrees = json::array();
  json coeffs = json::array();
  for (const auto& f : system) {
    degrees.push_back(f.degree());
    coeffs.push_back(multi_coeffs(f));
  }
  return {{"basis", "multi"}, {"m", system.front().vars()}, {"degree", degrees}, {"coeffs", coeffs}};
}

json to_json(const AnyPoly& p) {
  return std::visit([](const auto& v) { return to_json(v); }, p);
}

AnyPoly polynomial_from_json(const json& j) {
  const json& basis_v = field(j, "basis");
  if (!basis_v.is_string()) parse_fail("basis", "expected a string");
  const std::string basis = basis_v.get<std::string>();
  const int m = int_field(j, "m");
  if (m < 1) parse_fail("m", "must be >= 1");
  const json& degree = field(j, "degree");
  const json& coeffs = field(j, "coeffs");

  if (basis == "monomial" || basis == "bernstein" || basis == "complex") {
    if (m != 1) parse_fail("m", "univariate basis requires m = 1");
    if (!degree.is_number_integer()) parse_fail("degree", "expected an integer");
    const int d = degree.get<int>();
    if (d < 0) parse_fail("degree", "must be >= 0");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != d + 1)
      parse_fail("coeffs", "expected degree + 1 entries");
    if (basis == "complex") {
      std::vector<std::complex<double>> c;
      for (const auto& e : coeffs) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
          parse_fail("coeffs", "complex entries are [re, im] pairs");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
      return ComplexPoly(std::move(c));
    }
    auto c = real_array(coeffs, "coeffs");
    if (basis == "monomial") return MonomialPoly(std::move(c));
    return BernsteinPoly(std::move(c));
  }
  if (basis == "multi") {
    if (degree.is_number_integer()) {
      const int d = degree.get<int>();
      if (d < 0) parse_fail("degree", "must be >= 0");
      return parse_multi(coeffs, m, d);
    }
    if (!degree.is_array()) parse_fail("degree", "expected an integer or a list of integers");
    if (!coeffs.is_array() || coeffs.size() != degree.size())
      parse_fail("coeffs", "system needs one coefficient object per degree");
    PolySystemCoeffs system;
    for (std::size_t i = 0; i < degree.size(); ++i) {
      if (!degree[i].is_number_integer() || degree[i].get<int>() < 0)
        parse_fail("degree", "entries must be non-negative integers");
      system.push_back(parse_multi(coeffs[i], m, degree[i].get<int>()));
    }
    return system;
  }
  parse_fail("basis", "unknown basis '" + basis + "'");
}

}  // namespace randroots::poly
