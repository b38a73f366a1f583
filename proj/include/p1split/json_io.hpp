#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "p1split/oracle.hpp"
#include "p1split/splitter.hpp"

namespace p1split {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Encoding. Keys are emitted in a fixed order and no value is floating point.
// ---------------------------------------------------------------------------

Json to_json(const FieldSpec& f);
Json to_json(const Fp& x);
Json to_json(const Rational& x);

template <class F>
Json to_json(const Poly<F>& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_json(x));
  return Json{{"coeffs", std::move(c)}};
}

template <class F>
Json to_json(const Laurent<F>& l) {
  Json c = Json::array();
  for (const auto& x : l.coeffs()) c.push_back(to_json(x));
  return Json{{"low", l.low()}, {"coeffs", std::move(c)}};
}

template <class F>
Json to_json(const RatFun<F>& r) {
  return Json{{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

// Row-major array of rows.
template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const VerifyReport& r);
Json to_json(const SMBChecks& c);
Json to_json(const OracleReport& r);

// ---------------------------------------------------------------------------
// Decoding. Errors name the offending field as a path such as
// matrix[1][0].coeffs[2].
// ---------------------------------------------------------------------------

FieldSpec field_from_json(const Json& j, const std::string& path);

template <class F>
F scalar_from_json(const Json& j, const std::string& path, const FieldSpec& field);

template <>
Fp scalar_from_json<Fp>(const Json& j, const std::string& path, const FieldSpec& field);
template <>
Rational scalar_from_json<Rational>(const Json& j, const std::string& path, const FieldSpec& field);

template <class F>
std::vector<F> coeffs_from_json(const Json& j, const std::string& path, const FieldSpec& field) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of coefficients");
  std::vector<F> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(scalar_from_json<F>(j[i], path + "[" + std::to_string(i) + "]", field));
  return out;
}

int int_from_json(const Json& j, const std::string& path);

template <class F>
Poly<F> poly_from_json(const Json& j, const std::string& path, const FieldSpec& field) {
  if (!j.is_object() || !j.contains("coeffs")) throw ParseError(path + ": expected {\"coeffs\": [...]}");
  return Poly<F>(coeffs_from_json<F>(j.at("coeffs"), path + ".coeffs", field));
}

template <class F>
Laurent<F> laurent_from_json(const Json& j, const std::string& path, const FieldSpec& field) {
  if (!j.is_object() || !j.contains("coeffs")) throw ParseError(path + ": expected {\"low\": e, \"coeffs\": [...]}");
  const int low = j.contains("low") ? int_from_json(j.at("low"), path + ".low") : 0;
  return Laurent<F>(low, coeffs_from_json<F>(j.at("coeffs"), path + ".coeffs", field));
}

/// A matrix entry is a Laurent polynomial ({"low", "coeffs"}), a polynomial
/// ({"coeffs"}), a rational function ({"num", "den"}) or a bare constant.
template <class F>
using Entry = std::variant<Laurent<F>, RatFun<F>>;

template <class F>
Entry<F> entry_from_json(const Json& j, const std::string& path, const FieldSpec& field) {
  if (j.is_object() && j.contains("num")) {
    if (!j.contains("den")) throw ParseError(path + ": rational function without \"den\"");
    Poly<F> num = poly_from_json<F>(j.at("num"), path + ".num", field);
    Poly<F> den = poly_from_json<F>(j.at("den"), path + ".den", field);
    if (den.is_zero()) throw ParseError(path + ".den: zero denominator");
    return RatFun<F>(std::move(num), std::move(den));
  }
  if (j.is_object()) return laurent_from_json<F>(j, path, field);
  return Laurent<F>(scalar_from_json<F>(j, path, field));
}

// Visits a dim x dim array of rows, calling fn(i, j, entry, path).
void for_each_entry(const Json& j, const std::string& path, Eigen::Index dim,
                    const std::function<void(Eigen::Index, Eigen::Index, const Json&, const std::string&)>& fn);

/// A parsed instance file. `rational` is set when some entry is a rational
/// function; `laurent` is set otherwise.
template <class F>
struct Instance {
  FieldSpec field;
  Eigen::Index dim = 0;
  std::optional<LaurentMatrix<F>> laurent;
  std::optional<RatFunMatrix<F>> rational;
  GaugeWeights weights;
  std::optional<std::vector<int>> expected;
  std::optional<std::uint64_t> seed;
};

template <class F>
Instance<F> instance_from_json(const Json& j, const FieldSpec& field) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  Instance<F> inst{field};
  if (!j.contains("dim")) throw ParseError("dim: missing");
  inst.dim = int_from_json(j.at("dim"), "dim");
  if (inst.dim < 1) throw ParseError("dim: must be at least 1");
  if (!j.contains("matrix")) throw ParseError("matrix: missing");
  std::vector<Entry<F>> entries;
  bool any_rational = false;
  for_each_entry(j.at("matrix"), "matrix", inst.dim, [&](Eigen::Index, Eigen::Index, const Json& e, const std::string& p) {
    entries.push_back(entry_from_json<F>(e, p, field));
    any_rational |= std::holds_alternative<RatFun<F>>(entries.back());
  });
  const auto at = [&](Eigen::Index i, Eigen::Index c) -> const Entry<F>& {
    return entries[static_cast<std::size_t>(i * inst.dim + c)];
  };
  if (any_rational) {
    RatFunMatrix<F> m(inst.dim, inst.dim);
    for (Eigen::Index i = 0; i < inst.dim; ++i)
      for (Eigen::Index c = 0; c < inst.dim; ++c)
        m(i, c) = std::holds_alternative<RatFun<F>>(at(i, c)) ? std::get<RatFun<F>>(at(i, c))
                                                              : std::get<Laurent<F>>(at(i, c)).to_ratfun();
    inst.rational = std::move(m);
  } else {
    LaurentMatrix<F> m(inst.dim, inst.dim);
    for (Eigen::Index i = 0; i < inst.dim; ++i)
      for (Eigen::Index c = 0; c < inst.dim; ++c) m(i, c) = std::get<Laurent<F>>(at(i, c));
    inst.laurent = std::move(m);
  }

  inst.weights = zero_weights(inst.dim);
  if (j.contains("weights") && !j.at("weights").is_null()) {
    const Json& w = j.at("weights");
    if (!w.is_array() || static_cast<Eigen::Index>(w.size()) != inst.dim)
      throw ParseError("weights: expected " + std::to_string(inst.dim) + " integers");
    for (Eigen::Index i = 0; i < inst.dim; ++i)
      inst.weights(i) = int_from_json(w[static_cast<std::size_t>(i)], "weights[" + std::to_string(i) + "]");
  }
  if (j.contains("expected") && j.at("expected").is_array()) {
    std::vector<int> e;
    for (std::size_t i = 0; i < j.at("expected").size(); ++i)
      e.push_back(int_from_json(j.at("expected")[i], "expected[" + std::to_string(i) + "]"));
    inst.expected = std::move(e);
  }
  if (j.contains("seed") && j.at("seed").is_number_unsigned()) inst.seed = j.at("seed").get<std::uint64_t>();
  return inst;
}

template <class F>
Json instance_to_json(const FieldSpec& field, const LaurentMatrix<F>& m, const GaugeWeights* weights = nullptr) {
  Json j{{"field", to_json(field)}, {"dim", m.rows()}, {"matrix", matrix_to_json(m)}};
  if (weights) j["weights"] = std::vector<int>(weights->data(), weights->data() + weights->size());
  return j;
}

/// Parses JSON text; syntax errors report line and column.
Json parse_json_text(const std::string& text);

/// Calls fn(F{}) with a default-constructed scalar of the field's type.
template <class Fn>
decltype(auto) with_field(const FieldSpec& field, Fn&& fn) {
  if (field.is_prime_field()) return fn(Fp{});
  return fn(Rational{});
}

}  // namespace p1split
