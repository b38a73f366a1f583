#include "p1split/json_io.hpp"

#include <algorithm>
#include <limits>

namespace p1split {

Json to_json(const FieldSpec& f) {
  if (f.is_prime_field()) return Json{{"kind", "Fp"}, {"p", f.characteristic()}};
  return Json{{"kind", "Q"}};
}

Json to_json(const Fp& x) { return x.value(); }

// Integers that fit in 64 bits are emitted as numbers, everything else as a
// "num/den" string.
Json to_json(const Rational& x) {
  const mpq_class& q = x.value();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return static_cast<std::int64_t>(q.get_num().get_si());
  return x.to_string();
}

Json to_json(const VerifyReport& r) {
  return Json{{"factorization", r.factorization}, {"unimodular", r.unimodular},
              {"w_integral", r.w_integral},       {"w_unit_det", r.w_unit_det},
              {"degree_identity", r.degree_identity}, {"sorted", r.sorted},
              {"all", r.all()}};
}

Json to_json(const SMBChecks& c) {
  return Json{{"generation", c.generation}, {"unimodular", c.unimodular},
              {"inverse", c.inverse},       {"sorted", c.sorted},
              {"orthogonal", c.orthogonal}, {"pivots_distinct", c.pivots_distinct},
              {"all", c.all()}};
}

Json to_json(const OracleReport& r) {
  return Json{{"minima", r.minima}, {"bound", r.bound}, {"enumerated", r.enumerated}, {"stable", r.stable}};
}

FieldSpec field_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParseError(path + ": expected {\"kind\": \"Fp\", \"p\": p} or {\"kind\": \"Q\"}");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Q") return FieldSpec::rationals();
  if (kind != "Fp") throw ParseError(path + ".kind: unknown field kind \"" + kind + "\"");
  if (!j.contains("p") || !j.at("p").is_number_integer()) throw ParseError(path + ".p: expected an integer");
  try {
    return FieldSpec::prime(j.at("p").get<std::int64_t>());
  } catch (const FieldMismatch& e) {
    throw ParseError(path + ".p: " + e.what());
  }
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ParseError(path + ": integer out of range");
  return static_cast<int>(v);
}

template <>
Fp scalar_from_json<Fp>(const Json& j, const std::string& path, const FieldSpec& field) {
  if (j.is_number_integer()) return make_scalar<Fp>(j.get<std::int64_t>() % field.characteristic(), field);
  throw ParseError(path + ": expected an integer residue");
}

template <>
Rational scalar_from_json<Rational>(const Json& j, const std::string& path, const FieldSpec&) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ": expected an integer or a \"num/den\" string");
}

void for_each_entry(const Json& j, const std::string& path, Eigen::Index dim,
                    const std::function<void(Eigen::Index, Eigen::Index, const Json&, const std::string&)>& fn) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
    throw ParseError(path + ": expected " + std::to_string(dim) + " rows");
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw ParseError(rp + ": expected " + std::to_string(dim) + " entries");
    for (Eigen::Index c = 0; c < dim; ++c) fn(i, c, row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    const auto last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    const std::size_t column = last_nl == std::string::npos ? byte : byte - last_nl - 1;
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed JSON");
  }
}

}  // namespace p1split
