#include "zmdiff/document.hpp"

#include <array>
#include <limits>

#include "json.hpp"

namespace zmdiff {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 7> kFields = {"m",  "a",       "b",      "f",
                                                     "f_period", "y0", "horizon"};

[[noreturn]] void reject(std::string_view field, std::string_view why) {
  throw Error(ErrorCode::kInvalidArgument,
              "field '" + std::string(field) + "': " + std::string(why));
}

std::int64_t integer_field(const json& value, std::string_view field) {
  if (!value.is_number_integer()) reject(field, "expected an integer");
  if (value.is_number_unsigned() &&
      value.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    reject(field, "integer out of range");
  }
  return value.get<std::int64_t>();
}

}  // namespace

ProblemDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) reject("<root>", "expected a JSON object");
  for (const auto& item : root.items()) {
    bool known = false;
    for (auto name : kFields) known = known || item.key() == name;
    if (!known) reject(item.key(), "unknown field");
  }
  for (auto name : {"m", "a", "b", "f"}) {
    if (!root.contains(name)) reject(name, "missing required field");
  }

  ProblemDocument doc;
  doc.m = integer_field(root["m"], "m");
  doc.a = integer_field(root["a"], "a");
  doc.b = integer_field(root["b"], "b");
  const auto& f = root["f"];
  if (!f.is_array()) reject("f", "expected an array of integers");
  if (f.empty()) reject("f", "needs at least one term");
  for (const auto& v : f) doc.f.push_back(integer_field(v, "f"));
  if (root.contains("f_period")) doc.f_period = integer_field(root["f_period"], "f_period");
  if (root.contains("y0")) doc.y0 = integer_field(root["y0"], "y0");
  if (root.contains("horizon")) doc.horizon = integer_field(root["horizon"], "horizon");

  if (doc.m < 2 || static_cast<std::uint64_t>(doc.m) > kMaxModulus) {
    reject("m", "must lie in [2, 2^32]");
  }
  if (doc.f_period &&
      (*doc.f_period < 1 || static_cast<std::size_t>(*doc.f_period) > doc.f.size())) {
    reject("f_period", "must lie in [1, length of f]");
  }
  if (doc.horizon && *doc.horizon < 1) reject("horizon", "must be at least 1");
  return doc;
}

std::string serialize_document(const ProblemDocument& doc) {
  ordered_json out;
  out["m"] = doc.m;
  out["a"] = doc.a;
  out["b"] = doc.b;
  out["f"] = doc.f;
  if (doc.f_period) out["f_period"] = *doc.f_period;
  if (doc.y0) out["y0"] = *doc.y0;
  if (doc.horizon) out["horizon"] = *doc.horizon;
  return out.dump();
}

ProblemSpec to_problem_spec(const ProblemDocument& doc) {
  const auto m = static_cast<std::uint64_t>(doc.m);
  std::optional<std::uint64_t> period;
  if (doc.f_period) period = static_cast<std::uint64_t>(*doc.f_period);
  return ProblemSpec(m, doc.a, doc.b, SequenceSpec::from_integers(m, doc.f, period));
}

}  // namespace zmdiff
