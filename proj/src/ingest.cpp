#include "ltl4c/trace.hpp"

#include <istream>

#include <json.hpp>

namespace ltl4c {
namespace {

using json = nlohmann::json;

std::string scalar_text(const json& v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float())
    return v.dump();
  return {};
}

bool is_scalar(const json& v) { return v.is_string() || v.is_number(); }

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

} // namespace

std::optional<event> parse_record(std::string_view line, std::size_t line_number) {
  if (blank(line))
    return std::nullopt;
  json doc = json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded())
    throw ingest_error(line_number, "not a JSON record");
  if (!doc.is_object())
    throw ingest_error(line_number, "record is not an object");

  event e;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>())
        e.flags.insert(key);
    } else if (is_scalar(value)) {
      e.bindings.emplace(key, scalar_text(value));
    } else if (value.is_array()) {
      // Tuple value for predicates of arity > 1.
      std::string joined;
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!is_scalar(value[i]))
          throw ingest_error(line_number, "key '" + key + "' holds a non-scalar tuple element");
        if (i)
          joined += ',';
        joined += scalar_text(value[i]);
      }
      e.bindings.emplace(key, std::move(joined));
    } else if (!value.is_null()) {
      throw ingest_error(line_number, "key '" + key + "' holds an unsupported value");
    }
  }
  return e;
}

std::string serialize(const event& e) {
  json doc = json::object();
  for (const auto& [k, v] : e.bindings)
    doc[k] = v;
  for (const auto& f : e.flags)
    doc[f] = true;
  return doc.dump();
}

trace ingest(std::istream& in, std::shared_ptr<symbol_table> symbols,
             const ingest_options& options) {
  trace out(std::move(symbols));
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    try {
      if (auto e = parse_record(line, line_number))
        out.push_back(*e);
    } catch (const ingest_error& err) {
      if (options.on_malformed == malformed_policy::abort)
        throw;
      if (options.warn)
        options.warn(err);
    }
  }
  return out;
}

} // namespace ltl4c
