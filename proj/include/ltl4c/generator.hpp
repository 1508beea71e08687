#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ltl4c/trace.hpp"

namespace ltl4c {

/// Synthetic workloads: request/response sockets, memory chunks with an
/// alloc/write/free life cycle, and cache lookups with fills.
enum class trace_shape { socket, chunk, cache };

std::optional<trace_shape> parse_shape(std::string_view name) noexcept;
const char* to_string(trace_shape shape) noexcept;

struct gen_options {
  trace_shape shape = trace_shape::socket;
  std::uint64_t events = 16384;
  std::uint64_t objects = 100;
  std::uint64_t seed = 1;
  /// Fraction of objects that misbehave (never respond, leak, skip fills).
  double faulty = 0.02;
};

/// One generated event: `{key: object, op: object}` plus an optional flag.
struct gen_record {
  std::string_view key;
  std::string_view op;
  std::uint64_t object;
  std::string_view flag; // empty when absent
};

/// Deterministic for a given seed.
void generate(const gen_options& options, const std::function<void(const gen_record&)>& sink);

/// Writes newline-delimited JSON records.
void write_trace(const gen_options& options, std::ostream& out);

/// Builds the trace in memory, skipping serialization.
trace generate_trace(const gen_options& options, std::shared_ptr<symbol_table> symbols);

/// A property that fits the shape.
std::string sample_property(trace_shape shape);

} // namespace ltl4c
