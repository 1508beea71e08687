#include "ltl4c/generator.hpp"

#include <ostream>
#include <random>
#include <vector>

#include <fmt/format.h>

namespace ltl4c {

std::optional<trace_shape> parse_shape(std::string_view name) noexcept {
  if (name == "socket")
    return trace_shape::socket;
  if (name == "chunk")
    return trace_shape::chunk;
  if (name == "cache")
    return trace_shape::cache;
  return std::nullopt;
}

const char* to_string(trace_shape shape) noexcept {
  switch (shape) {
  case trace_shape::socket: return "socket";
  case trace_shape::chunk: return "chunk";
  case trace_shape::cache: return "cache";
  }
  return "?";
}

std::string sample_property(trace_shape shape) {
  switch (shape) {
  case trace_shape::socket:
    return "forall[>=0.95] s : socket(s) => G (receive(s) -> F respond(s))";
  case trace_shape::chunk:
    return "forall[>=0.9] c : chunk(c) => G (alloc(c) -> F free(c))";
  case trace_shape::cache:
    return "forall[>=0.9] e : entry(e) => G ((lookup(e) && !hit) -> X insert(e))";
  }
  return {};
}

void generate(const gen_options& options, const std::function<void(const gen_record&)>& sink) {
  std::mt19937_64 rng(options.seed);
  const auto objects = std::max<std::uint64_t>(options.objects, 1);
  // Draws are taken modulo so the output does not depend on the standard
  // library's distribution implementations.
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  auto chance = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };

  std::vector<std::uint8_t> faulty(objects);
  for (auto& f : faulty)
    f = chance(options.faulty);
  // Per-object phase: socket 1 = awaiting response; chunk 1 = allocated;
  // cache 1 = cached, 2 = missed and awaiting fill.
  std::vector<std::uint8_t> state(objects, 0);

  for (std::uint64_t i = 0; i < options.events; ++i) {
    const auto o = pick(objects);
    switch (options.shape) {
    case trace_shape::socket:
      if (state[o] == 1 && !faulty[o]) {
        sink({"socket", "respond", o, {}});
        state[o] = 0;
      } else {
        sink({"socket", "receive", o, {}});
        state[o] = 1;
      }
      break;
    case trace_shape::chunk:
      if (state[o] == 0) {
        sink({"chunk", "alloc", o, {}});
        state[o] = 1;
      } else if (faulty[o] || chance(0.5)) {
        sink({"chunk", "write", o, {}});
      } else {
        sink({"chunk", "free", o, {}});
        state[o] = 0;
      }
      break;
    case trace_shape::cache:
      if (state[o] == 2 && !faulty[o]) {
        sink({"entry", "insert", o, {}});
        state[o] = 1;
      } else if (state[o] == 1) {
        sink({"entry", "lookup", o, "hit"});
        if (chance(0.1))
          state[o] = 0; // evicted
      } else {
        sink({"entry", "lookup", o, {}});
        state[o] = 2;
      }
      break;
    }
  }
}

void write_trace(const gen_options& options, std::ostream& out) {
  fmt::memory_buffer buf;
  generate(options, [&](const gen_record& r) {
    if (r.flag.empty())
      fmt::format_to(std::back_inserter(buf), "{{\"{}\":{},\"{}\":{}}}\n", r.key, r.object, r.op,
                     r.object);
    else
      fmt::format_to(std::back_inserter(buf), "{{\"{}\":{},\"{}\":{},\"{}\":true}}\n", r.key,
                     r.object, r.op, r.object, r.flag);
    if (buf.size() > (1 << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  });
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

trace generate_trace(const gen_options& options, std::shared_ptr<symbol_table> symbols) {
  trace out(symbols);
  out.reserve(options.events, 2);
  std::vector<symbol> values;
  for (std::uint64_t o = 0; o < std::max<std::uint64_t>(options.objects, 1); ++o)
    values.push_back(symbols->intern(std::to_string(o)));
  generate(options, [&](const gen_record& r) {
    const binding b[2] = {{symbols->intern(r.key), values[r.object]},
                          {symbols->intern(r.op), values[r.object]}};
    if (r.flag.empty()) {
      out.push_back(b, {});
    } else {
      const symbol f = symbols->intern(r.flag);
      out.push_back(b, std::span(&f, 1));
    }
  });
  return out;
}

} // namespace ltl4c
