#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ltl4c/error.hpp"
#include "ltl4c/symbol_table.hpp"

namespace ltl4c {

/// Owning, string-keyed form of one event. Used at the edges (ingest,
/// serialization, tests); traces store interned events.
struct event {
  std::map<std::string, std::string> bindings; // predicate key -> value
  std::set<std::string> flags;                 // 0-arity predicates present

  friend bool operator==(const event&, const event&) = default;
};

struct binding {
  symbol key;
  symbol value;
};

/// Read-only view of an interned event inside a trace.
class event_view {
public:
  event_view(std::uint64_t index, std::span<const binding> bindings,
             std::span<const symbol> flags) noexcept
      : index_(index), bindings_(bindings), flags_(flags) {}

  std::uint64_t index() const noexcept { return index_; }
  std::span<const binding> bindings() const noexcept { return bindings_; }
  std::span<const symbol> flags() const noexcept { return flags_; }

  std::optional<symbol> value_of(symbol key) const noexcept;
  bool has_flag(symbol key) const noexcept;

private:
  std::uint64_t index_;
  std::span<const binding> bindings_;
  std::span<const symbol> flags_;
};

/// Sequence of events with contiguous indices starting at first_index().
///
/// Events are stored column-wise so multi-million event traces stay compact.
class trace {
public:
  explicit trace(std::shared_ptr<symbol_table> symbols, std::uint64_t first_index = 0);

  std::size_t size() const noexcept { return binding_offsets_.size() - 1; }
  bool empty() const noexcept { return size() == 0; }
  std::uint64_t first_index() const noexcept { return first_index_; }

  event_view operator[](std::size_t i) const noexcept;

  void push_back(const event& e);
  /// Appends an already interned event. Bindings must have unique keys.
  void push_back(std::span<const binding> bindings, std::span<const symbol> flags);
  void reserve(std::size_t events, std::size_t bindings_per_event = 2);

  event to_event(std::size_t i) const;

  symbol_table& symbols() const noexcept { return *symbols_; }
  const std::shared_ptr<symbol_table>& symbols_ptr() const noexcept { return symbols_; }

private:
  std::shared_ptr<symbol_table> symbols_;
  std::uint64_t first_index_;
  std::vector<std::uint32_t> binding_offsets_{0};
  std::vector<binding> bindings_;
  std::vector<std::uint32_t> flag_offsets_{0};
  std::vector<symbol> flags_;
};

/// Concrete values for the quantified variables, in quantifier order.
/// A prefix of a full vector identifies an inner node of the monitor tree.
using value_vector = std::vector<symbol>;

struct value_vector_hash {
  std::size_t operator()(const value_vector& v) const noexcept;
};

/// Canonical total order on value vectors: lexicographic over the value
/// text, with numeric comparison at positions whose key is numeric.
class value_order {
public:
  value_order(const symbol_table& symbols, std::vector<bool> numeric_positions = {});

  int compare(symbol a, symbol b, std::size_t position) const;
  int compare(const value_vector& a, const value_vector& b) const;
  bool operator()(const value_vector& a, const value_vector& b) const {
    return compare(a, b) < 0;
  }

private:
  const symbol_table* symbols_;
  std::vector<bool> numeric_;
};

/// Reads the full valuation for `keys` out of one event (the map from a
/// trace event to the value vector it holds). Absent unless every key is
/// bound in this event.
std::optional<value_vector> extract_valuation(const event_view& e, std::span<const symbol> keys);

/// All distinct value vectors bound somewhere in `u`, in canonical order.
std::vector<value_vector> collect_vectors(const trace& u, std::span<const symbol> keys,
                                          const value_order& order);

/// Per-vector subsequences of a trace: vector -> strictly increasing list of
/// global event indices holding that vector.
class slice_map {
public:
  slice_map() = default;
  slice_map(std::vector<value_vector> vectors, std::vector<std::size_t> offsets,
            std::vector<std::uint64_t> indices);

  std::size_t size() const noexcept { return vectors_.size(); }
  bool empty() const noexcept { return vectors_.empty(); }
  const value_vector& vector(std::size_t i) const { return vectors_[i]; }
  std::span<const std::uint64_t> slice(std::size_t i) const;
  std::optional<std::size_t> find(const value_vector& v) const;

private:
  std::vector<value_vector> vectors_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint64_t> indices_;
};

/// Straightforward sequential slicing; the parallel pipeline has its own.
slice_map slice_trace(const trace& u, std::span<const symbol> keys, const value_order& order);

// ---------------------------------------------------------------- ingestion

enum class malformed_policy { skip, abort };

struct ingest_options {
  malformed_policy on_malformed = malformed_policy::abort;
  /// Called for every skipped record when on_malformed == skip.
  std::function<void(const ingest_error&)> warn;
};

/// Parses one newline-delimited record. Blank lines yield nullopt.
/// Throws ingest_error for malformed records.
std::optional<event> parse_record(std::string_view line, std::size_t line_number);

std::string serialize(const event& e);

trace ingest(std::istream& in, std::shared_ptr<symbol_table> symbols,
             const ingest_options& options = {});

/// Best-effort adapter for strace output lines such as
/// `1234 read(3, "...", 4096) = 12`. The syscall name becomes a key bound to
/// the first argument; the pid, when present, is bound to `pid`.
std::optional<event> parse_strace_line(std::string_view line);
trace ingest_strace(std::istream& in, std::shared_ptr<symbol_table> symbols);

} // namespace ltl4c
