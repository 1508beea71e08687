#include "ltl4c/trace.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace ltl4c {

std::optional<symbol> event_view::value_of(symbol key) const noexcept {
  // Bindings are sorted by key.
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), key,
                             [](const binding& b, symbol k) { return b.key < k; });
  if (it != bindings_.end() && it->key == key)
    return it->value;
  return std::nullopt;
}

bool event_view::has_flag(symbol key) const noexcept {
  return std::binary_search(flags_.begin(), flags_.end(), key);
}

trace::trace(std::shared_ptr<symbol_table> symbols, std::uint64_t first_index)
    : symbols_(std::move(symbols)), first_index_(first_index) {}

event_view trace::operator[](std::size_t i) const noexcept {
  const auto b0 = binding_offsets_[i];
  const auto b1 = binding_offsets_[i + 1];
  const auto f0 = flag_offsets_[i];
  const auto f1 = flag_offsets_[i + 1];
  return event_view(first_index_ + i, std::span(bindings_).subspan(b0, b1 - b0),
                    std::span(flags_).subspan(f0, f1 - f0));
}

void trace::push_back(const event& e) {
  std::vector<binding> b;
  b.reserve(e.bindings.size());
  for (const auto& [k, v] : e.bindings)
    b.push_back({symbols_->intern(k), symbols_->intern(v)});
  std::vector<symbol> f;
  f.reserve(e.flags.size());
  for (const auto& k : e.flags)
    f.push_back(symbols_->intern(k));
  push_back(b, f);
}

void trace::push_back(std::span<const binding> bindings, std::span<const symbol> flags) {
  const auto b0 = bindings_.size();
  bindings_.insert(bindings_.end(), bindings.begin(), bindings.end());
  std::sort(bindings_.begin() + static_cast<std::ptrdiff_t>(b0), bindings_.end(),
            [](const binding& a, const binding& b) { return a.key < b.key; });
  binding_offsets_.push_back(static_cast<std::uint32_t>(bindings_.size()));

  const auto f0 = flags_.size();
  flags_.insert(flags_.end(), flags.begin(), flags.end());
  std::sort(flags_.begin() + static_cast<std::ptrdiff_t>(f0), flags_.end());
  flags_.erase(std::unique(flags_.begin() + static_cast<std::ptrdiff_t>(f0), flags_.end()),
               flags_.end());
  flag_offsets_.push_back(static_cast<std::uint32_t>(flags_.size()));
}

void trace::reserve(std::size_t events, std::size_t bindings_per_event) {
  binding_offsets_.reserve(events + 1);
  flag_offsets_.reserve(events + 1);
  bindings_.reserve(events * bindings_per_event);
}

event trace::to_event(std::size_t i) const {
  const auto view = (*this)[i];
  event e;
  for (const auto& b : view.bindings())
    e.bindings.emplace(symbols_->name(b.key), symbols_->name(b.value));
  for (auto f : view.flags())
    e.flags.insert(symbols_->name(f));
  return e;
}

std::size_t value_vector_hash::operator()(const value_vector& v) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (auto s : v)
    h = (h ^ s) * 0x100000001b3ULL + (h >> 29);
  return h;
}

value_order::value_order(const symbol_table& symbols, std::vector<bool> numeric_positions)
    : symbols_(&symbols), numeric_(std::move(numeric_positions)) {}

namespace {

bool as_number(const std::string& s, double& out) {
  if (s.empty())
    return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

} // namespace

int value_order::compare(symbol a, symbol b, std::size_t position) const {
  if (a == b)
    return 0;
  const auto& sa = symbols_->name(a);
  const auto& sb = symbols_->name(b);
  if (position < numeric_.size() && numeric_[position]) {
    double da = 0;
    double db = 0;
    if (as_number(sa, da) && as_number(sb, db) && da != db)
      return da < db ? -1 : 1;
  }
  const int c = sa.compare(sb);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int value_order::compare(const value_vector& a, const value_vector& b) const {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a[i], b[i], i); c != 0)
      return c;
  if (a.size() == b.size())
    return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::optional<value_vector> extract_valuation(const event_view& e, std::span<const symbol> keys) {
  value_vector v;
  v.reserve(keys.size());
  for (auto k : keys) {
    auto value = e.value_of(k);
    if (!value)
      return std::nullopt;
    v.push_back(*value);
  }
  return v;
}

std::vector<value_vector> collect_vectors(const trace& u, std::span<const symbol> keys,
                                          const value_order& order) {
  std::unordered_set<value_vector, value_vector_hash> seen;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (auto v = extract_valuation(u[i], keys))
      seen.insert(std::move(*v));
  std::vector<value_vector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), order);
  return out;
}

slice_map::slice_map(std::vector<value_vector> vectors, std::vector<std::size_t> offsets,
                     std::vector<std::uint64_t> indices)
    : vectors_(std::move(vectors)), offsets_(std::move(offsets)), indices_(std::move(indices)) {}

std::span<const std::uint64_t> slice_map::slice(std::size_t i) const {
  return std::span(indices_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::optional<std::size_t> slice_map::find(const value_vector& v) const {
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    if (vectors_[i] == v)
      return i;
  return std::nullopt;
}

slice_map slice_trace(const trace& u, std::span<const symbol> keys, const value_order& order) {
  std::map<value_vector, std::vector<std::uint64_t>, value_order> groups(order);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto e = u[i];
    if (auto v = extract_valuation(e, keys))
      groups[std::move(*v)].push_back(e.index());
  }
  std::vector<value_vector> vectors;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint64_t> indices;
  for (auto& [v, list] : groups) {
    vectors.push_back(v);
    indices.insert(indices.end(), list.begin(), list.end());
    offsets.push_back(indices.size());
  }
  return slice_map(std::move(vectors), std::move(offsets), std::move(indices));
}

} // namespace ltl4c
