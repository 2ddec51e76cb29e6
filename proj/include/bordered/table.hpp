#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace bordered {

/// b (x) y: a left-algebra basis element tensored with a generator.
struct Term {
  std::uint32_t alg = 0;
  std::uint32_t gen = 0;
  friend auto operator<=>(const Term&, const Term&) = default;
};

using Span = std::vector<Term>;  // sorted, no repeats
using Inputs = std::vector<std::uint32_t>;

void add_into(Span& a, const Span& b);

/// (generator, input sequence) address of a table entry.
struct Key {
  std::uint32_t gen = 0;
  Inputs inputs;
  friend auto operator<=>(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept;
};

/// Finitely supported structure or morphism table. Entries are never empty.
using Table = std::map<Key, Span>;

std::size_t arity_bound(const Table& t);
/// Range of entries for generator `gen`.
std::pair<Table::const_iterator, Table::const_iterator> entries_of(const Table& t, std::uint32_t gen);
Table add_tables(const Table& a, const Table& b);

/// Collects terms with multiplicity and reduces mod 2 at the end.
class Accumulator {
 public:
  void add(const Key& key, const Term& term) { raw_[key].push_back(term); }
  void add(Key&& key, const Term& term) { raw_[std::move(key)].push_back(term); }
  void add(const Key& key, const Span& span) {
    auto& v = raw_[key];
    v.insert(v.end(), span.begin(), span.end());
  }
  Table finish();

 private:
  std::unordered_map<Key, std::vector<Term>, KeyHash> raw_;
};

/// Cancels repeated terms pairwise.
Span reduce_terms(std::vector<Term> terms);

}  // namespace bordered
