#include "bordered/table.hpp"

#include <algorithm>

namespace bordered {

void add_into(Span& a, const Span& b) {
  if (b.empty()) return;
  Span out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  a.swap(out);
}

std::size_t KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.gen;
  for (auto x : k.inputs) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
  return static_cast<std::size_t>(h);
}

std::size_t arity_bound(const Table& t) {
  std::size_t k = 0;
  for (const auto& [key, span] : t) k = std::max(k, key.inputs.size());
  return k;
}

std::pair<Table::const_iterator, Table::const_iterator> entries_of(const Table& t, std::uint32_t gen) {
  return {t.lower_bound(Key{gen, {}}), t.lower_bound(Key{gen + 1, {}})};
}

Table add_tables(const Table& a, const Table& b) {
  Table out = a;
  for (const auto& [k, s] : b) {
    auto& slot = out[k];
    add_into(slot, s);
    if (slot.empty()) out.erase(k);
  }
  return out;
}

Span reduce_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  Span out;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) & 1U) out.push_back(terms[i]);
    i = j;
  }
  return out;
}

Table Accumulator::finish() {
  Table out;
  for (auto& [k, v] : raw_) {
    Span s = reduce_terms(std::move(v));
    if (!s.empty()) out.emplace(k, std::move(s));
  }
  raw_.clear();
  return out;
}

}  // namespace bordered
