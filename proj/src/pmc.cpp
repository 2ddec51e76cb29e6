#include "bordered/pmc.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "bordered/errors.hpp"

namespace bordered {

namespace {

using Labels = std::vector<int>;

// Relabel so pair labels appear in order of first occurrence.
Labels canonical(const Labels& seq) {
  std::vector<int> map(seq.size(), -1);
  Labels out;
  out.reserve(seq.size());
  int next = 0;
  for (int l : seq) {
    if (map[static_cast<std::size_t>(l)] < 0) map[static_cast<std::size_t>(l)] = next++;
    out.push_back(map[static_cast<std::size_t>(l)]);
  }
  return out;
}

bool has_adjacent_pair(const Labels& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i] == seq[i + 1]) return true;
  return false;
}

// A foot b adjacent to foot c slides over c's handle: if b sat just before c
// it lands just after c's partner, and vice versa.
std::vector<Labels> arc_slides(const Labels& seq) {
  std::vector<Labels> out;
  const std::size_t n = seq.size();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (auto [b, c] : {std::pair{p, p + 1}, std::pair{p + 1, p}}) {
      if (seq[b] == seq[c]) continue;
      std::size_t cp = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (seq[i] == seq[c] && i != c) cp = i;
      Labels s = seq;
      int label = s[b];
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(b));
      std::size_t cp2 = cp < b ? cp : cp - 1;
      std::size_t at = b < c ? cp2 + 1 : cp2;
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(at), label);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::string PointedMatchedCircle::to_string() const {
  std::ostringstream os;
  os << "GENUS " << genus_ << " PAIRS";
  for (auto [a, b] : pairs_) os << " (" << a << ' ' << b << ')';
  return os.str();
}

PointedMatchedCircle make_unchecked_pmc(int genus, const std::vector<PointPair>& pairs) {
  if (genus < 1) throw Error(ErrorKind::MalformedMatching, "genus must be at least 1");
  const int n = 4 * genus;
  if (pairs.size() != static_cast<std::size_t>(2 * genus))
    throw Error(ErrorKind::MalformedMatching,
                "expected " + std::to_string(2 * genus) + " pairs, got " + std::to_string(pairs.size()));
  PointedMatchedCircle c;
  c.genus_ = genus;
  c.partner_.assign(static_cast<std::size_t>(n + 1), 0);
  for (auto [a, b] : pairs) {
    for (int p : {a, b}) {
      if (p < 1 || p > n)
        throw Error(ErrorKind::MalformedMatching, "point " + std::to_string(p) + " outside 1.." + std::to_string(n));
    }
    if (a == b) throw Error(ErrorKind::MalformedMatching, "point " + std::to_string(a) + " matched to itself");
    for (int p : {a, b})
      if (c.partner_[static_cast<std::size_t>(p)] != 0)
        throw Error(ErrorKind::MalformedMatching, "point " + std::to_string(p) + " appears twice");
    c.partner_[static_cast<std::size_t>(a)] = b;
    c.partner_[static_cast<std::size_t>(b)] = a;
    c.pairs_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(c.pairs_.begin(), c.pairs_.end());
  c.pair_index_.assign(static_cast<std::size_t>(n + 1), 0);
  for (std::size_t i = 0; i < c.pairs_.size(); ++i) {
    c.pair_index_[static_cast<std::size_t>(c.pairs_[i].first)] = i;
    c.pair_index_[static_cast<std::size_t>(c.pairs_[i].second)] = i;
  }
  return c;
}

PointedMatchedCircle make_pmc(int genus, const std::vector<PointPair>& pairs) {
  PointedMatchedCircle c = make_unchecked_pmc(genus, pairs);
  std::size_t comps = surgery_component_count(c);
  if (comps != 1)
    throw Error(ErrorKind::DegenerateMatching,
                "surgery on " + c.to_string() + " yields " + std::to_string(comps) + " circles");
  return c;
}

std::size_t surgery_component_count(const PointedMatchedCircle& c) {
  // Segment i runs from point i to point i+1 (segment 4g crosses the
  // basepoint). Following it to point i+1 and across the handle continues on
  // the segment starting at the partner.
  const int n = c.num_points();
  std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
  std::size_t count = 0;
  for (int s = 1; s <= n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++count;
    int x = s;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      x = c.partner(x % n + 1);
    }
  }
  return count;
}

std::optional<bool> handleslide_valid(const PointedMatchedCircle& c, std::size_t state_budget,
                                      std::size_t* states_seen) {
  Labels start;
  for (int p = 1; p <= c.num_points(); ++p) start.push_back(static_cast<int>(c.pair_of(p)));
  start = canonical(start);
  std::set<Labels> seen{start};
  std::deque<Labels> queue{start};
  std::optional<bool> result = true;
  while (!queue.empty()) {
    Labels s = std::move(queue.front());
    queue.pop_front();
    if (has_adjacent_pair(s)) {
      result = false;
      break;
    }
    for (auto& t : arc_slides(s)) {
      Labels k = canonical(t);
      if (seen.insert(k).second) {
        if (seen.size() > state_budget) {
          result = std::nullopt;
          queue.clear();
          break;
        }
        queue.push_back(std::move(k));
      }
    }
  }
  if (states_seen) *states_seen = seen.size();
  return result;
}

PmcValidation validate_report(const PointedMatchedCircle& c) {
  PmcValidation r;
  r.surgery_components = surgery_component_count(c);
  r.surgery_valid = r.surgery_components == 1;
  r.handleslide_valid = handleslide_valid(c, 200000, &r.handleslide_states);
  return r;
}

bool validate(const PointedMatchedCircle& c) { return surgery_component_count(c) == 1; }

PointedMatchedCircle reverse(const PointedMatchedCircle& c) {
  const int n = c.num_points();
  std::vector<PointPair> pairs;
  for (auto [a, b] : c.pairs()) pairs.emplace_back(n + 1 - a, n + 1 - b);
  return make_unchecked_pmc(c.genus(), pairs);
}

}  // namespace bordered
