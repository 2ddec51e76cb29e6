#include "bordered/strand_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bordered/errors.hpp"

namespace bordered {

std::strong_ordering operator<=>(const StrandDiagram& a, const StrandDiagram& b) {
  if (auto k = a.occupied() <=> b.occupied(); k != 0) return k;
  if (auto k = a.strands <=> b.strands; k != 0) return k;
  return a.horizontals <=> b.horizontals;
}

namespace {

// Strand diagram with every horizontal expanded to one point: a partial
// bijection stored as (source, target) sorted by source.
using Primitive = std::vector<std::pair<int, int>>;

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

std::size_t inversions(const Primitive& p) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i].second > p[j].second) ++n;
  return n;
}

std::vector<Primitive> expand(const PointedMatchedCircle& c, const StrandDiagram& a) {
  std::vector<Primitive> out;
  const std::size_t h = a.horizontals.size();
  for (std::uint64_t choice = 0; choice < bit(h); ++choice) {
    Primitive p(a.strands.begin(), a.strands.end());
    for (std::size_t i = 0; i < h; ++i) {
      auto [x, y] = c.pairs()[a.horizontals[i]];
      int q = (choice & bit(i)) ? y : x;
      p.emplace_back(q, q);
    }
    std::sort(p.begin(), p.end());
    out.push_back(std::move(p));
  }
  return out;
}

// Sums primitives mod 2 and groups them back into diagrams. Every surviving
// group must contain all 2^h of its expansions.
AlgebraElement regroup(const PointedMatchedCircle& c, std::vector<Primitive> prims) {
  std::sort(prims.begin(), prims.end());
  std::map<StrandDiagram, std::size_t> groups;
  for (std::size_t i = 0; i < prims.size();) {
    std::size_t j = i;
    while (j < prims.size() && prims[j] == prims[i]) ++j;
    if ((j - i) & 1U) {
      StrandDiagram d;
      for (auto [s, t] : prims[i]) {
        if (s == t)
          d.horizontals.push_back(c.pair_of(s));
        else
          d.strands.emplace_back(s, t);
      }
      std::sort(d.horizontals.begin(), d.horizontals.end());
      ++groups[d];
    }
    i = j;
  }
  AlgebraElement out;
  for (auto& [d, count] : groups) {
    if (count != bit(d.horizontals.size()) || !is_valid_diagram(c, d))
      throw std::logic_error("strand algebra: result is not a combination of grouped diagrams: " +
                             diagram_name(c, d));
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::uint64_t source_idempotent(const PointedMatchedCircle& c, const StrandDiagram& a) {
  std::uint64_t m = 0;
  for (auto [s, t] : a.strands) m |= bit(c.pair_of(s));
  for (auto h : a.horizontals) m |= bit(h);
  return m;
}

std::uint64_t target_idempotent(const PointedMatchedCircle& c, const StrandDiagram& a) {
  std::uint64_t m = 0;
  for (auto [s, t] : a.strands) m |= bit(c.pair_of(t));
  for (auto h : a.horizontals) m |= bit(h);
  return m;
}

bool is_valid_diagram(const PointedMatchedCircle& c, const StrandDiagram& a) {
  std::uint64_t src = 0, tgt = 0, hor = 0;
  if (!std::is_sorted(a.strands.begin(), a.strands.end())) return false;
  if (!std::is_sorted(a.horizontals.begin(), a.horizontals.end())) return false;
  for (auto [s, t] : a.strands) {
    if (s < 1 || t > c.num_points() || s >= t) return false;
    if (src & bit(c.pair_of(s))) return false;
    if (tgt & bit(c.pair_of(t))) return false;
    src |= bit(c.pair_of(s));
    tgt |= bit(c.pair_of(t));
  }
  for (auto h : a.horizontals) {
    if (h >= c.num_pairs() || (hor & bit(h))) return false;
    hor |= bit(h);
  }
  return (hor & (src | tgt)) == 0;
}

std::vector<StrandDiagram> enumerate_basis(const PointedMatchedCircle& c) {
  std::vector<Strand> all;
  for (int s = 1; s <= c.num_points(); ++s)
    for (int t = s + 1; t <= c.num_points(); ++t) all.emplace_back(s, t);

  std::vector<StrandDiagram> out;
  std::vector<Strand> chosen;
  auto emit = [&](std::uint64_t src, std::uint64_t tgt) {
    std::uint64_t free = 0;
    for (std::size_t p = 0; p < c.num_pairs(); ++p)
      if (!((src | tgt) & bit(p))) free |= bit(p);
    // Every subset of the free pairs can be occupied horizontally.
    for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
      StrandDiagram d{chosen, {}};
      for (std::size_t p = 0; p < c.num_pairs(); ++p)
        if (sub & bit(p)) d.horizontals.push_back(p);
      out.push_back(std::move(d));
      if (sub == 0) break;
    }
  };
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t src, std::uint64_t tgt) -> void {
    emit(src, tgt);
    for (std::size_t i = from; i < all.size(); ++i) {
      auto [s, t] = all[i];
      std::uint64_t ps = bit(c.pair_of(s)), pt = bit(c.pair_of(t));
      if ((src & ps) || (tgt & pt)) continue;
      chosen.push_back(all[i]);
      self(self, i + 1, src | ps, tgt | pt);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraElement multiply(const PointedMatchedCircle& c, const StrandDiagram& a, const StrandDiagram& b) {
  if (target_idempotent(c, a) != source_idempotent(c, b)) return {};
  std::vector<Primitive> prims;
  auto pa = expand(c, a);
  auto pb = expand(c, b);
  for (const auto& x : pa) {
    std::vector<int> targets;
    for (auto [s, t] : x) targets.push_back(t);
    std::sort(targets.begin(), targets.end());
    for (const auto& y : pb) {
      // y is sorted by source, so its sources are already in order.
      bool match = targets.size() == y.size();
      for (std::size_t i = 0; match && i < y.size(); ++i) match = targets[i] == y[i].first;
      if (!match) continue;
      Primitive z;
      for (auto [s, t] : x) {
        auto it = std::lower_bound(y.begin(), y.end(), std::pair{t, 0});
        z.emplace_back(s, it->second);
      }
      if (inversions(z) != inversions(x) + inversions(y)) continue;  // double crossing
      prims.push_back(std::move(z));
    }
  }
  return regroup(c, std::move(prims));
}

AlgebraElement differential(const PointedMatchedCircle& c, const StrandDiagram& a) {
  std::vector<Primitive> prims;
  for (const auto& x : expand(c, a)) {
    const std::size_t inv = inversions(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (x[i].second <= x[j].second) continue;
        Primitive y = x;
        std::swap(y[i].second, y[j].second);
        if (inversions(y) + 1 != inv) continue;  // resolution undoes another crossing
        prims.push_back(std::move(y));
      }
    }
  }
  return regroup(c, std::move(prims));
}

std::string idempotent_alias(const PointedMatchedCircle& c, std::uint64_t mask) {
  if (mask == 0) return "i_";
  std::string out = "i";
  bool dotted = c.num_pairs() >= 10;
  bool first = true;
  for (std::size_t p = 0; p < c.num_pairs(); ++p) {
    if (!(mask & bit(p))) continue;
    if (dotted && !first) out += '.';
    out += std::to_string(p);
    first = false;
  }
  return out;
}

std::string diagram_name(const PointedMatchedCircle& c, const StrandDiagram& a) {
  std::ostringstream os;
  for (auto [s, t] : a.strands) os << "r[" << s << '-' << t << ']';
  for (auto h : a.horizontals) os << "h(" << c.pairs()[h].first << ' ' << c.pairs()[h].second << ')';
  if (a.strands.empty() && a.horizontals.empty()) os << "h()";
  return os.str();
}

StrandDiagram parse_diagram(const PointedMatchedCircle& c, const std::string& text) {
  auto fail = [&](const std::string& why) -> StrandDiagram {
    throw Error(ErrorKind::UnknownSymbol, "'" + text + "' is not a strand diagram: " + why);
  };
  StrandDiagram d;
  if (!text.empty() && text[0] == 'i') {
    std::uint64_t mask = 0;
    if (text != "i_") {
      std::string body = text.substr(1);
      std::vector<std::string> parts;
      if (c.num_pairs() >= 10) {
        std::stringstream ss(body);
        for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
      } else {
        for (char ch : body) parts.emplace_back(1, ch);
      }
      for (auto& p : parts) {
        if (p.empty() || !std::all_of(p.begin(), p.end(), ::isdigit)) return fail("bad idempotent index");
        std::size_t k = std::stoul(p);
        if (k >= c.num_pairs() || (mask & bit(k))) return fail("bad idempotent index");
        mask |= bit(k);
      }
    }
    for (std::size_t p = 0; p < c.num_pairs(); ++p)
      if (mask & bit(p)) d.horizontals.push_back(p);
    return d;
  }
  std::size_t i = 0;
  auto number = [&]() {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) fail("expected a point number");
    int v = std::stoi(text.substr(i, j - i));
    i = j;
    return v;
  };
  auto expect = [&](char ch) {
    if (i >= text.size() || text[i] != ch) fail(std::string("expected '") + ch + "'");
    ++i;
  };
  if (text == "h()") return d;
  while (i < text.size()) {
    if (text[i] == 'r') {
      ++i;
      expect('[');
      int s = number();
      expect('-');
      int t = number();
      expect(']');
      d.strands.emplace_back(s, t);
    } else if (text[i] == 'h') {
      ++i;
      expect('(');
      int p = number();
      expect(' ');
      int q = number();
      expect(')');
      if (p < 1 || p > c.num_points() || c.partner(p) != q) fail("h(p q) must name a matched pair");
      d.horizontals.push_back(c.pair_of(p));
    } else {
      fail("unexpected character");
    }
  }
  if (text.empty()) fail("empty");
  std::sort(d.strands.begin(), d.strands.end());
  std::sort(d.horizontals.begin(), d.horizontals.end());
  if (!is_valid_diagram(c, d)) fail("violates the diagram invariants");
  return d;
}

DGAlgebra build_dga(const PointedMatchedCircle& c, const std::string& name) {
  auto basis = enumerate_basis(c);
  const std::size_t n = basis.size();
  std::map<StrandDiagram, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(basis[i], i);

  DGAlgebraData data;
  data.name = name;
  std::map<std::uint64_t, std::size_t> idem_of_mask;
  std::vector<std::uint64_t> src(n), tgt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = basis[i];
    src[i] = source_idempotent(c, d);
    tgt[i] = target_idempotent(c, d);
    if (d.strands.empty()) {
      data.names.push_back(idempotent_alias(c, src[i]));
      data.aliases.emplace_back(diagram_name(c, d), i);
      data.idempotents.push_back(i);
      idem_of_mask[src[i]] = i;
    } else {
      data.names.push_back(diagram_name(c, d));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    data.source_idem.push_back(idem_of_mask.at(src[i]));
    data.target_idem.push_back(idem_of_mask.at(tgt[i]));
  }
  auto to_elem = [&](const AlgebraElement& e) {
    Elem out;
    for (const auto& d : e) out.push_back(index.at(d));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::map<std::uint64_t, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < n; ++i) by_source[src[i]].push_back(i);
  for (std::size_t a = 0; a < n; ++a) {
    for (auto b : by_source[tgt[a]]) {
      Elem e = to_elem(multiply(c, basis[a], basis[b]));
      if (!e.empty()) data.mult.emplace_back(a, b, std::move(e));
    }
    Elem e = to_elem(differential(c, basis[a]));
    if (!e.empty()) data.diff.emplace_back(a, std::move(e));
  }
  DGAlgebra out(std::move(data));
  out.set_circle(c);
  return out;
}

}  // namespace bordered
