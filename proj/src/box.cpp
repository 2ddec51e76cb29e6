#include "bordered/box.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "bordered/errors.hpp"

namespace bordered {

namespace {

struct ProductGens {
  std::vector<Generator> gens;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;

  ProductGens(const TypeDABimodule& n, const TypeDABimodule& m) {
    for (std::uint32_t x = 0; x < n.size(); ++x)
      for (std::uint32_t y = 0; y < m.size(); ++y) {
        if (n.generator(x).right != m.generator(y).left) continue;
        index[{x, y}] = static_cast<std::uint32_t>(gens.size());
        gens.push_back({n.generator(x).name + "|" + m.generator(y).name, n.generator(x).left, m.generator(y).right});
      }
  }
  std::optional<std::uint32_t> find(std::uint32_t x, std::uint32_t y) const {
    auto it = index.find({x, y});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

bool has_prefix(const Table& t, std::uint32_t gen, const Inputs& prefix) {
  auto it = t.lower_bound(Key{gen, prefix});
  if (it == t.end() || it->first.gen != gen || it->first.inputs.size() < prefix.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), it->first.inputs.begin());
}

// Walks chains of right-side table entries starting at y0. With `once` set,
// exactly one entry of `once` is used between entries of `pre` and `post`;
// otherwise only `pre` is used. For each reachable state with a nonempty
// chain of outputs, `emit(consumed inputs, chain, final generator)` runs.
// The chain must stay a prefix of some key of `sink` at generator x.
class PathWalker {
 public:
  PathWalker(const Table& sink, std::uint32_t x, const Table& pre, const Table* once, const Table* post,
             std::size_t& steps, std::size_t budget)
      : sink_(sink), x_(x), pre_(pre), once_(once), post_(post), steps_(steps), budget_(budget) {}

  template <class Emit>
  void run(std::uint32_t y0, Emit&& emit) {
    Inputs consumed, chain;
    walk(y0, once_ ? 0 : 1, consumed, chain, emit);
  }

 private:
  template <class Emit>
  void walk(std::uint32_t y, int phase, Inputs& consumed, Inputs& chain, Emit& emit) {
    if (phase == 1 && !chain.empty()) emit(consumed, chain, y);
    if (phase == 0) {
      extend(*once_, y, 1, consumed, chain, emit);
      extend(pre_, y, 0, consumed, chain, emit);
    } else {
      extend(post_ ? *post_ : pre_, y, 1, consumed, chain, emit);
    }
  }

  template <class Emit>
  void extend(const Table& t, std::uint32_t y, int next_phase, Inputs& consumed, Inputs& chain, Emit& emit) {
    auto [lo, hi] = entries_of(t, y);
    for (auto it = lo; it != hi; ++it) {
      for (const auto& term : it->second) {
        if (++steps_ > budget_)
          throw Error(ErrorKind::NonConverging, "box product exceeded its step budget of " + std::to_string(budget_));
        chain.push_back(term.alg);
        if (has_prefix(sink_, x_, chain)) {
          std::size_t before = consumed.size();
          consumed.insert(consumed.end(), it->first.inputs.begin(), it->first.inputs.end());
          walk(term.gen, next_phase, consumed, chain, emit);
          consumed.resize(before);
        }
        chain.pop_back();
      }
    }
  }

  const Table& sink_;
  std::uint32_t x_;
  const Table& pre_;
  const Table* once_;
  const Table* post_;
  std::size_t& steps_;
  std::size_t budget_;
};

void check_middle(const TypeDABimodule& n, const TypeDABimodule& m) {
  if (n.right_ptr() != m.left_ptr())
    throw Error(ErrorKind::MiddleAlgebraMismatch, "box: right algebra " + n.right_algebra().name() + " of " +
                                                      n.name() + " differs from left algebra " +
                                                      m.left_algebra().name() + " of " + m.name());
}

// Shared body of box_bimodules and box_morphism_left: `sink` is D1 of N or
// the table of F, with outputs landing in `out_left` (N or N').
Table box_table(const Table& sink, const TypeDABimodule& m, const ProductGens& src, const ProductGens& dst,
                std::size_t budget) {
  Accumulator acc;
  std::size_t steps = 0;
  for (const auto& [xy, g] : src.index) {
    auto [x, y0] = xy;
    auto it0 = sink.find(Key{x, {}});
    if (it0 != sink.end())
      for (const auto& t : it0->second)
        if (auto d = dst.find(t.gen, y0)) acc.add(Key{g, {}}, Term{t.alg, *d});
    PathWalker walker(sink, x, m.d1(), nullptr, nullptr, steps, budget);
    walker.run(y0, [&](const Inputs& consumed, const Inputs& chain, std::uint32_t y) {
      auto it = sink.find(Key{x, chain});
      if (it == sink.end()) return;
      for (const auto& t : it->second)
        if (auto d = dst.find(t.gen, y)) acc.add(Key{g, consumed}, Term{t.alg, *d});
    });
  }
  return acc.finish();
}

}  // namespace

BimodulePtr box_bimodules(const BimodulePtr& n, const BimodulePtr& m, const BoxOptions& options) {
  check_middle(*n, *m);
  ProductGens gens(*n, *m);
  Table t = box_table(n->d1(), *m, gens, gens, options.step_budget);
  return make_bimodule(n->name() + "*" + m->name(), n->left_ptr(), m->right_ptr(), gens.gens, std::move(t));
}

DAMorphism box_morphism_left(const DAMorphism& f, const BimodulePtr& m, const BoxOptions& options) {
  check_middle(f.source(), *m);
  auto src = box_bimodules(f.source_ptr(), m, options);
  auto dst = box_bimodules(f.target_ptr(), m, options);
  ProductGens sg(f.source(), *m), dg(f.target(), *m);
  Table t = box_table(f.table(), *m, sg, dg, options.step_budget);
  return DAMorphism(src, dst, std::move(t));
}

DAMorphism box_morphism_right(const BimodulePtr& n, const DAMorphism& g, const BoxOptions& options) {
  check_middle(*n, g.source());
  auto src = box_bimodules(n, g.source_ptr(), options);
  auto dst = box_bimodules(n, g.target_ptr(), options);
  ProductGens sg(*n, g.source()), dg(*n, g.target());
  Accumulator acc;
  std::size_t steps = 0;
  for (const auto& [xy, idx] : sg.index) {
    auto [x, y0] = xy;
    PathWalker walker(n->d1(), x, g.source().d1(), &g.table(), &g.target().d1(), steps, options.step_budget);
    walker.run(y0, [&](const Inputs& consumed, const Inputs& chain, std::uint32_t y) {
      auto it = n->d1().find(Key{x, chain});
      if (it == n->d1().end()) return;
      for (const auto& t : it->second)
        if (auto d = dg.find(t.gen, y)) acc.add(Key{idx, consumed}, Term{t.alg, *d});
    });
  }
  return DAMorphism(src, dst, acc.finish());
}

DAMorphism box_morphisms(const DAMorphism& f, const DAMorphism& g, const BoxOptions& options) {
  return compose(box_morphism_right(f.target_ptr(), g, options), box_morphism_left(f, g.source_ptr(), options));
}

bool equal_under_renaming(const TypeDABimodule& a, const TypeDABimodule& b,
                          const std::function<std::string(const std::string&)>& rename) {
  if (a.left_ptr() != b.left_ptr() || a.right_ptr() != b.right_ptr() || a.size() != b.size()) return false;
  std::vector<std::uint32_t> map(a.size());
  std::vector<bool> used(b.size(), false);
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    auto j = b.find(rename(a.generator(i).name));
    if (!j || used[*j]) return false;
    const auto& ga = a.generator(i);
    const auto& gb = b.generator(*j);
    if (ga.left != gb.left || ga.right != gb.right) return false;
    used[*j] = true;
    map[i] = static_cast<std::uint32_t>(*j);
  }
  Table mapped;
  for (const auto& [k, span] : a.d1()) {
    Span s;
    for (auto t : span) s.push_back({t.alg, map[t.gen]});
    std::sort(s.begin(), s.end());
    mapped[Key{map[k.gen], k.inputs}] = s;
  }
  return mapped == b.d1();
}

std::optional<std::vector<std::uint32_t>> find_relabeling(const TypeDABimodule& a, const TypeDABimodule& b) {
  if (a.left_ptr() != b.left_ptr() || a.right_ptr() != b.right_ptr() || a.size() != b.size() ||
      a.d1().size() != b.d1().size())
    return std::nullopt;
  const std::size_t n = a.size();
  std::vector<std::uint32_t> map(n, 0);
  std::vector<bool> assigned(n, false), used(n, false);

  // Entries of `a` whose generators are all assigned must appear verbatim in b.
  auto consistent = [&](std::uint32_t just) {
    auto [lo, hi] = entries_of(a.d1(), just);
    for (auto it = lo; it != hi; ++it) {
      bool ready = std::all_of(it->second.begin(), it->second.end(), [&](const Term& t) { return assigned[t.gen]; });
      if (!ready) continue;
      Span s;
      for (auto t : it->second) s.push_back({t.alg, map[t.gen]});
      std::sort(s.begin(), s.end());
      if (b.entry(Key{map[just], it->first.inputs}) != s) return false;
    }
    for (const auto& in : a.into(just)) {
      std::uint32_t src = in.key->gen;
      if (!assigned[src] || src == just) continue;
      const Span& full = a.entry(*in.key);
      bool ready = std::all_of(full.begin(), full.end(), [&](const Term& t) { return assigned[t.gen]; });
      if (!ready) continue;
      Span s;
      for (auto t : full) s.push_back({t.alg, map[t.gen]});
      std::sort(s.begin(), s.end());
      if (b.entry(Key{map[src], in.key->inputs}) != s) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::uint32_t i) -> bool {
    if (i == n) return true;
    const auto& gi = a.generator(i);
    for (std::uint32_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const auto& gj = b.generator(j);
      if (gi.left != gj.left || gi.right != gj.right) continue;
      map[i] = j;
      assigned[i] = used[j] = true;
      if (consistent(i) && self(self, i + 1)) return true;
      assigned[i] = used[j] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  Table mapped;
  for (const auto& [k, span] : a.d1()) {
    Span s;
    for (auto t : span) s.push_back({t.alg, map[t.gen]});
    std::sort(s.begin(), s.end());
    mapped[Key{map[k.gen], k.inputs}] = s;
  }
  if (mapped != b.d1()) return std::nullopt;
  return map;
}

DAMorphism transport(const DAMorphism& f, const BimodulePtr& new_source, const std::vector<std::uint32_t>& source_map,
                     const BimodulePtr& new_target, const std::vector<std::uint32_t>& target_map) {
  Table t;
  for (const auto& [k, span] : f.table()) {
    Span s;
    for (auto term : span) s.push_back({term.alg, target_map.at(term.gen)});
    std::sort(s.begin(), s.end());
    t[Key{source_map.at(k.gen), k.inputs}] = s;
  }
  return DAMorphism(new_source, new_target, std::move(t));
}

}  // namespace bordered
