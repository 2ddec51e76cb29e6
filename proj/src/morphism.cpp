#include "bordered/morphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "bordered/errors.hpp"
#include "bordered/parallel.hpp"

namespace bordered {

namespace {

const Span kEmpty;

void check_same_algebras(const TypeDABimodule& a, const TypeDABimodule& b, const std::string& what) {
  if (a.left_ptr() != b.left_ptr() || a.right_ptr() != b.right_ptr())
    throw Error(ErrorKind::BimoduleMismatch,
                what + ": " + a.name() + " and " + b.name() + " are over different algebras");
}

Inputs concat(const Inputs& a, const Inputs& b) {
  Inputs out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Pushes the contributions of one table entry H(key) = span to dH.
void push_entry(const TypeDABimodule& M, const TypeDABimodule& N, const Key& key, const Span& span,
                Accumulator& acc) {
  const DGAlgebra& A1 = M.left_algebra();
  const DGAlgebra& A2 = M.right_algebra();
  for (const auto& t : span) {
    for (auto db : A1.d(t.alg)) acc.add(key, Term{static_cast<std::uint32_t>(db), t.gen});
    auto [lo, hi] = entries_of(N.d1(), t.gen);
    for (auto it = lo; it != hi; ++it) {
      Key k{key.gen, concat(key.inputs, it->first.inputs)};
      for (const auto& u : it->second)
        for (auto p : A1.mul(t.alg, u.alg)) acc.add(k, Term{static_cast<std::uint32_t>(p), u.gen});
    }
  }
  for (const auto& in : M.into(key.gen)) {
    Key k{in.key->gen, concat(in.key->inputs, key.inputs)};
    for (const auto& t : span)
      for (auto p : A1.mul(in.alg, t.alg)) acc.add(k, Term{static_cast<std::uint32_t>(p), t.gen});
  }
  for (std::size_t pos = 0; pos < key.inputs.size(); ++pos) {
    const auto c = key.inputs[pos];
    for (auto a : A2.diff_preimages(c)) {
      Key k = key;
      k.inputs[pos] = static_cast<std::uint32_t>(a);
      acc.add(k, span);
    }
    for (auto [a, a2] : A2.mul_preimages(c)) {
      Key k{key.gen, {}};
      k.inputs.reserve(key.inputs.size() + 1);
      k.inputs.insert(k.inputs.end(), key.inputs.begin(), key.inputs.begin() + static_cast<std::ptrdiff_t>(pos));
      k.inputs.push_back(static_cast<std::uint32_t>(a));
      k.inputs.push_back(static_cast<std::uint32_t>(a2));
      k.inputs.insert(k.inputs.end(), key.inputs.begin() + static_cast<std::ptrdiff_t>(pos) + 1, key.inputs.end());
      acc.add(k, span);
    }
  }
}

}  // namespace

DAMorphism::DAMorphism(BimodulePtr source, BimodulePtr target, Table table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  for (auto it = table_.begin(); it != table_.end();) {
    if (it->second.empty())
      it = table_.erase(it);
    else
      ++it;
  }
  arity_ = bordered::arity_bound(table_);
}

const Span& DAMorphism::entry(const Key& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? kEmpty : it->second;
}

std::string DAMorphism::render_span(const Span& s) const { return target_->render_span(s); }

DAMorphism make_morphism(BimodulePtr source, BimodulePtr target, Table table) {
  check_same_algebras(*source, *target, "morphism");
  const DGAlgebra& A1 = source->left_algebra();
  for (const auto& [key, span] : table) {
    if (key.gen >= source->size()) throw Error(ErrorKind::UnknownSymbol, "morphism: unknown source generator");
    for (auto a : key.inputs)
      if (a >= source->right_algebra().size()) throw Error(ErrorKind::UnknownSymbol, "morphism: unknown input");
    if (!std::is_sorted(span.begin(), span.end()) || std::adjacent_find(span.begin(), span.end()) != span.end())
      throw Error(ErrorKind::InvalidArgument, "morphism: span not reduced");
    for (const auto& t : span) {
      if (t.gen >= target->size() || t.alg >= A1.size())
        throw Error(ErrorKind::UnknownSymbol, "morphism: unknown output term");
      std::size_t lx = source->generator(key.gen).left, ly = target->generator(t.gen).left;
      if (A1.mul(A1.mul(Elem{lx}, Elem{t.alg}), Elem{ly}) != Elem{t.alg})
        throw Error(ErrorKind::IdempotentMismatch, "morphism: output " + target->render_term(t) + " of " +
                                                       source->render_key(key) + " is not idempotent-compatible");
    }
  }
  return DAMorphism(std::move(source), std::move(target), std::move(table));
}

DAMorphism zero_morphism(BimodulePtr source, BimodulePtr target) {
  check_same_algebras(*source, *target, "zero morphism");
  return DAMorphism(std::move(source), std::move(target), {});
}

DAMorphism identity_morphism(BimodulePtr m) {
  Table t;
  for (std::uint32_t x = 0; x < m->size(); ++x)
    t[Key{x, {}}] = Span{Term{static_cast<std::uint32_t>(m->generator(x).left), x}};
  return DAMorphism(m, m, std::move(t));
}

DAMorphism add(const DAMorphism& f, const DAMorphism& g) {
  if (!same_bimodule(f.source(), g.source()) || !same_bimodule(f.target(), g.target()))
    throw Error(ErrorKind::BimoduleMismatch, "add: morphisms have different source or target");
  return DAMorphism(f.source_ptr(), f.target_ptr(), add_tables(f.table(), g.table()));
}

Table morphism_differential_table(const DAMorphism& h) {
  std::vector<const std::pair<const Key, Span>*> entries;
  for (const auto& e : h.table()) entries.push_back(&e);
  std::size_t chunks = default_chunk_count(entries.size());
  std::vector<Table> partial(chunks);
  parallel_chunks(
      entries.size(),
      [&](std::size_t c, std::size_t b, std::size_t e) {
        Accumulator acc;
        for (std::size_t i = b; i < e; ++i) push_entry(h.source(), h.target(), entries[i]->first, entries[i]->second, acc);
        partial[c] = acc.finish();
      },
      chunks);
  Table out;
  for (auto& t : partial) out = add_tables(out, t);
  return out;
}

DAMorphism morphism_differential(const DAMorphism& h) {
  return DAMorphism(h.source_ptr(), h.target_ptr(), morphism_differential_table(h));
}

ClosedReport is_closed(const DAMorphism& f) {
  ClosedReport r;
  Table d = morphism_differential_table(f);
  if (!d.empty()) {
    r.closed = false;
    r.witness = d.begin()->first;
    r.value = d.begin()->second;
    r.message = "dF is nonzero at " + f.render_key(*r.witness) + ": " + f.render_span(r.value);
  }
  return r;
}

DAMorphism compose(const DAMorphism& g, const DAMorphism& f) {
  if (!same_bimodule(f.target(), g.source()))
    throw Error(ErrorKind::BimoduleMismatch,
                "compose: target " + f.target().name() + " differs from source " + g.source().name());
  const DGAlgebra& A1 = f.source().left_algebra();
  Accumulator acc;
  for (const auto& [key, span] : f.table()) {
    for (const auto& t : span) {
      auto [lo, hi] = entries_of(g.table(), t.gen);
      for (auto it = lo; it != hi; ++it) {
        Key k{key.gen, concat(key.inputs, it->first.inputs)};
        for (const auto& u : it->second)
          for (auto p : A1.mul(t.alg, u.alg)) acc.add(k, Term{static_cast<std::uint32_t>(p), u.gen});
      }
    }
  }
  return DAMorphism(f.source_ptr(), g.target_ptr(), acc.finish());
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Unknown {
  Key key;
  Term term;
};

std::vector<Unknown> enumerate_unknowns(const TypeDABimodule& M, const TypeDABimodule& N, std::size_t cap,
                                        bool strictly_unital) {
  const DGAlgebra& A1 = M.left_algebra();
  const DGAlgebra& A2 = M.right_algebra();
  // Generators of N by left idempotent.
  std::map<std::size_t, std::vector<std::uint32_t>> n_by_left;
  for (std::uint32_t y = 0; y < N.size(); ++y) n_by_left[N.generator(y).left].push_back(y);

  std::vector<Unknown> out;
  for (std::uint32_t x = 0; x < M.size(); ++x) {
    Inputs chain;
    // Outputs b (x) y need L(x) b L(y) = b and R(y) equal to the idempotent
    // the inputs end at.
    auto rec = [&](auto&& self, std::size_t idem) -> void {
      for (auto b : A1.starting_at(M.generator(x).left)) {
        auto it = n_by_left.find(A1.target(b));
        if (it == n_by_left.end()) continue;
        for (auto y : it->second)
          if (N.generator(y).right == idem)
            out.push_back({Key{x, chain}, Term{static_cast<std::uint32_t>(b), y}});
      }
      if (chain.size() == cap) return;
      for (auto a : A2.starting_at(idem)) {
        if (strictly_unital && A2.is_idempotent(a)) continue;
        chain.push_back(static_cast<std::uint32_t>(a));
        self(self, A2.target(a));
        chain.pop_back();
      }
    };
    rec(rec, M.generator(x).right);
  }
  return out;
}

}  // namespace

HomotopyResult is_homotopic(const DAMorphism& f, const DAMorphism& g, std::size_t cap, HomotopyOptions options) {
  if (!same_bimodule(f.source(), g.source()) || !same_bimodule(f.target(), g.target()))
    throw Error(ErrorKind::BimoduleMismatch, "is_homotopic: morphisms have different source or target");
  for (const auto* m : {&f, &g}) {
    auto r = is_closed(*m);
    if (!r.closed) throw Error(ErrorKind::NotClosed, "is_homotopic: " + r.message);
  }
  HomotopyResult result;
  result.cap = cap;
  const TypeDABimodule& M = f.source();
  const TypeDABimodule& N = f.target();
  Table rhs = add_tables(f.table(), g.table());
  if (rhs.empty()) {
    result.found = true;
    result.witness = zero_morphism(f.source_ptr(), f.target_ptr());
    result.message = "F = G; zero witness";
    return result;
  }

  std::vector<Unknown> unknowns = enumerate_unknowns(M, N, cap, options.strictly_unital);
  result.unknowns = unknowns.size();

  // Column j lists the (key, term) rows hit by d of unknown j.
  std::vector<std::vector<std::pair<Key, Term>>> columns(unknowns.size());
  std::size_t chunks = default_chunk_count(unknowns.size());
  parallel_chunks(
      unknowns.size(),
      [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
          Accumulator acc;
          push_entry(M, N, unknowns[j].key, Span{unknowns[j].term}, acc);
          for (auto& [k, span] : acc.finish())
            for (const auto& t : span) columns[j].emplace_back(k, t);
        }
      },
      chunks);

  std::unordered_map<Key, std::map<Term, std::size_t>, KeyHash> row_index;
  std::size_t rows = 0;
  auto row_of = [&](const Key& k, const Term& t) {
    auto& m = row_index[k];
    auto [it, fresh] = m.emplace(t, rows);
    if (fresh) ++rows;
    return it->second;
  };
  std::vector<std::vector<std::size_t>> col_rows(unknowns.size());
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (const auto& [k, t] : columns[j]) col_rows[j].push_back(row_of(k, t));
  columns.clear();
  std::vector<std::size_t> target_rows;
  for (const auto& [k, span] : rhs)
    for (const auto& t : span) target_rows.push_back(row_of(k, t));
  result.equations = rows;

  // Independent blocks: rows and columns linked through nonzero entries.
  UnionFind uf(rows + unknowns.size());
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (auto r : col_rows[j]) uf.unite(r, rows + j);

  std::map<std::size_t, std::vector<std::size_t>> block_cols, block_rows;
  for (std::size_t j = 0; j < unknowns.size(); ++j) block_cols[uf.find(rows + j)].push_back(j);
  for (std::size_t r = 0; r < rows; ++r) block_rows[uf.find(r)].push_back(r);
  std::map<std::size_t, std::vector<std::size_t>> block_targets;
  for (auto r : target_rows) block_targets[uf.find(r)].push_back(r);

  std::vector<std::size_t> chosen;
  for (const auto& [root, targets] : block_targets) {
    const auto& rlist = block_rows[root];
    auto cit = block_cols.find(root);
    if (cit == block_cols.end()) {
      result.message = "no table entry of arity <= " + std::to_string(cap) + " reaches the difference";
      return result;
    }
    const auto& clist = cit->second;
    std::unordered_map<std::size_t, std::size_t> local_row;
    for (std::size_t i = 0; i < rlist.size(); ++i) local_row[rlist[i]] = i;
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (std::size_t c = 0; c < clist.size(); ++c) {
      std::vector<std::size_t> rs;
      for (auto r : col_rows[clist[c]]) rs.push_back(local_row.at(r));
      for (auto r : reduce_mod2(std::move(rs))) entries.emplace_back(r, c);
    }
    std::vector<std::size_t> t;
    for (auto r : targets) t.push_back(local_row.at(r));
    auto x = f2::solve(f2::F2Matrix(rlist.size(), clist.size(), entries), f2::F2Vector(std::move(t)));
    if (!x) {
      result.message = "no witness of arity <= " + std::to_string(cap);
      return result;
    }
    for (auto c : x->support()) chosen.push_back(clist[c]);
  }

  Accumulator acc;
  for (auto j : chosen) acc.add(unknowns[j].key, unknowns[j].term);
  DAMorphism h(f.source_ptr(), f.target_ptr(), acc.finish());
  if (morphism_differential_table(h) != rhs)
    throw std::logic_error("is_homotopic: solved witness fails verification");
  result.found = true;
  result.witness = std::move(h);
  result.message = "witness with " + std::to_string(result.witness->table().size()) + " entries, arity " +
                   std::to_string(result.witness->arity_bound());
  return result;
}

std::vector<f2::F2Vector> homology_representatives(const f2::F2Matrix& d) {
  std::vector<std::pair<std::size_t, std::size_t>> span_entries = d.entries();
  std::size_t cols = d.cols();
  std::vector<f2::F2Vector> reps;
  std::size_t current = f2::rank(d);
  for (const auto& z : f2::kernel_basis(d)) {
    auto trial = span_entries;
    for (auto r : z.support()) trial.emplace_back(r, cols);
    std::size_t rk = f2::rank(f2::F2Matrix(d.rows(), cols + 1, trial));
    if (rk > current) {
      span_entries = std::move(trial);
      ++cols;
      current = rk;
      reps.push_back(z);
    }
  }
  return reps;
}

namespace {

f2::F2Matrix arity_zero_map(const DAMorphism& f, const ArityZeroComplex& cm, const ArityZeroComplex& cn) {
  const DGAlgebra& A = f.source().left_algebra();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < cn.basis.size(); ++i) index[{cn.basis[i].second, cn.basis[i].first}] = i;
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t j = 0; j < cm.basis.size(); ++j) {
    auto [b, x] = cm.basis[j];
    std::vector<std::size_t> image;
    for (const auto& t : f.entry(Key{static_cast<std::uint32_t>(x), {}}))
      for (auto p : A.mul(b, t.alg)) image.push_back(index.at({t.gen, p}));
    for (auto r : reduce_mod2(std::move(image))) entries.emplace_back(r, j);
  }
  return f2::F2Matrix(cn.basis.size(), cm.basis.size(), entries);
}

}  // namespace

f2::F2Matrix induced_on_homology(const DAMorphism& f) {
  if (auto r = is_closed(f); !r.closed) throw Error(ErrorKind::NotClosed, "induced_on_homology: " + r.message);
  auto cm = arity_zero_complex(f.source());
  auto cn = arity_zero_complex(f.target());
  f2::F2Matrix phi = arity_zero_map(f, cm, cn);
  auto reps_m = homology_representatives(cm.boundary);
  auto reps_n = homology_representatives(cn.boundary);
  // Coordinates in the basis [im d_N | reps_N]; only the reps part is unique.
  auto entries = cn.boundary.entries();
  const std::size_t nb = cn.boundary.cols();
  for (std::size_t i = 0; i < reps_n.size(); ++i)
    for (auto r : reps_n[i].support()) entries.emplace_back(r, nb + i);
  f2::F2Matrix basis(cn.boundary.rows(), nb + reps_n.size(), entries);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < reps_m.size(); ++j) {
    auto x = f2::solve(basis, phi.apply(reps_m[j]));
    if (!x) throw std::logic_error("induced_on_homology: image is not a cycle");
    for (auto c : x->support())
      if (c >= nb) out.emplace_back(c - nb, j);
  }
  return f2::F2Matrix(reps_n.size(), reps_m.size(), out);
}

bool is_naive_quasi_iso(const DAMorphism& f) {
  auto m = induced_on_homology(f);
  return m.rows() == m.cols() && f2::rank(m) == m.rows();
}

BimodulePtr cone(const DAMorphism& f, std::string name) {
  if (auto r = is_closed(f); !r.closed) throw Error(ErrorKind::NotClosed, "cone: " + r.message);
  const TypeDABimodule& M = f.source();
  const TypeDABimodule& N = f.target();
  const auto shift = static_cast<std::uint32_t>(M.size());
  std::vector<Generator> gens;
  for (const auto& g : M.generators()) gens.push_back({g.name + "'", g.left, g.right});
  for (const auto& g : N.generators()) gens.push_back(g);
  Table d1;
  for (const auto& [k, span] : M.d1()) d1[k] = span;
  for (const auto& [k, span] : N.d1()) {
    Span s;
    for (auto t : span) s.push_back({t.alg, t.gen + shift});
    d1[Key{k.gen + shift, k.inputs}] = s;
  }
  for (const auto& [k, span] : f.table()) {
    Span s;
    for (auto t : span) s.push_back({t.alg, t.gen + shift});
    auto& slot = d1[k];
    add_into(slot, s);
  }
  return make_bimodule(std::move(name), M.left_ptr(), M.right_ptr(), std::move(gens), std::move(d1));
}

}  // namespace bordered
