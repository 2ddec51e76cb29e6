#include "bordered/bimodule.hpp"

#include <algorithm>
#include <map>

#include "bordered/errors.hpp"
#include "bordered/parallel.hpp"

namespace bordered {

namespace {
const Span kEmptySpan;
}

TypeDABimodule::TypeDABimodule(std::string name, AlgebraPtr left, AlgebraPtr right, std::vector<Generator> gens,
                               Table d1)
    : name_(std::move(name)), left_(std::move(left)), right_(std::move(right)), gens_(std::move(gens)),
      d1_(std::move(d1)) {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!index_.emplace(gens_[i].name, i).second)
      throw Error(ErrorKind::DuplicateName, "bimodule " + name_ + ": generator '" + gens_[i].name + "' repeated");
  for (auto it = d1_.begin(); it != d1_.end();) {
    if (it->second.empty())
      it = d1_.erase(it);
    else
      ++it;
  }
  arity_ = bordered::arity_bound(d1_);
  into_.assign(gens_.size(), {});
  for (const auto& [key, span] : d1_)
    for (const auto& t : span)
      if (t.gen < gens_.size()) into_[t.gen].push_back({&key, t.alg});
}

std::optional<std::size_t> TypeDABimodule::find(const std::string& gen) const {
  auto it = index_.find(gen);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Span& TypeDABimodule::entry(const Key& key) const {
  auto it = d1_.find(key);
  return it == d1_.end() ? kEmptySpan : it->second;
}

std::string TypeDABimodule::render_term(const Term& t) const {
  return left_->basis_name(t.alg) + " : " + gens_.at(t.gen).name;
}

std::string TypeDABimodule::render_span(const Span& s) const {
  if (s.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " + ";
    out += render_term(s[i]);
  }
  return out;
}

std::string TypeDABimodule::render_key(const Key& k) const {
  std::string out = gens_.at(k.gen).name + " [";
  for (std::size_t i = 0; i < k.inputs.size(); ++i) {
    if (i) out += ' ';
    out += right_->basis_name(k.inputs[i]);
  }
  return out + "]";
}

BimodulePtr make_bimodule(std::string name, AlgebraPtr left, AlgebraPtr right, std::vector<Generator> gens,
                          Table d1) {
  if (!left || !right) throw Error(ErrorKind::InvalidArgument, "bimodule " + name + ": missing algebra");
  for (const auto& g : gens) {
    if (g.left >= left->size() || !left->is_idempotent(g.left))
      throw Error(ErrorKind::UnknownSymbol, "bimodule " + name + ": left idempotent of " + g.name + " is not an idempotent");
    if (g.right >= right->size() || !right->is_idempotent(g.right))
      throw Error(ErrorKind::UnknownSymbol, "bimodule " + name + ": right idempotent of " + g.name + " is not an idempotent");
  }
  for (const auto& [key, span] : d1) {
    if (key.gen >= gens.size()) throw Error(ErrorKind::UnknownSymbol, "bimodule " + name + ": unknown generator in table");
    for (auto a : key.inputs)
      if (a >= right->size()) throw Error(ErrorKind::UnknownSymbol, "bimodule " + name + ": unknown input element");
    if (!std::is_sorted(span.begin(), span.end()) ||
        std::adjacent_find(span.begin(), span.end()) != span.end())
      throw Error(ErrorKind::InvalidArgument, "bimodule " + name + ": span not reduced");
    for (const auto& t : span) {
      if (t.gen >= gens.size() || t.alg >= left->size())
        throw Error(ErrorKind::UnknownSymbol, "bimodule " + name + ": unknown output term");
      const std::size_t lx = gens[key.gen].left, ly = gens[t.gen].left;
      if (left->mul(left->mul(Elem{lx}, Elem{t.alg}), Elem{ly}) != Elem{t.alg})
        throw Error(ErrorKind::IdempotentMismatch,
                    "bimodule " + name + ": output " + left->basis_name(t.alg) + " : " + gens[t.gen].name +
                        " of " + gens[key.gen].name + " violates " + left->basis_name(lx) + " * b * " +
                        left->basis_name(ly) + " = b");
    }
  }
  return std::make_shared<const TypeDABimodule>(std::move(name), std::move(left), std::move(right), std::move(gens),
                                                std::move(d1));
}

bool same_bimodule(const TypeDABimodule& a, const TypeDABimodule& b) {
  if (&a == &b) return true;
  return a.left_ptr() == b.left_ptr() && a.right_ptr() == b.right_ptr() && a.generators() == b.generators() &&
         a.d1() == b.d1();
}

namespace {

ChainSpan reduce_chains(std::vector<Chain> v) {
  std::sort(v.begin(), v.end());
  ChainSpan out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1U) out.push_back(v[i]);
    i = j;
  }
  return out;
}

Inputs slice(const Inputs& in, std::size_t b, std::size_t e) {
  return Inputs(in.begin() + static_cast<std::ptrdiff_t>(b), in.begin() + static_cast<std::ptrdiff_t>(e));
}

}  // namespace

ChainSpan compute_Dn(const TypeDABimodule& m, std::uint32_t x, const Inputs& inputs, std::size_t n, DnOrder order) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "compute_Dn: n must be at least 1");
  std::vector<Chain> out;
  if (n == 1) {
    for (const auto& t : m.entry(Key{x, inputs})) out.push_back({Inputs{t.alg}, t.gen});
    return reduce_chains(std::move(out));
  }
  for (std::size_t j = 0; j <= inputs.size(); ++j) {
    if (order == DnOrder::LastFirst) {
      for (const auto& [chain, y] : compute_Dn(m, x, slice(inputs, 0, j), n - 1, order)) {
        for (const auto& t : m.entry(Key{y, slice(inputs, j, inputs.size())})) {
          Inputs c = chain;
          c.push_back(t.alg);
          out.push_back({std::move(c), t.gen});
        }
      }
    } else {
      for (const auto& t : m.entry(Key{x, slice(inputs, 0, j)})) {
        for (const auto& [chain, z] : compute_Dn(m, t.gen, slice(inputs, j, inputs.size()), n - 1, order)) {
          Inputs c{t.alg};
          c.insert(c.end(), chain.begin(), chain.end());
          out.push_back({std::move(c), z});
        }
      }
    }
  }
  return reduce_chains(std::move(out));
}

Table structure_relation(const TypeDABimodule& m) {
  const DGAlgebra& A1 = m.left_algebra();
  const DGAlgebra& A2 = m.right_algebra();
  std::vector<const std::pair<const Key, Span>*> entries;
  for (const auto& e : m.d1()) entries.push_back(&e);

  std::size_t chunks = default_chunk_count(entries.size());
  std::vector<Table> partial(chunks);
  parallel_chunks(
      entries.size(),
      [&](std::size_t c, std::size_t b, std::size_t e) {
        Accumulator acc;
        for (std::size_t i = b; i < e; ++i) {
          const Key& key = entries[i]->first;
          const Span& span = entries[i]->second;
          for (const auto& t : span) {
            // mu1 on the output.
            for (auto db : A1.d(t.alg)) acc.add(key, Term{static_cast<std::uint32_t>(db), t.gen});
            // mu2 of two consecutive D1 applications.
            auto [lo, hi] = entries_of(m.d1(), t.gen);
            for (auto it = lo; it != hi; ++it) {
              Key k{key.gen, key.inputs};
              k.inputs.insert(k.inputs.end(), it->first.inputs.begin(), it->first.inputs.end());
              for (const auto& u : it->second)
                for (auto p : A1.mul(t.alg, u.alg)) acc.add(k, Term{static_cast<std::uint32_t>(p), u.gen});
            }
          }
          // D1 after the bar differential on the inputs.
          for (std::size_t pos = 0; pos < key.inputs.size(); ++pos) {
            const auto c_k = key.inputs[pos];
            for (auto a : A2.diff_preimages(c_k)) {
              Key k = key;
              k.inputs[pos] = static_cast<std::uint32_t>(a);
              acc.add(k, span);
            }
            for (auto [a, a2] : A2.mul_preimages(c_k)) {
              Key k{key.gen, {}};
              k.inputs.reserve(key.inputs.size() + 1);
              k.inputs.insert(k.inputs.end(), key.inputs.begin(), key.inputs.begin() + static_cast<std::ptrdiff_t>(pos));
              k.inputs.push_back(static_cast<std::uint32_t>(a));
              k.inputs.push_back(static_cast<std::uint32_t>(a2));
              k.inputs.insert(k.inputs.end(), key.inputs.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                              key.inputs.end());
              acc.add(k, span);
            }
          }
        }
        partial[c] = acc.finish();
      },
      chunks);
  Table out;
  for (auto& t : partial) out = add_tables(out, t);
  return out;
}

StructureReport check_structure(const TypeDABimodule& m) {
  StructureReport r;
  r.bound = 2 * m.arity_bound();
  Table rel = structure_relation(m);
  r.nonzero_entries = rel.size();
  if (!rel.empty()) {
    r.passed = false;
    r.witness = rel.begin()->first;
    r.value = rel.begin()->second;
    r.message = "structure relation fails at " + m.render_key(*r.witness) + ": " + m.render_span(r.value);
  }
  return r;
}

BimodulePtr identity_bimodule(AlgebraPtr a, std::string name) {
  if (name.empty()) name = "I(" + a->name() + ")";
  std::vector<Generator> gens;
  std::map<std::size_t, std::uint32_t> gen_of;
  for (auto i : a->idempotents()) {
    gen_of[i] = static_cast<std::uint32_t>(gens.size());
    gens.push_back({a->basis_name(i), i, i});
  }
  Table d1;
  for (auto i : a->idempotents()) {
    for (auto x : a->starting_at(i)) {
      auto it = gen_of.find(a->target(x));
      if (it == gen_of.end()) continue;
      d1[Key{gen_of.at(i), Inputs{static_cast<std::uint32_t>(x)}}].push_back(
          Term{static_cast<std::uint32_t>(x), it->second});
    }
  }
  return make_bimodule(std::move(name), a, a, std::move(gens), std::move(d1));
}

ArityZeroComplex arity_zero_complex(const TypeDABimodule& m) {
  const DGAlgebra& A = m.left_algebra();
  ArityZeroComplex out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;  // (x, b) -> position
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t b = 0; b < A.size(); ++b) {
      if (A.target(b) != m.generator(x).left) continue;
      index[{x, b}] = out.basis.size();
      out.basis.emplace_back(b, x);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t j = 0; j < out.basis.size(); ++j) {
    auto [b, x] = out.basis[j];
    std::vector<std::size_t> image;
    auto locate = [&](std::size_t gen, std::size_t alg) {
      auto it = index.find({gen, alg});
      if (it == index.end())
        throw Error(ErrorKind::IdempotentMismatch, "arity-zero complex of " + m.name() + ": " + A.basis_name(alg) +
                                                       " : " + m.generator(gen).name + " is not idempotent-compatible");
      return it->second;
    };
    for (auto db : A.d(b)) image.push_back(locate(x, db));
    for (const auto& t : m.entry(Key{static_cast<std::uint32_t>(x), {}}))
      for (auto p : A.mul(b, t.alg)) image.push_back(locate(t.gen, p));
    for (auto r : reduce_mod2(std::move(image))) entries.emplace_back(r, j);
  }
  out.boundary = f2::F2Matrix(out.basis.size(), out.basis.size(), entries);
  return out;
}

std::size_t homology(const TypeDABimodule& m) {
  auto c = arity_zero_complex(m);
  return f2::homology_dim(c.boundary, c.boundary);
}

}  // namespace bordered
