// Shared fixtures and generators for the test binaries.
#pragma once

#include <map>
#include <memory>
#include <random>
#include <vector>

#include "bordered/box.hpp"
#include "bordered/strand_algebra.hpp"

namespace testsupport {

using namespace bordered;

inline const PointedMatchedCircle& torus() {
  static const PointedMatchedCircle c = make_pmc(1, {{1, 3}, {2, 4}});
  return c;
}

inline AlgebraPtr torus_algebra() {
  static const AlgebraPtr a = std::make_shared<const DGAlgebra>(build_dga(torus(), "A_T"));
  return a;
}

inline BimodulePtr torus_identity() {
  static const BimodulePtr m = identity_bimodule(torus_algebra(), "I");
  return m;
}

/// Every idempotent-compatible (key, term) slot of arity <= max_arity with no
/// idempotent inputs: L(x) b L(y) = b and R(y) is where the inputs end.
inline std::vector<std::pair<Key, Term>> table_slots(const TypeDABimodule& m, const TypeDABimodule& n,
                                                     std::size_t max_arity) {
  const DGAlgebra& A1 = m.left_algebra();
  const DGAlgebra& A2 = m.right_algebra();
  std::vector<std::pair<Key, Term>> out;
  for (std::uint32_t x = 0; x < m.size(); ++x) {
    std::vector<Term> outs;
    for (std::uint32_t b = 0; b < A1.size(); ++b) {
      if (A1.source(b) != m.generator(x).left) continue;
      for (std::uint32_t y = 0; y < n.size(); ++y)
        if (n.generator(y).left == A1.target(b)) outs.push_back({b, y});
    }
    std::vector<Inputs> frontier{{}};
    std::vector<std::size_t> ends{m.generator(x).right};
    for (std::size_t len = 0; len <= max_arity; ++len) {
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (auto t : outs)
          if (n.generator(t.gen).right == ends[i]) out.push_back({Key{x, frontier[i]}, t});
      if (len == max_arity) break;
      std::vector<Inputs> next;
      std::vector<std::size_t> next_ends;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (std::uint32_t a = 0; a < A2.size(); ++a) {
          if (A2.is_idempotent(a) || A2.source(a) != ends[i]) continue;
          Inputs c = frontier[i];
          c.push_back(a);
          next.push_back(std::move(c));
          next_ends.push_back(A2.target(a));
        }
      }
      frontier = std::move(next);
      ends = std::move(next_ends);
    }
  }
  return out;
}

/// Random table with `count` distinct slots of arity <= max_arity.
inline DAMorphism random_morphism(const BimodulePtr& m, const BimodulePtr& n, std::size_t max_arity,
                                  std::size_t count, std::mt19937_64& rng) {
  auto slots = table_slots(*m, *n, max_arity);
  std::shuffle(slots.begin(), slots.end(), rng);
  Table t;
  for (std::size_t i = 0; i < std::min(count, slots.size()); ++i) t[slots[i].first].push_back(slots[i].second);
  for (auto& [k, s] : t) std::sort(s.begin(), s.end());
  return make_morphism(m, n, std::move(t));
}

/// Closed endomorphism Id + dH with H random of the given arity.
inline DAMorphism random_closed(const BimodulePtr& m, std::size_t h_arity, std::size_t count, std::mt19937_64& rng) {
  return add(identity_morphism(m), morphism_differential(random_morphism(m, m, h_arity, count, rng)));
}

}  // namespace testsupport
