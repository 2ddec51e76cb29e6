#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bordered/bimodule.hpp"
#include "bordered/morphism.hpp"

namespace bordered {

struct BoxOptions {
  /// Upper bound on path-extension steps per product; exceeding it raises
  /// Error(NonConverging).
  std::size_t step_budget = 10'000'000;
};

/// N (x) M over (A1, A3) for N over (A1, A2) and M over (A2, A3). Generators
/// are the pairs "x|y" with R(x) = L(y), ordered by (x, y). The table is
///   D1((x,y), a) = sum_i D1^N(x, c1..ci) (x) y'  over  D_i^M(y, a) = c1..ci (x) y',
/// plus D1^N(x, []) (x) y when a is empty. Throws Error(MiddleAlgebraMismatch).
BimodulePtr box_bimodules(const BimodulePtr& n, const BimodulePtr& m, const BoxOptions& options = {});

/// F (x) I for F: N -> N'.
DAMorphism box_morphism_left(const DAMorphism& f, const BimodulePtr& m, const BoxOptions& options = {});
/// I (x) G for G: M -> M': paths through M, then G once, then M'.
DAMorphism box_morphism_right(const BimodulePtr& n, const DAMorphism& g, const BoxOptions& options = {});
/// (I (x) G) o (F (x) I).
DAMorphism box_morphisms(const DAMorphism& f, const DAMorphism& g, const BoxOptions& options = {});

/// Renames generators of `a` with `rename` and compares with `b` (same
/// algebras, same idempotents, same table). Generator order may differ.
bool equal_under_renaming(const TypeDABimodule& a, const TypeDABimodule& b,
                          const std::function<std::string(const std::string&)>& rename);

/// Bijection from generators of `a` to generators of `b` carrying one table to
/// the other, found by backtracking over idempotent classes.
std::optional<std::vector<std::uint32_t>> find_relabeling(const TypeDABimodule& a, const TypeDABimodule& b);

/// Rewrites a morphism's source and target along relabelings onto
/// isomorphic bimodules.
DAMorphism transport(const DAMorphism& f, const BimodulePtr& new_source, const std::vector<std::uint32_t>& source_map,
                     const BimodulePtr& new_target, const std::vector<std::uint32_t>& target_map);

}  // namespace bordered
