#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bordered/pmc.hpp"

namespace bordered {

/// GF(2) combination of basis indices, sorted, no repeats.
using Elem = std::vector<std::size_t>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// XOR `b` into `a`; both sorted.
void add_into(Elem& a, const Elem& b);
/// Sort and cancel pairs.
Elem reduce_mod2(std::vector<std::size_t> terms);

struct DGAlgebraData {
  std::string name;
  std::vector<std::string> names;
  std::vector<std::size_t> idempotents;  // basis indices
  std::vector<std::tuple<std::size_t, std::size_t, Elem>> mult;
  std::vector<std::pair<std::size_t, Elem>> diff;
  // Optional; derived from the multiplication table when left empty.
  std::vector<std::size_t> source_idem;
  std::vector<std::size_t> target_idem;
  std::vector<std::pair<std::string, std::size_t>> aliases;
};

/// Finite-dimensional DGA over GF(2) with an explicit basis. Immutable after
/// construction; all tables are indexed by basis position.
class DGAlgebra {
 public:
  explicit DGAlgebra(DGAlgebraData data);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& basis_name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  /// Throws Error(UnknownSymbol).
  std::size_t index_of(const std::string& name) const;
  std::optional<std::size_t> find(const std::string& name) const;

  const std::vector<std::size_t>& idempotents() const noexcept { return idempotents_; }
  bool is_idempotent(std::size_t i) const { return is_idem_.at(i); }
  /// Basis index of the idempotent fixing `i` on the left / right, or npos.
  std::size_t source(std::size_t i) const { return source_.at(i); }
  std::size_t target(std::size_t i) const { return target_.at(i); }

  const Elem& mul(std::size_t a, std::size_t b) const;
  const Elem& d(std::size_t a) const { return diff_.at(a); }
  Elem mul(const Elem& a, const Elem& b) const;
  Elem d(const Elem& a) const;

  /// Pairs (a, b) with c in a*b.
  const std::vector<std::pair<std::size_t, std::size_t>>& mul_preimages(std::size_t c) const {
    return mul_pre_.at(c);
  }
  /// a with c in d(a).
  const std::vector<std::size_t>& diff_preimages(std::size_t c) const { return diff_pre_.at(c); }
  /// Basis elements whose source idempotent is `idem`.
  const std::vector<std::size_t>& starting_at(std::size_t idem) const;

  /// The strand-algebra circle this algebra was built from, if any.
  const std::optional<PointedMatchedCircle>& circle() const noexcept { return circle_; }
  void set_circle(PointedMatchedCircle c) { circle_ = std::move(c); }

  std::string render(const Elem& e) const;
  /// Raw tables, for emitting and comparing.
  const std::unordered_map<std::uint64_t, Elem>& mult_table() const noexcept { return mult_; }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> idempotents_;
  std::vector<bool> is_idem_;
  std::vector<std::size_t> source_, target_;
  std::unordered_map<std::uint64_t, Elem> mult_;
  std::vector<Elem> diff_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> mul_pre_;
  std::vector<std::vector<std::size_t>> diff_pre_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_source_;
  std::optional<PointedMatchedCircle> circle_;
};

using AlgebraPtr = std::shared_ptr<const DGAlgebra>;

struct CheckOutcome {
  std::string name;
  bool passed = true;
  bool exhaustive = true;
  std::size_t instances = 0;
  std::string witness;  // empty on pass
};

struct DgaReport {
  std::vector<CheckOutcome> checks;
  bool passed() const;
};

/// d^2 = 0 and the idempotent axioms are always checked exhaustively. Leibniz
/// (over pairs) and associativity (over triples) are exhaustive when the tuple
/// count fits in `sample_budget`; otherwise `sample_budget` composable tuples
/// are drawn uniformly with a fixed seed.
DgaReport verify_dga(const DGAlgebra& a, std::size_t sample_budget, std::uint64_t seed = 0x5eed);

}  // namespace bordered
