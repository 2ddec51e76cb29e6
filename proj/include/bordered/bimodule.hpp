#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bordered/dga.hpp"
#include "bordered/f2.hpp"
#include "bordered/table.hpp"

namespace bordered {

struct Generator {
  std::string name;
  std::size_t left = 0;   // idempotent basis index in the left algebra
  std::size_t right = 0;  // idempotent basis index in the right algebra
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Type DA bimodule over (A1, A2), stored through its D1 table:
///   D1(x, a1..aj) = sum of b (x) y,  b in A1, y a generator.
/// The products are m_{n+1}(b (x) x, a) = b * D1(x, a).
class TypeDABimodule {
 public:
  TypeDABimodule(std::string name, AlgebraPtr left, AlgebraPtr right, std::vector<Generator> gens,
                 Table d1);

  const std::string& name() const noexcept { return name_; }
  const DGAlgebra& left_algebra() const noexcept { return *left_; }
  const DGAlgebra& right_algebra() const noexcept { return *right_; }
  const AlgebraPtr& left_ptr() const noexcept { return left_; }
  const AlgebraPtr& right_ptr() const noexcept { return right_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  std::optional<std::size_t> find(const std::string& gen) const;
  const Table& d1() const noexcept { return d1_; }
  std::size_t arity_bound() const noexcept { return arity_; }

  /// Entries D1(x, inputs) = ... b (x) y, grouped by y.
  struct Incoming {
    const Key* key;
    std::uint32_t alg;
  };
  const std::vector<Incoming>& into(std::size_t y) const { return into_.at(y); }

  const Span& entry(const Key& key) const;

  std::string render_term(const Term& t) const;
  std::string render_span(const Span& s) const;
  std::string render_key(const Key& k) const;

 private:
  std::string name_;
  AlgebraPtr left_, right_;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;
  Table d1_;
  std::size_t arity_ = 0;
  std::vector<std::vector<Incoming>> into_;
};

using BimodulePtr = std::shared_ptr<const TypeDABimodule>;

/// Validates symbols and left-idempotent compatibility of every output term.
/// Throws Error(UnknownSymbol) or Error(IdempotentMismatch). The structure
/// relation is not checked here.
BimodulePtr make_bimodule(std::string name, AlgebraPtr left, AlgebraPtr right, std::vector<Generator> gens,
                          Table d1);

/// Structural equality: same algebras (by identity), generators and tables.
bool same_bimodule(const TypeDABimodule& a, const TypeDABimodule& b);

/// Element of A1^{(x)n} (x) generators.
using Chain = std::pair<Inputs, std::uint32_t>;
using ChainSpan = std::vector<Chain>;  // sorted, reduced mod 2

enum class DnOrder {
  LastFirst,  // D_n = (I (x) D1) o D_{n-1}
  FirstPeel,  // D_n = (I (x) D_{n-1}) o D1
};

/// Throws Error(InvalidArgument) for n = 0.
ChainSpan compute_Dn(const TypeDABimodule& m, std::uint32_t x, const Inputs& inputs, std::size_t n,
                     DnOrder order = DnOrder::LastFirst);

struct StructureReport {
  bool passed = true;
  std::size_t bound = 0;  // 2K: the largest input length that can be nonzero
  std::size_t nonzero_entries = 0;
  std::optional<Key> witness;
  Span value;
  std::string message;
};

/// Evaluates (mu1 (x) I) D1 + (mu2 (x) I) D2 + D1 (I (x) m) everywhere. The
/// evaluation is driven by table entries, so every input sequence that can be
/// nonzero is covered; the reported witness is the first nonzero entry in
/// canonical key order.
StructureReport check_structure(const TypeDABimodule& m);
/// The full relation value as a table (empty iff the relation holds).
Table structure_relation(const TypeDABimodule& m);

BimodulePtr identity_bimodule(AlgebraPtr a, std::string name = "");

struct ArityZeroComplex {
  std::vector<std::pair<std::size_t, std::size_t>> basis;  // (b, x), ordered by (x, b)
  f2::F2Matrix boundary;                                   // column j = d(basis[j])
};

ArityZeroComplex arity_zero_complex(const TypeDABimodule& m);
std::size_t homology(const TypeDABimodule& m);

}  // namespace bordered
