#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "bordered/bimodule.hpp"
#include "bordered/f2.hpp"

namespace bordered {

/// Type DA morphism M -> N given by its table
///   F(x, a1..aj) = sum of b (x) y,  x in M, y in N.
/// Closedness is a property checked on demand, so the same type carries
/// homotopies.
class DAMorphism {
 public:
  DAMorphism(BimodulePtr source, BimodulePtr target, Table table);

  const TypeDABimodule& source() const noexcept { return *source_; }
  const TypeDABimodule& target() const noexcept { return *target_; }
  const BimodulePtr& source_ptr() const noexcept { return source_; }
  const BimodulePtr& target_ptr() const noexcept { return target_; }
  const Table& table() const noexcept { return table_; }
  std::size_t arity_bound() const noexcept { return arity_; }
  bool is_zero() const noexcept { return table_.empty(); }
  const Span& entry(const Key& key) const;

  std::string render_span(const Span& s) const;
  std::string render_key(const Key& k) const { return source_->render_key(k); }

 private:
  BimodulePtr source_, target_;
  Table table_;
  std::size_t arity_ = 0;
};

/// Validates symbols and idempotent compatibility L(x) * b * L(y) = b.
/// Throws Error(UnknownSymbol), Error(IdempotentMismatch) or
/// Error(BimoduleMismatch) when the two bimodules have different algebras.
DAMorphism make_morphism(BimodulePtr source, BimodulePtr target, Table table);

DAMorphism zero_morphism(BimodulePtr source, BimodulePtr target);
DAMorphism identity_morphism(BimodulePtr m);
/// Throws Error(BimoduleMismatch) unless the shapes agree.
DAMorphism add(const DAMorphism& f, const DAMorphism& g);

/// dH: mu1 on outputs, H then D1 of the target, D1 of the source then H,
/// and H after the bar differential (mu1 on one input or mu2 on two
/// neighbouring inputs).
Table morphism_differential_table(const DAMorphism& h);
DAMorphism morphism_differential(const DAMorphism& h);

struct ClosedReport {
  bool closed = true;
  std::optional<Key> witness;
  Span value;
  std::string message;
};
ClosedReport is_closed(const DAMorphism& f);

/// G o F. Throws Error(BimoduleMismatch) unless target(F) = source(G).
DAMorphism compose(const DAMorphism& g, const DAMorphism& f);

struct HomotopyOptions {
  /// Restrict unknowns to entries whose inputs contain no idempotents.
  bool strictly_unital = true;
};

struct HomotopyResult {
  bool found = false;
  std::size_t cap = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::optional<DAMorphism> witness;  // dH = F + G, verified exactly
  std::string message;
};

/// Searches for H with dH = F + G among tables of arity <= cap. Throws
/// Error(BimoduleMismatch) for different shapes and Error(NotClosed) when F or
/// G is not closed. A negative answer only rules out witnesses within the cap.
HomotopyResult is_homotopic(const DAMorphism& f, const DAMorphism& g, std::size_t cap,
                            HomotopyOptions options = {});

/// Representatives for the homology of a square differential: columns
/// extending a basis of im(d) to a basis of ker(d), chosen greedily in
/// kernel_basis order.
std::vector<f2::F2Vector> homology_representatives(const f2::F2Matrix& d);

/// Matrix of the arity-zero part of F on homology (rows: H(target),
/// columns: H(source)). Throws Error(NotClosed).
f2::F2Matrix induced_on_homology(const DAMorphism& f);
/// Whether induced_on_homology(F) is invertible. Throws Error(NotClosed).
bool is_naive_quasi_iso(const DAMorphism& f);

/// Mapping cone of a closed F: M -> N. Source generators get a trailing "'".
BimodulePtr cone(const DAMorphism& f, std::string name);

}  // namespace bordered
