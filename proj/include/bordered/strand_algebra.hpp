#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bordered/dga.hpp"
#include "bordered/pmc.hpp"

namespace bordered {

using Strand = std::pair<int, int>;  // s -> t with s < t

/// Generator of the strand algebra. Horizontal pairs are stored grouped: a
/// horizontal on pair P stands for the sum over both points of P.
struct StrandDiagram {
  std::vector<Strand> strands;            // sorted
  std::vector<std::size_t> horizontals;   // pair indices, sorted

  std::size_t occupied() const { return strands.size() + horizontals.size(); }
  friend bool operator==(const StrandDiagram&, const StrandDiagram&) = default;
  friend std::strong_ordering operator<=>(const StrandDiagram& a, const StrandDiagram& b);
};

using AlgebraElement = std::vector<StrandDiagram>;  // sorted, no repeats

/// Bitmask of occupied pairs.
std::uint64_t source_idempotent(const PointedMatchedCircle& c, const StrandDiagram& a);
std::uint64_t target_idempotent(const PointedMatchedCircle& c, const StrandDiagram& a);

/// Checks the diagram invariants against `c`.
bool is_valid_diagram(const PointedMatchedCircle& c, const StrandDiagram& a);

std::vector<StrandDiagram> enumerate_basis(const PointedMatchedCircle& c);

AlgebraElement multiply(const PointedMatchedCircle& c, const StrandDiagram& a, const StrandDiagram& b);
AlgebraElement differential(const PointedMatchedCircle& c, const StrandDiagram& a);

/// Canonical text: strands as r[s-t], then horizontals as h(p q). The empty
/// diagram is "h()".
std::string diagram_name(const PointedMatchedCircle& c, const StrandDiagram& a);
/// Idempotent alias "i" + pair indices ("i_" for the empty idempotent).
std::string idempotent_alias(const PointedMatchedCircle& c, std::uint64_t mask);
/// Parses the canonical form or an idempotent alias. Throws Error(UnknownSymbol).
StrandDiagram parse_diagram(const PointedMatchedCircle& c, const std::string& text);

DGAlgebra build_dga(const PointedMatchedCircle& c, const std::string& name = "A");

}  // namespace bordered
