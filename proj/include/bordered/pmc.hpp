#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bordered {

using PointPair = std::pair<int, int>;

/// Outcome of the two validity criteria. `surgery_components == 1` is the
/// authoritative test; the handleslide search is reported alongside it.
struct PmcValidation {
  std::size_t surgery_components = 0;
  bool surgery_valid = false;
  // nullopt when the search exceeded its state budget.
  std::optional<bool> handleslide_valid;
  std::size_t handleslide_states = 0;
  bool valid() const { return surgery_valid; }
  bool criteria_diverge() const {
    return handleslide_valid.has_value() && *handleslide_valid != surgery_valid;
  }
};

/// Pointed matched circle: points 1..4g in order after the basepoint, matched
/// into 2g pairs. Pairs are stored with the smaller point first and sorted by it.
class PointedMatchedCircle {
 public:
  int genus() const noexcept { return genus_; }
  int num_points() const noexcept { return 4 * genus_; }
  std::size_t num_pairs() const noexcept { return pairs_.size(); }
  const std::vector<PointPair>& pairs() const noexcept { return pairs_; }
  int partner(int point) const { return partner_.at(static_cast<std::size_t>(point)); }
  /// Index of the pair containing `point` in pairs().
  std::size_t pair_of(int point) const { return pair_index_.at(static_cast<std::size_t>(point)); }

  std::string to_string() const;

  friend bool operator==(const PointedMatchedCircle& a, const PointedMatchedCircle& b) {
    return a.genus_ == b.genus_ && a.pairs_ == b.pairs_;
  }

 private:
  friend PointedMatchedCircle make_pmc(int, const std::vector<PointPair>&);
  friend PointedMatchedCircle make_unchecked_pmc(int, const std::vector<PointPair>&);
  int genus_ = 0;
  std::vector<PointPair> pairs_;
  std::vector<int> partner_;           // indexed by point, slot 0 unused
  std::vector<std::size_t> pair_index_;  // indexed by point
};

/// Throws Error(MalformedMatching) when the pairs do not partition 1..4g and
/// Error(DegenerateMatching) when surgery yields more than one circle.
PointedMatchedCircle make_pmc(int genus, const std::vector<PointPair>& pairs);

/// Partition check only; used to inspect invalid matchings.
PointedMatchedCircle make_unchecked_pmc(int genus, const std::vector<PointPair>& pairs);

std::size_t surgery_component_count(const PointedMatchedCircle& c);

/// Breadth-first search over arc slides for a configuration with two matched
/// points adjacent. Gives up (nullopt) after `state_budget` configurations.
std::optional<bool> handleslide_valid(const PointedMatchedCircle& c,
                                      std::size_t state_budget = 200000,
                                      std::size_t* states_seen = nullptr);

PmcValidation validate_report(const PointedMatchedCircle& c);
bool validate(const PointedMatchedCircle& c);

/// i -> 4g+1-i.
PointedMatchedCircle reverse(const PointedMatchedCircle& c);

}  // namespace bordered
