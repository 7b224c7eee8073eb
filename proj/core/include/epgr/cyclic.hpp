#pragma once

#include <optional>
#include <vector>

#include "epgr/group.hpp"

namespace epgr {

struct CyclicEntry {
  int generator = 0;        // smallest element index generating `members`
  std::vector<int> members; // sorted, contains 0
};

// A collection of cyclic subgroups covering the group, stored in canonical
// order (size descending, then generator ascending) with all pairwise
// intersections precomputed. Normally produced by maximal_cyclic_subgroups;
// the public constructor accepts synthetic collections so that structural
// routines can be exercised on inputs no small group realizes.
class CyclicDecomposition {
 public:
  CyclicDecomposition(int group_order, std::vector<CyclicEntry> entries);

  int group_order() const { return n_; }
  int size() const { return static_cast<int>(entries_.size()); }  // m
  const CyclicEntry& entry(int i) const { return entries_[i]; }
  const std::vector<CyclicEntry>& entries() const { return entries_; }
  // Sorted intersection of members(i) and members(j); intersection(i, i) is
  // members(i) itself.
  const std::vector<int>& intersection(int i, int j) const {
    return inter_[static_cast<size_t>(i) * entries_.size() + j];
  }

 private:
  int n_ = 0;
  std::vector<CyclicEntry> entries_;
  std::vector<std::vector<int>> inter_;
};

// All maximal cyclic subgroups of g (every cyclic subgroup lies inside one of
// them), canonically ordered.
CyclicDecomposition maximal_cyclic_subgroups(const FiniteGroup& g);

struct IcsExclusion {
  int index = 0;    // entry that fails the independence test
  int other = 0;    // smallest partner with a nontrivial meet
  int witness = 0;  // smallest shared non-identity element
};

struct IcsReport {
  std::vector<int> ics_indices;     // entries meeting every other entry in {e} only
  int icn = 0;                      // ics_indices.size()
  std::vector<int> invmax_indices;  // entries of size 2 (maximal involutions)
  std::vector<IcsExclusion> exclusions;
};

IcsReport ics_report(const CyclicDecomposition& d);

// Upper-triangular matrix of one witness element per entry pair.
struct WitnessMatrix {
  int m = 0;
  std::vector<int> h;  // m*(m-1)/2 entries, pair (i,j) with i<j at pair_index

  static int pair_index(int m, int i, int j);
  int at(int i, int j) const { return h[pair_index(m, i, j)]; }
};

// One non-identity witness per pair, all m*(m-1)/2 values pairwise distinct.
// Backtracking over pairs in lexicographic order; nullopt when impossible.
std::optional<WitnessMatrix> distinct_witnesses(const CyclicDecomposition& d);

// Same selection problem on raw candidate sets (pair order lexicographic);
// exposed so the search can be tested away from any group.
std::optional<WitnessMatrix> select_distinct_witnesses(
    int m, const std::vector<std::vector<int>>& per_pair_candidates);

}  // namespace epgr
