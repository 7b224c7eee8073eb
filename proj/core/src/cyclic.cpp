#include "epgr/cyclic.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "epgr/error.hpp"

namespace epgr {

CyclicDecomposition::CyclicDecomposition(int group_order, std::vector<CyclicEntry> entries)
    : n_(group_order), entries_(std::move(entries)) {
  if (n_ < 1) throw Error(ErrorCode::BadParameter, "group order must be positive");
  if (entries_.empty()) throw Error(ErrorCode::BadParameter, "no entries");

  std::vector<char> covered(n_, 0);
  for (auto& ent : entries_) {
    std::sort(ent.members.begin(), ent.members.end());
    if (ent.members.empty() || ent.members.front() != 0) {
      throw Error(ErrorCode::BadParameter, "every entry must contain the identity");
    }
    if (std::adjacent_find(ent.members.begin(), ent.members.end()) != ent.members.end()) {
      throw Error(ErrorCode::BadParameter, "entry repeats a member");
    }
    if (ent.members.back() >= n_) {
      throw Error(ErrorCode::BadParameter, "member out of range");
    }
    if (!std::binary_search(ent.members.begin(), ent.members.end(), ent.generator)) {
      throw Error(ErrorCode::BadParameter, "generator is not a member");
    }
    for (int x : ent.members) covered[x] = 1;
  }
  for (int x = 0; x < n_; ++x) {
    if (!covered[x]) {
      throw Error(ErrorCode::BadParameter, "element " + std::to_string(x) + " is uncovered");
    }
  }

  std::sort(entries_.begin(), entries_.end(), [](const CyclicEntry& a, const CyclicEntry& b) {
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    return a.generator < b.generator;
  });
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].members == entries_[i].members) {
      throw Error(ErrorCode::BadParameter, "duplicate entry");
    }
  }

  const size_t m = entries_.size();
  inter_.resize(m * m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      std::set_intersection(entries_[i].members.begin(), entries_[i].members.end(),
                            entries_[j].members.begin(), entries_[j].members.end(),
                            std::back_inserter(inter_[i * m + j]));
    }
  }
}

CyclicDecomposition maximal_cyclic_subgroups(const FiniteGroup& g) {
  const int n = g.order();
  std::set<std::vector<int>> distinct;
  for (int a = 0; a < n; ++a) distinct.insert(g.generated_subgroup(a));

  std::vector<std::vector<int>> subs(distinct.begin(), distinct.end());
  std::vector<CyclicEntry> entries;
  for (const auto& s : subs) {
    bool maximal = true;
    for (const auto& t : subs) {
      if (t.size() <= s.size()) continue;
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    CyclicEntry ent;
    ent.members = s;
    ent.generator = -1;
    for (int a : s) {
      if (g.generated_subgroup(a) == s) {
        ent.generator = a;
        break;
      }
    }
    entries.push_back(std::move(ent));
  }
  return CyclicDecomposition(n, std::move(entries));
}

IcsReport ics_report(const CyclicDecomposition& d) {
  IcsReport rep;
  const int m = d.size();
  for (int i = 0; i < m; ++i) {
    bool independent = true;
    for (int j = 0; j < m && independent; ++j) {
      if (j == i) continue;
      if (d.intersection(i, j).size() > 1) {
        independent = false;
        rep.exclusions.push_back({i, j, d.intersection(i, j)[1]});
      }
    }
    if (independent) rep.ics_indices.push_back(i);
    if (d.entry(i).members.size() == 2) rep.invmax_indices.push_back(i);
  }
  rep.icn = static_cast<int>(rep.ics_indices.size());
  return rep;
}

int WitnessMatrix::pair_index(int m, int i, int j) {
  // Row-major upper triangle: (0,1), (0,2), ..., (0,m-1), (1,2), ...
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

std::optional<WitnessMatrix> select_distinct_witnesses(
    int m, const std::vector<std::vector<int>>& per_pair_candidates) {
  const int pairs = m * (m - 1) / 2;
  if (static_cast<int>(per_pair_candidates.size()) != pairs) {
    throw Error(ErrorCode::DimensionMismatch, "candidate list does not match pair count");
  }
  WitnessMatrix wm;
  wm.m = m;
  wm.h.assign(pairs, -1);
  std::set<int> used;

  std::function<bool(int)> go = [&](int p) -> bool {
    if (p == pairs) return true;
    for (int cand : per_pair_candidates[p]) {
      if (used.count(cand)) continue;
      wm.h[p] = cand;
      used.insert(cand);
      if (go(p + 1)) return true;
      used.erase(cand);
      wm.h[p] = -1;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return wm;
}

std::optional<WitnessMatrix> distinct_witnesses(const CyclicDecomposition& d) {
  const int m = d.size();
  std::vector<std::vector<int>> candidates;
  candidates.reserve(m * (m - 1) / 2);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& inter = d.intersection(i, j);
      std::vector<int> c(inter.begin(), inter.end());
      // Witnesses must be non-identity; the identity is always present.
      c.erase(c.begin());
      if (c.empty()) return std::nullopt;
      candidates.push_back(std::move(c));
    }
  }
  return select_distinct_witnesses(m, candidates);
}

}  // namespace epgr
