#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epgr/cyclic.hpp"

namespace epgr {

enum class Side { A, B };

// Witness family over a decomposition with entries taken in the order given
// by `order`: one element h(i,j) per position 0 <= i < j < m, each tagged
// with a side. Row i is the list h(i,i+1), ..., h(i,m-1).
//
// A certificate is valid when
//   1. h(i,j) lies in the intersection of entries order[i] and order[j]
//      (the identity is allowed);
//   2. within a row, equal values carry equal sides (the sides partition the
//      row's value set, not its positions);
//   3. for i < j < s, whenever the value at (j,s) reappears at (i,j) the two
//      carry opposite sides, and whenever it reappears at (i,s) they carry
//      equal sides.
class AwningCertificate {
 public:
  AwningCertificate(int m, std::vector<int> order);

  int m() const { return m_; }
  const std::vector<int>& order() const { return order_; }

  int witness(int i, int j) const { return witness_[pos(i, j)]; }
  Side side(int i, int j) const { return side_[pos(i, j)]; }
  void set(int i, int j, int witness, Side side);

 private:
  int pos(int i, int j) const;

  int m_ = 0;
  std::vector<int> order_;
  std::vector<int> witness_;
  std::vector<Side> side_;
};

enum class AwningVerdict { Found, None, Unknown, NotApplicable };

const char* to_string(AwningVerdict v);

struct AwningCheck {
  bool ok = false;
  std::string violation;  // empty when ok
};

// Checks the three conditions above. Throws Error(DimensionMismatch) when the
// certificate shape or order permutation does not fit d.
AwningCheck verify_awning(const CyclicDecomposition& d, const AwningCertificate& cert);

struct AwningSearchResult {
  AwningVerdict verdict = AwningVerdict::NotApplicable;
  std::optional<AwningCertificate> certificate;
  std::uint64_t nodes = 0;
};

// Exhaustive backtracking over witness values (row-major positions, values
// ascending, side A before B; sides forced by conditions 2 and 3 as soon as
// a value is placed). Deterministic; exceeding `budget` nodes yields Unknown.
// m == 1 yields NotApplicable.
AwningSearchResult find_awning(const CyclicDecomposition& d, const std::vector<int>& order,
                               std::uint64_t budget = 10'000'000);
AwningSearchResult find_awning(const CyclicDecomposition& d, std::uint64_t budget = 10'000'000);

struct OrderProbe {
  int orders_tried = 0;
  int found = 0;
  int none = 0;
  int unknown = 0;
  // Whether every decided order agreed (all Found or all None, no mixture).
  bool order_invariant = true;
  std::vector<std::vector<int>> example_found;  // at most 4 each
  std::vector<std::vector<int>> example_none;
};

// Runs find_awning under every entry order when m! <= max_orders, otherwise
// under max_orders evenly spaced permutation ranks.
OrderProbe awning_order_probe(const CyclicDecomposition& d, int max_orders = 720,
                              std::uint64_t budget_per_order = 10'000'000);

// {"order": [...], "witnesses": [{"i":..,"j":..,"element":..,"side":"A"|"B"}, ...]}
std::string awning_certificate_json(const AwningCertificate& cert);

}  // namespace epgr
