#include "epgr/awning.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epgr/error.hpp"

namespace epgr {

namespace {

int triangle_size(int m) { return m * (m - 1) / 2; }

}  // namespace

AwningCertificate::AwningCertificate(int m, std::vector<int> order)
    : m_(m), order_(std::move(order)) {
  if (m_ < 1) throw Error(ErrorCode::DimensionMismatch, "certificate needs m >= 1");
  std::vector<int> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(m_);
  std::iota(expect.begin(), expect.end(), 0);
  if (sorted != expect) {
    throw Error(ErrorCode::DimensionMismatch, "order is not a permutation of 0..m-1");
  }
  witness_.assign(triangle_size(m_), 0);
  side_.assign(triangle_size(m_), Side::A);
}

int AwningCertificate::pos(int i, int j) const {
  if (i < 0 || j <= i || j >= m_) {
    throw Error(ErrorCode::DimensionMismatch, "bad certificate position");
  }
  return WitnessMatrix::pair_index(m_, i, j);
}

void AwningCertificate::set(int i, int j, int witness, Side side) {
  witness_[pos(i, j)] = witness;
  side_[pos(i, j)] = side;
}

const char* to_string(AwningVerdict v) {
  switch (v) {
    case AwningVerdict::Found: return "FOUND";
    case AwningVerdict::None: return "NONE";
    case AwningVerdict::Unknown: return "UNKNOWN";
    case AwningVerdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

AwningCheck verify_awning(const CyclicDecomposition& d, const AwningCertificate& cert) {
  const int m = d.size();
  if (cert.m() != m) {
    throw Error(ErrorCode::DimensionMismatch, "certificate is for m = " +
                                                  std::to_string(cert.m()) + ", decomposition has " +
                                                  std::to_string(m));
  }
  const auto& ord = cert.order();

  auto fail = [](std::string why) { return AwningCheck{false, std::move(why)}; };
  auto pos_text = [](int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };

  // Condition 1: membership in the pairwise intersections.
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& inter = d.intersection(ord[i], ord[j]);
      if (!std::binary_search(inter.begin(), inter.end(), cert.witness(i, j))) {
        return fail("witness " + std::to_string(cert.witness(i, j)) + " at " + pos_text(i, j) +
                    " lies outside the entries' intersection");
      }
    }
  }

  // Condition 2: within a row the sides partition the values, so equal values
  // must carry equal sides.
  for (int i = 0; i + 1 < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int s = j + 1; s < m; ++s) {
        if (cert.witness(i, j) == cert.witness(i, s) && cert.side(i, j) != cert.side(i, s)) {
          return fail("row " + std::to_string(i) + " assigns both sides to value " +
                      std::to_string(cert.witness(i, j)));
        }
      }
    }
  }

  // Condition 3: a value reappearing at (i,j) flips side, at (i,s) keeps it.
  for (int i = 0; i + 2 < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int s = j + 1; s < m; ++s) {
        const int v = cert.witness(j, s);
        if (cert.witness(i, j) == v && cert.side(i, j) == cert.side(j, s)) {
          return fail("value " + std::to_string(v) + " at " + pos_text(j, s) +
                      " must flip side against " + pos_text(i, j));
        }
        if (cert.witness(i, s) == v && cert.side(i, s) != cert.side(j, s)) {
          return fail("value " + std::to_string(v) + " at " + pos_text(j, s) +
                      " must keep the side of " + pos_text(i, s));
        }
      }
    }
  }
  return AwningCheck{true, ""};
}

namespace {

struct AwningSearcher {
  const CyclicDecomposition& d;
  const std::vector<int>& order;
  std::uint64_t budget;

  int m;
  std::vector<const std::vector<int>*> values;  // per position
  std::vector<int> h;
  std::vector<Side> side;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;

  AwningSearcher(const CyclicDecomposition& dd, const std::vector<int>& ord, std::uint64_t b)
      : d(dd), order(ord), budget(b), m(dd.size()) {
    const int t = triangle_size(m);
    values.resize(t);
    h.assign(t, -1);
    side.assign(t, Side::A);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        values[WitnessMatrix::pair_index(m, i, j)] = &d.intersection(order[i], order[j]);
      }
    }
  }

  int pp(int i, int j) const { return WitnessMatrix::pair_index(m, i, j); }

  // Side forced for value v at (row, col), or -1 free, or -2 contradictory.
  int forced_side(int row, int col, int v) const {
    int forced = -1;
    auto merge = [&](Side s) {
      int want = s == Side::A ? 0 : 1;
      if (forced == -1) forced = want;
      else if (forced != want) forced = -2;
    };
    for (int r2 = 0; r2 < row && forced != -2; ++r2) {
      if (h[pp(r2, row)] == v) merge(side[pp(r2, row)] == Side::A ? Side::B : Side::A);
      if (h[pp(r2, col)] == v) merge(side[pp(r2, col)]);
    }
    if (forced == -2) return -2;
    // Value-level sides: a value already placed in this row pins the side.
    for (int c2 = row + 1; c2 < col; ++c2) {
      if (h[pp(row, c2)] == v) {
        int rs = side[pp(row, c2)] == Side::A ? 0 : 1;
        if (forced != -1 && forced != rs) return -2;
        return rs;
      }
    }
    return forced;
  }

  bool solve(int idx) {
    if (idx == triangle_size(m)) return true;
    const int row = [&] {
      int i = 0;
      int left = idx;
      while (left >= m - 1 - i) {
        left -= m - 1 - i;
        ++i;
      }
      return i;
    }();
    const int col = row + 1 + (idx - pp(row, row + 1));

    for (int v : *values[idx]) {
      if (++nodes > budget) {
        out_of_budget = true;
        return false;
      }
      const int forced = forced_side(row, col, v);
      if (forced == -2) continue;
      for (int s = 0; s < 2; ++s) {
        if (forced != -1 && forced != s) continue;
        h[idx] = v;
        side[idx] = s == 0 ? Side::A : Side::B;
        if (solve(idx + 1)) return true;
        if (out_of_budget) return false;
        h[idx] = -1;
        // A forced side leaves nothing else to try for this value.
        if (forced != -1) break;
      }
    }
    return false;
  }
};

}  // namespace

AwningSearchResult find_awning(const CyclicDecomposition& d, const std::vector<int>& order,
                               std::uint64_t budget) {
  const int m = d.size();
  if (static_cast<int>(order.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "order size does not match decomposition");
  }
  AwningSearchResult res;
  if (m == 1) {
    res.verdict = AwningVerdict::NotApplicable;
    return res;
  }
  AwningSearcher searcher(d, order, budget);
  const bool found = searcher.solve(0);
  res.nodes = searcher.nodes;
  if (found) {
    AwningCertificate cert(m, order);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        cert.set(i, j, searcher.h[searcher.pp(i, j)], searcher.side[searcher.pp(i, j)]);
      }
    }
    res.verdict = AwningVerdict::Found;
    res.certificate = std::move(cert);
  } else if (searcher.out_of_budget) {
    res.verdict = AwningVerdict::Unknown;
  } else {
    res.verdict = AwningVerdict::None;
  }
  return res;
}

AwningSearchResult find_awning(const CyclicDecomposition& d, std::uint64_t budget) {
  std::vector<int> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  return find_awning(d, order, budget);
}

namespace {

std::vector<int> unrank_permutation(int m, std::uint64_t rank) {
  // Factorial number system.
  std::vector<std::uint64_t> fact(m, 1);
  for (int i = 1; i < m; ++i) fact[i] = fact[i - 1] * i;
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(m);
  for (int i = m - 1; i >= 0; --i) {
    std::uint64_t q = rank / fact[i];
    rank %= fact[i];
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<long>(q));
  }
  return out;
}

}  // namespace

OrderProbe awning_order_probe(const CyclicDecomposition& d, int max_orders,
                              std::uint64_t budget_per_order) {
  OrderProbe probe;
  const int m = d.size();
  if (m == 1 || max_orders < 1) return probe;

  std::vector<std::vector<int>> orders;
  std::uint64_t total = 1;
  bool overflow = false;
  for (int i = 2; i <= m; ++i) {
    if (total > (1ULL << 62) / i) {
      overflow = true;
      break;
    }
    total *= i;
  }
  if (!overflow && total <= static_cast<std::uint64_t>(max_orders)) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else if (!overflow) {
    for (int t = 0; t < max_orders; ++t) {
      orders.push_back(unrank_permutation(m, total / max_orders * t));
    }
  } else {
    // m! does not fit in 64 bits; fall back to seeded shuffles.
    std::mt19937 rng(12345);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < max_orders; ++t) {
      orders.push_back(perm);
      std::shuffle(perm.begin(), perm.end(), rng);
    }
  }

  for (const auto& ord : orders) {
    auto res = find_awning(d, ord, budget_per_order);
    ++probe.orders_tried;
    switch (res.verdict) {
      case AwningVerdict::Found:
        ++probe.found;
        if (probe.example_found.size() < 4) probe.example_found.push_back(ord);
        break;
      case AwningVerdict::None:
        ++probe.none;
        if (probe.example_none.size() < 4) probe.example_none.push_back(ord);
        break;
      default:
        ++probe.unknown;
        break;
    }
  }
  probe.order_invariant = probe.found == 0 || probe.none == 0;
  return probe;
}

std::string awning_certificate_json(const AwningCertificate& cert) {
  nlohmann::json j;
  j["order"] = cert.order();
  auto rows = nlohmann::json::array();
  for (int i = 0; i < cert.m(); ++i) {
    for (int s = i + 1; s < cert.m(); ++s) {
      rows.push_back({{"i", i},
                      {"j", s},
                      {"element", cert.witness(i, s)},
                      {"side", cert.side(i, s) == Side::A ? "A" : "B"}});
    }
  }
  j["witnesses"] = std::move(rows);
  return j.dump();
}

}  // namespace epgr
