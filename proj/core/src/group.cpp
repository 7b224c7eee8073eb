#include "epgr/group.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace epgr {
namespace {

std::string triple_text(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

void check_labels(int n, const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != n) {
    throw Error(ErrorCode::BadParameter, "expected " + std::to_string(n) + " labels, got " +
                                             std::to_string(labels.size()));
  }
  for (const auto& l : labels) {
    if (l.empty()) throw Error(ErrorCode::BadParameter, "empty label");
    for (char ch : l) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        throw Error(ErrorCode::BadParameter, "label contains whitespace: '" + l + "'");
      }
    }
  }
}

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(std::vector<std::vector<int>> table,
                                           std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::BadParameter, "empty table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) {
      throw Error(ErrorCode::BadParameter, "row " + std::to_string(a) + " has " +
                                               std::to_string(table[a].size()) +
                                               " entries, expected " + std::to_string(n));
    }
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table[a][b] < 0 || table[a][b] >= n) {
        throw Error(ErrorCode::NotClosed, "entry (" + std::to_string(a) + "," +
                                              std::to_string(b) + ") = " +
                                              std::to_string(table[a][b]) + " is out of range");
      }
    }
  }
  // Cancellation: every row and every column is a permutation.
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen(n, 0);
    for (int b = 0; b < n; ++b) {
      if (seen[table[a][b]]) {
        throw Error(ErrorCode::NotClosed, "row " + std::to_string(a) + " repeats element " +
                                              std::to_string(table[a][b]));
      }
      seen[table[a][b]] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::vector<char> seen(n, 0);
    for (int a = 0; a < n; ++a) {
      if (seen[table[a][b]]) {
        throw Error(ErrorCode::NotClosed, "column " + std::to_string(b) + " repeats element " +
                                              std::to_string(table[a][b]));
      }
      seen[table[a][b]] = 1;
    }
  }

  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      ok = table[cand][x] == x && table[x][cand] == x;
    }
    if (ok) e = cand;
  }
  if (e < 0) throw Error(ErrorCode::NoIdentity, "no two-sided neutral element");

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw Error(ErrorCode::NotAssociative, "first violating triple " + triple_text(a, b, c));
        }
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    bool has = false;
    for (int b = 0; b < n && !has; ++b) {
      has = table[a][b] == e && table[b][a] == e;
    }
    if (!has) throw Error(ErrorCode::NoInverse, "element " + std::to_string(a));
  }

  if (labels.empty()) {
    labels.reserve(n);
    for (int a = 0; a < n; ++a) labels.push_back("x" + std::to_string(a));
  }
  check_labels(n, labels);

  // Relabel so the identity is element 0.
  std::vector<int> flat(static_cast<size_t>(n) * n);
  if (e != 0) {
    auto sigma = [&](int x) { return x == 0 ? e : (x == e ? 0 : x); };
    std::vector<std::string> relabeled(n);
    for (int x = 0; x < n; ++x) relabeled[x] = labels[sigma(x)];
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        flat[static_cast<size_t>(a) * n + b] = sigma(table[sigma(a)][sigma(b)]);
      }
    }
    labels = std::move(relabeled);
  } else {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) flat[static_cast<size_t>(a) * n + b] = table[a][b];
    }
  }
  return FiniteGroup(n, std::move(flat), std::move(labels));
}

int FiniteGroup::inverse(int a) const {
  for (int b = 0; b < n_; ++b) {
    if (op(a, b) == 0) return b;
  }
  throw Error(ErrorCode::NoInverse, "element " + std::to_string(a));
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  int x = a;
  while (x != 0) {
    x = op(x, a);
    ++k;
  }
  return k;
}

std::vector<int> FiniteGroup::generated_subgroup(int a) const {
  std::vector<int> members{0};
  int x = a;
  while (x != 0) {
    members.push_back(x);
    x = op(x, a);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::optional<int> FiniteGroup::cyclic_generator() const {
  for (int a = 0; a < n_; ++a) {
    if (element_order(a) == n_) return a;
  }
  return std::nullopt;
}

namespace {

std::string power_label(const std::string& base, int k) {
  if (k == 0) return "e";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

FiniteGroup build(int n, const std::function<int(int, int)>& mul,
                  const std::function<std::string(int)>& name) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = name(a);
    for (int b = 0; b < n; ++b) table[a][b] = mul(a, b);
  }
  return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

}  // namespace

FiniteGroup cyclic_group(long n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "CYCLIC needs n >= 1");
  const int nn = static_cast<int>(n);
  return build(
      nn, [nn](int a, int b) { return (a + b) % nn; },
      [](int a) { return power_label("g", a); });
}

FiniteGroup dihedral_group(long n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "DIHEDRAL needs n >= 1");
  const int nn = static_cast<int>(n);
  // (f, k) at index f*n + k stands for s^f r^k with s r s = r^{-1}.
  auto mul = [nn](int a, int b) {
    int f1 = a / nn, k1 = a % nn;
    int f2 = b / nn, k2 = b % nn;
    int f = f1 ^ f2;
    int k = f2 == 0 ? (k1 + k2) % nn : ((k2 - k1) % nn + nn) % nn;
    return f * nn + k;
  };
  auto name = [nn](int a) {
    int f = a / nn, k = a % nn;
    if (f == 0) return power_label("r", k);
    if (k == 0) return std::string("s");
    return "s*" + power_label("r", k);
  };
  return build(2 * nn, mul, name);
}

FiniteGroup dicyclic_group(long n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "DICYCLIC needs n >= 1");
  const int nn = static_cast<int>(n);
  const int m = 2 * nn;  // order of a
  // (f, k) at index f*2n + k stands for a^k b^f with b^2 = a^n, b a b^{-1} = a^{-1}.
  auto mul = [nn, m](int x, int y) {
    int f1 = x / m, k1 = x % m;
    int f2 = y / m, k2 = y % m;
    if (f1 == 0) return f2 * m + (k1 + k2) % m;
    if (f2 == 0) return m + ((k1 - k2) % m + m) % m;
    return ((k1 - k2 + nn) % m + m) % m;
  };
  auto name = [m](int x) {
    int f = x / m, k = x % m;
    if (f == 0) return power_label("a", k);
    if (k == 0) return std::string("b");
    return power_label("a", k) + "*b";
  };
  return build(2 * m, mul, name);
}

namespace {

std::string cycle_label(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<char> done(n, 0);
  std::string out;
  for (int s = 0; s < n; ++s) {
    if (done[s] || p[s] == s) continue;
    out += "(";
    int x = s;
    do {
      done[x] = 1;
      out += std::to_string(x + 1);
      x = p[x];
    } while (x != s);
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

FiniteGroup symmetric_group(long n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "SYMMETRIC needs n >= 1");
  const int nn = static_cast<int>(n);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(nn);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> rank;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) rank[perms[i]] = i;

  auto mul = [&](int a, int b) {
    std::vector<int> r(nn);
    for (int i = 0; i < nn; ++i) r[i] = perms[a][perms[b][i]];
    return rank.at(r);
  };
  auto name = [&](int a) { return cycle_label(perms[a]); };
  return build(static_cast<int>(perms.size()), mul, name);
}

FiniteGroup elementary_abelian_group(long p, long k) {
  if (p < 2) throw Error(ErrorCode::BadParameter, "ELEMENTARY_ABELIAN needs p >= 2");
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw Error(ErrorCode::BadParameter, std::to_string(p) + " is not prime");
  }
  if (k < 1) throw Error(ErrorCode::BadParameter, "ELEMENTARY_ABELIAN needs k >= 1");
  long order = 1;
  for (long i = 0; i < k; ++i) order *= p;
  const int nn = static_cast<int>(order);
  const int pp = static_cast<int>(p);
  const int kk = static_cast<int>(k);

  auto digits = [pp, kk](int x) {
    std::vector<int> d(kk);
    for (int i = 0; i < kk; ++i) {
      d[i] = x % pp;
      x /= pp;
    }
    return d;
  };
  auto mul = [pp, kk, digits](int a, int b) {
    auto da = digits(a);
    auto db = digits(b);
    int out = 0;
    int scale = 1;
    for (int i = 0; i < kk; ++i) {
      out += ((da[i] + db[i]) % pp) * scale;
      scale *= pp;
    }
    return out;
  };
  auto name = [kk, digits](int a) {
    auto d = digits(a);
    std::string s = "(";
    for (int i = 0; i < kk; ++i) {
      if (i) s += ",";
      s += std::to_string(d[i]);
    }
    return s + ")";
  };
  return build(nn, mul, name);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int ng = g.order();
  const int nh = h.order();
  auto mul = [&](int x, int y) {
    int a1 = x / nh, b1 = x % nh;
    int a2 = y / nh, b2 = y % nh;
    return g.op(a1, a2) * nh + h.op(b1, b2);
  };
  auto name = [&](int x) { return "(" + g.label(x / nh) + "," + h.label(x % nh) + ")"; };
  return build(ng * nh, mul, name);
}

namespace {

struct Tokenizer {
  std::vector<std::string> tokens;
  size_t pos = 0;

  explicit Tokenizer(const std::string& text) {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
    };
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else if (ch == '(' || ch == ')') {
        flush();
        tokens.push_back(std::string(1, ch));
      } else {
        cur += ch;
      }
    }
    flush();
  }

  bool done() const { return pos >= tokens.size(); }
  const std::string& peek() const {
    if (done()) throw Error(ErrorCode::ParseError, "unexpected end of spec");
    return tokens[pos];
  }
  std::string next() {
    auto t = peek();
    ++pos;
    return t;
  }
};

long parse_number(Tokenizer& tz, const char* what) {
  std::string t = tz.next();
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(t, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("expected ") + what + ", got '" + t + "'");
  }
  if (used != t.size()) {
    throw Error(ErrorCode::ParseError, std::string("expected ") + what + ", got '" + t + "'");
  }
  return value;
}

GroupSpec parse_spec_inner(Tokenizer& tz) {
  std::string fam = tz.next();
  GroupSpec spec;
  if (fam == "CYCLIC") {
    spec.family = GroupFamily::Cyclic;
    spec.a = parse_number(tz, "n");
  } else if (fam == "DIHEDRAL") {
    spec.family = GroupFamily::Dihedral;
    spec.a = parse_number(tz, "n");
  } else if (fam == "DICYCLIC") {
    spec.family = GroupFamily::Dicyclic;
    spec.a = parse_number(tz, "n");
  } else if (fam == "SYMMETRIC") {
    spec.family = GroupFamily::Symmetric;
    spec.a = parse_number(tz, "n");
  } else if (fam == "ELEMENTARY_ABELIAN") {
    spec.family = GroupFamily::ElementaryAbelian;
    spec.a = parse_number(tz, "p");
    spec.b = parse_number(tz, "k");
  } else if (fam == "CAYLEY_FILE") {
    spec.family = GroupFamily::CayleyFile;
    spec.path = tz.next();
    if (spec.path == "(" || spec.path == ")") {
      throw Error(ErrorCode::ParseError, "CAYLEY_FILE needs a path");
    }
  } else if (fam == "DIRECT_PRODUCT") {
    spec.family = GroupFamily::DirectProduct;
    for (int i = 0; i < 2; ++i) {
      if (tz.next() != "(") throw Error(ErrorCode::ParseError, "DIRECT_PRODUCT expects '('");
      spec.operands.push_back(parse_spec_inner(tz));
      if (tz.next() != ")") throw Error(ErrorCode::ParseError, "DIRECT_PRODUCT expects ')'");
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown family '" + fam + "'");
  }
  return spec;
}

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  Tokenizer tz(text);
  if (tz.done()) throw Error(ErrorCode::ParseError, "empty spec");
  GroupSpec spec = parse_spec_inner(tz);
  if (!tz.done()) {
    throw Error(ErrorCode::ParseError, "trailing tokens after spec: '" + tz.peek() + "'");
  }
  return spec;
}

std::string spec_to_text(const GroupSpec& spec) {
  switch (spec.family) {
    case GroupFamily::Cyclic: return "CYCLIC " + std::to_string(spec.a);
    case GroupFamily::Dihedral: return "DIHEDRAL " + std::to_string(spec.a);
    case GroupFamily::Dicyclic: return "DICYCLIC " + std::to_string(spec.a);
    case GroupFamily::Symmetric: return "SYMMETRIC " + std::to_string(spec.a);
    case GroupFamily::ElementaryAbelian:
      return "ELEMENTARY_ABELIAN " + std::to_string(spec.a) + " " + std::to_string(spec.b);
    case GroupFamily::CayleyFile: return "CAYLEY_FILE " + spec.path;
    case GroupFamily::DirectProduct:
      return "DIRECT_PRODUCT (" + spec_to_text(spec.operands[0]) + ") (" +
             spec_to_text(spec.operands[1]) + ")";
  }
  return "";
}

namespace {

long predicted_order(const GroupSpec& spec, const ConstructOptions& options) {
  const long cap_guard = 1L << 40;
  switch (spec.family) {
    case GroupFamily::Cyclic: return spec.a;
    case GroupFamily::Dihedral: return spec.a < 1 ? spec.a : 2 * spec.a;
    case GroupFamily::Dicyclic: return spec.a < 1 ? spec.a : 4 * spec.a;
    case GroupFamily::Symmetric: {
      if (spec.a < 1) return spec.a;
      long f = 1;
      for (long i = 2; i <= spec.a; ++i) {
        f *= i;
        if (f > cap_guard) return cap_guard;
      }
      return f;
    }
    case GroupFamily::ElementaryAbelian: {
      if (spec.a < 2 || spec.b < 1) return 1;
      long f = 1;
      for (long i = 0; i < spec.b; ++i) {
        f *= spec.a;
        if (f > cap_guard) return cap_guard;
      }
      return f;
    }
    case GroupFamily::DirectProduct: {
      long f = 1;
      for (const auto& op : spec.operands) {
        f *= predicted_order(op, options);
        if (f > cap_guard) return cap_guard;
      }
      return f;
    }
    case GroupFamily::CayleyFile: return 0;  // unknown until loaded
  }
  return 0;
}

}  // namespace

FiniteGroup construct(const GroupSpec& spec, const ConstructOptions& options) {
  const long predicted = predicted_order(spec, options);
  if (predicted > options.size_cap) {
    throw Error(ErrorCode::SpecTooLarge, spec_to_text(spec) + " has order " +
                                             std::to_string(predicted) + " > cap " +
                                             std::to_string(options.size_cap));
  }
  switch (spec.family) {
    case GroupFamily::Cyclic: return cyclic_group(spec.a);
    case GroupFamily::Dihedral: return dihedral_group(spec.a);
    case GroupFamily::Dicyclic: return dicyclic_group(spec.a);
    case GroupFamily::Symmetric: return symmetric_group(spec.a);
    case GroupFamily::ElementaryAbelian: return elementary_abelian_group(spec.a, spec.b);
    case GroupFamily::DirectProduct: {
      FiniteGroup g = construct(spec.operands[0], options);
      FiniteGroup h = construct(spec.operands[1], options);
      return direct_product(g, h);
    }
    case GroupFamily::CayleyFile: {
      std::string path = spec.path;
      if (!path.empty() && path[0] != '/') path = options.base_dir + "/" + path;
      FiniteGroup g = load_cayley_file(path);
      if (g.order() > options.size_cap) {
        throw Error(ErrorCode::SpecTooLarge, spec.path + " has order " +
                                                 std::to_string(g.order()) + " > cap " +
                                                 std::to_string(options.size_cap));
      }
      return g;
    }
  }
  throw Error(ErrorCode::BadParameter, "unhandled family");
}

std::string write_cayley_table(const FiniteGroup& g) {
  std::ostringstream os;
  const int n = g.order();
  os << n << "\n";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b) os << ' ';
      os << g.op(a, b);
    }
    os << "\n";
  }
  os << "labels:";
  for (int a = 0; a < n; ++a) os << ' ' << g.label(a);
  os << "\n";
  return os.str();
}

FiniteGroup read_cayley_table(const std::string& text) {
  std::istringstream is(text);
  int n = 0;
  if (!(is >> n) || n < 1) throw Error(ErrorCode::ParseError, "bad element count");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!(is >> table[a][b])) {
        throw Error(ErrorCode::ParseError, "table row " + std::to_string(a) + " is truncated");
      }
    }
  }
  std::vector<std::string> labels;
  std::string word;
  if (is >> word) {
    if (word != "labels:") throw Error(ErrorCode::ParseError, "expected 'labels:', got '" + word + "'");
    std::string l;
    while (is >> l) labels.push_back(l);
    if (static_cast<int>(labels.size()) != n) {
      throw Error(ErrorCode::ParseError, "label count does not match order");
    }
  }
  return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

FiniteGroup load_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return read_cayley_table(os.str());
}

}  // namespace epgr
