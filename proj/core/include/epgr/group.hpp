#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epgr/error.hpp"

namespace epgr {

// Finite group given by its Cayley table. The identity is always element 0;
// tables whose neutral element sits elsewhere are relabeled on ingest.
class FiniteGroup {
 public:
  // Validates the table (closure/Latin property, identity, associativity,
  // inverses) and normalizes the identity to index 0. Throws Error with the
  // matching ErrorCode; the associativity message names the first bad triple
  // in lexicographic order. `labels` may be empty, in which case e0, e1, ...
  // placeholders are generated.
  static FiniteGroup from_cayley_table(std::vector<std::vector<int>> table,
                                       std::vector<std::string> labels = {});

  int order() const { return n_; }
  int op(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
  int identity() const { return 0; }
  int inverse(int a) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_[a]; }

  int element_order(int a) const;
  // Sorted member list of <a>.
  std::vector<int> generated_subgroup(int a) const;
  // Smallest generator index when the group is cyclic, nullopt otherwise.
  std::optional<int> cyclic_generator() const;

 private:
  FiniteGroup(int n, std::vector<int> table, std::vector<std::string> labels)
      : n_(n), table_(std::move(table)), labels_(std::move(labels)) {}

  int n_ = 0;
  std::vector<int> table_;  // row-major n*n
  std::vector<std::string> labels_;
};

enum class GroupFamily {
  Cyclic,
  Dihedral,
  Dicyclic,
  Symmetric,
  ElementaryAbelian,
  DirectProduct,
  CayleyFile,
};

struct GroupSpec {
  GroupFamily family = GroupFamily::Cyclic;
  long a = 0;  // main parameter (n, or p for ELEMENTARY_ABELIAN)
  long b = 0;  // exponent k for ELEMENTARY_ABELIAN
  std::string path;                // CAYLEY_FILE
  std::vector<GroupSpec> operands; // DIRECT_PRODUCT
};

// Grammar: "CYCLIC n" | "DIHEDRAL n" | "DICYCLIC n" | "SYMMETRIC n"
//        | "ELEMENTARY_ABELIAN p k" | "CAYLEY_FILE path"
//        | "DIRECT_PRODUCT (spec) (spec)"
// Throws Error(ParseError) on anything else.
GroupSpec parse_group_spec(const std::string& text);

// Canonical one-line rendering of a parsed spec.
std::string spec_to_text(const GroupSpec& spec);

struct ConstructOptions {
  long size_cap = 720;    // SpecTooLarge above this order
  std::string base_dir = ".";  // CAYLEY_FILE paths resolve against this
};

FiniteGroup construct(const GroupSpec& spec, const ConstructOptions& options = {});

FiniteGroup cyclic_group(long n);
FiniteGroup dihedral_group(long n);        // order 2n
FiniteGroup dicyclic_group(long n);        // order 4n; n = 2 is the quaternion group
FiniteGroup symmetric_group(long n);       // order n!
FiniteGroup elementary_abelian_group(long p, long k);  // order p^k, p prime
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

// Text format: first line n, then n rows of n indices, then an optional
// final line "labels: l0 l1 ... l{n-1}".
std::string write_cayley_table(const FiniteGroup& g);
FiniteGroup read_cayley_table(const std::string& text);
FiniteGroup load_cayley_file(const std::string& path);

}  // namespace epgr
