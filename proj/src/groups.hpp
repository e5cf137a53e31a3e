#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "support.hpp"

namespace gctuf {

struct GroupElement {
  std::vector<int64_t> r;  // residues, entry i in [0, m_i)

  bool operator==(const GroupElement& o) const { return r == o.r; }
  bool operator!=(const GroupElement& o) const { return r != o.r; }
  bool operator<(const GroupElement& o) const { return r < o.r; }
  std::string to_text() const;  // bracketed residue vector, e.g. [1, 0]
};

// Finite abelian group presented as a product of cyclic factors. The moduli
// list is arbitrary (canonical invariant-factor form available via
// normalized()), since groups are only ever used up to isomorphism.
struct AbelianGroup {
  std::vector<int64_t> moduli;  // each >= 1

  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int64_t> m);

  int k() const { return int(moduli.size()); }
  int64_t order() const;
  bool trivial() const { return order() == 1; }

  GroupElement zero() const { return GroupElement{std::vector<int64_t>(moduli.size(), 0)}; }
  bool contains(const GroupElement& e) const;
  GroupElement reduce(const std::vector<Int>& raw) const;

  int64_t index_of(const GroupElement& e) const;   // mixed-radix rank
  GroupElement element_at(int64_t index) const;
  std::vector<GroupElement> all_elements() const;

  bool operator==(const AbelianGroup& o) const { return moduli == o.moduli; }
  std::string to_text() const;  // [m1, m2, ...]
};

GroupElement add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement neg(const AbelianGroup& g, const GroupElement& a);
GroupElement sub(const AbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement scalar_mul(const AbelianGroup& g, const Int& n, const GroupElement& a);

// gamma^T x in the group: linear combination of labels with integer weights.
GroupElement combination(const AbelianGroup& g, const std::vector<GroupElement>& labels,
                         const std::vector<Int>& x);

struct Subgroup {
  std::vector<GroupElement> elements;  // sorted, contains zero, closed

  int64_t size() const { return int64_t(elements.size()); }
  bool contains(const GroupElement& e) const;
  bool trivial() const { return elements.size() == 1; }
};

struct TargetSet {
  std::vector<GroupElement> elements;  // sorted, unique

  static TargetSet of(const AbelianGroup& g, std::vector<GroupElement> elems);
  int64_t size() const { return int64_t(elements.size()); }
  bool empty() const { return elements.empty(); }
  bool contains(const GroupElement& e) const;
  std::string to_text() const;
};

Subgroup subgroup_generated(const AbelianGroup& g, const GroupElement& e);
// Every subgroup exactly once; order of the group capped (default 64) since
// the enumeration is exponential in general.
std::vector<Subgroup> all_subgroups(const AbelianGroup& g, int64_t cap = 64);

bool is_coset_union(const AbelianGroup& g, const TargetSet& r, const Subgroup& h);

// Quotient G/H in invariant-factor form together with the projection map.
struct Quotient {
  AbelianGroup group;                   // the quotient
  std::vector<GroupElement> image;      // image[index_of(g)] for every g in G
  GroupElement apply(const AbelianGroup& g, const GroupElement& e) const;
};
Quotient quotient(const AbelianGroup& g, const Subgroup& h);

// Invariant-factor normalization of an arbitrary moduli list.
AbelianGroup normalized(const AbelianGroup& g);

// Nonempty contiguous index interval [first, last] of `seq` whose sum
// vanishes, found via prefix sums; guaranteed to exist when the sequence has
// at least |G| entries.
std::optional<std::pair<int, int>> find_vanishing_subset(const AbelianGroup& g,
                                                         const std::vector<GroupElement>& seq);

}  // namespace gctuf
