#include "groups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "linalg.hpp"

namespace gctuf {

std::string GroupElement::to_text() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) os << ", ";
    os << r[i];
  }
  os << ']';
  return os.str();
}

AbelianGroup::AbelianGroup(std::vector<int64_t> m) : moduli(std::move(m)) {
  for (int64_t mi : moduli) require(mi >= 1, errc::invalid, "group modulus must be >= 1");
}

int64_t AbelianGroup::order() const {
  int64_t o = 1;
  for (int64_t m : moduli) {
    require(o <= (int64_t(1) << 40) / std::max<int64_t>(m, 1), errc::budget, "group order overflow");
    o *= m;
  }
  return o;
}

bool AbelianGroup::contains(const GroupElement& e) const {
  if (e.r.size() != moduli.size()) return false;
  for (size_t i = 0; i < moduli.size(); ++i)
    if (e.r[i] < 0 || e.r[i] >= moduli[i]) return false;
  return true;
}

GroupElement AbelianGroup::reduce(const std::vector<Int>& raw) const {
  require(raw.size() == moduli.size(), errc::invalid, "group element arity mismatch");
  GroupElement e;
  e.r.resize(moduli.size());
  for (size_t i = 0; i < moduli.size(); ++i) {
    Int v = raw[i] % moduli[i];
    if (v < 0) v += moduli[i];
    e.r[i] = to_int64(v);
  }
  return e;
}

int64_t AbelianGroup::index_of(const GroupElement& e) const {
  require(contains(e), errc::invalid, "element does not belong to group");
  int64_t idx = 0;
  for (size_t i = 0; i < moduli.size(); ++i) idx = idx * moduli[i] + e.r[i];
  return idx;
}

GroupElement AbelianGroup::element_at(int64_t index) const {
  GroupElement e;
  e.r.resize(moduli.size());
  for (int i = k() - 1; i >= 0; --i) {
    e.r[i] = index % moduli[i];
    index /= moduli[i];
  }
  require(index == 0, errc::invalid, "element index out of range");
  return e;
}

std::vector<GroupElement> AbelianGroup::all_elements() const {
  int64_t o = order();
  std::vector<GroupElement> out;
  out.reserve(size_t(o));
  for (int64_t i = 0; i < o; ++i) out.push_back(element_at(i));
  return out;
}

std::string AbelianGroup::to_text() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < moduli.size(); ++i) {
    if (i) os << ", ";
    os << moduli[i];
  }
  os << ']';
  return os.str();
}

namespace {

void check_member(const AbelianGroup& g, const GroupElement& e) {
  require(g.contains(e), errc::invalid, "group mismatch: element not in group");
}

}  // namespace

GroupElement add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  check_member(g, a);
  check_member(g, b);
  GroupElement c;
  c.r.resize(g.moduli.size());
  for (size_t i = 0; i < g.moduli.size(); ++i) c.r[i] = (a.r[i] + b.r[i]) % g.moduli[i];
  return c;
}

GroupElement neg(const AbelianGroup& g, const GroupElement& a) {
  check_member(g, a);
  GroupElement c;
  c.r.resize(g.moduli.size());
  for (size_t i = 0; i < g.moduli.size(); ++i) c.r[i] = a.r[i] == 0 ? 0 : g.moduli[i] - a.r[i];
  return c;
}

GroupElement sub(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  return add(g, a, neg(g, b));
}

GroupElement scalar_mul(const AbelianGroup& g, const Int& n, const GroupElement& a) {
  check_member(g, a);
  GroupElement c;
  c.r.resize(g.moduli.size());
  for (size_t i = 0; i < g.moduli.size(); ++i) {
    Int v = (Int(a.r[i]) * n) % g.moduli[i];
    if (v < 0) v += g.moduli[i];
    c.r[i] = to_int64(v);
  }
  return c;
}

GroupElement combination(const AbelianGroup& g, const std::vector<GroupElement>& labels,
                         const std::vector<Int>& x) {
  require(labels.size() == x.size(), errc::invalid, "label/variable count mismatch");
  GroupElement acc = g.zero();
  for (size_t j = 0; j < labels.size(); ++j)
    if (x[j] != 0) acc = add(g, acc, scalar_mul(g, x[j], labels[j]));
  return acc;
}

bool Subgroup::contains(const GroupElement& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

TargetSet TargetSet::of(const AbelianGroup& g, std::vector<GroupElement> elems) {
  for (const auto& e : elems)
    require(g.contains(e), errc::invalid, "target element not in group");
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return TargetSet{std::move(elems)};
}

bool TargetSet::contains(const GroupElement& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

std::string TargetSet::to_text() const {
  std::ostringstream os;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i) os << ' ';
    os << elements[i].to_text();
  }
  return os.str();
}

Subgroup subgroup_generated(const AbelianGroup& g, const GroupElement& e) {
  check_member(g, e);
  std::vector<GroupElement> elems{g.zero()};
  GroupElement cur = e;
  while (!(cur == g.zero())) {
    elems.push_back(cur);
    cur = add(g, cur, e);
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{std::move(elems)};
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& g, int64_t cap) {
  require(g.order() <= cap, errc::budget, "group too large for subgroup enumeration");
  auto elems = g.all_elements();
  // closure-based breadth-first enumeration, deduplicated by element list
  std::set<std::vector<GroupElement>> seen;
  std::vector<Subgroup> out;
  std::vector<Subgroup> frontier{subgroup_generated(g, g.zero())};
  seen.insert(frontier[0].elements);
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& h : frontier) {
      out.push_back(h);
      for (const GroupElement& e : elems) {
        if (h.contains(e)) continue;
        // close h union {e} under the group operation
        std::set<GroupElement> cl(h.elements.begin(), h.elements.end());
        cl.insert(e);
        bool grew = true;
        while (grew) {
          grew = false;
          std::vector<GroupElement> cur(cl.begin(), cl.end());
          for (const auto& a : cur) {
            if (cl.insert(neg(g, a)).second) grew = true;
            for (const auto& b : cur)
              if (cl.insert(add(g, a, b)).second) grew = true;
          }
        }
        std::vector<GroupElement> closed(cl.begin(), cl.end());
        if (seen.insert(closed).second) next.push_back(Subgroup{std::move(closed)});
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

bool is_coset_union(const AbelianGroup& g, const TargetSet& r, const Subgroup& h) {
  for (const GroupElement& a : r.elements)
    for (const GroupElement& b : h.elements)
      if (!r.contains(add(g, a, b))) return false;
  return true;
}

Quotient quotient(const AbelianGroup& g, const Subgroup& h) {
  int k = g.k();
  // relation matrix [diag(moduli) | generators of H]; its cokernel is G/H
  std::vector<std::vector<Int>> cols;
  for (int i = 0; i < k; ++i) {
    std::vector<Int> c(k, Int(0));
    c[i] = g.moduli[i];
    cols.push_back(c);
  }
  for (const GroupElement& e : h.elements) {
    std::vector<Int> c(k);
    for (int i = 0; i < k; ++i) c[i] = e.r[i];
    cols.push_back(c);
  }
  IntMatrix rel(k, int(cols.size()));
  for (int i = 0; i < k; ++i)
    for (size_t j = 0; j < cols.size(); ++j) rel.at(i, int(j)) = cols[j][i];

  SnfResult snf = smith_normal_form(rel);
  // G/H = Z^k / (rel Z^*) = Z^k / (S D Z^*); the map z -> S^{-1} z mod diag(D)
  auto sinv = inverse(snf.s);
  require(sinv.has_value(), errc::internal, "snf transform must be invertible");

  std::vector<int64_t> mods(k);
  for (int i = 0; i < k; ++i) {
    Int di = snf.d.at(i, i);
    require(di != 0, errc::internal, "relation matrix has full rank by construction");
    mods[i] = to_int64(di);
  }
  std::vector<int> keep;
  for (int i = 0; i < k; ++i)
    if (mods[i] > 1) keep.push_back(i);
  std::vector<int64_t> qmods;
  for (int i : keep) qmods.push_back(mods[i]);
  AbelianGroup qg(qmods);

  Quotient out;
  out.group = qg;
  int64_t o = g.order();
  out.image.reserve(size_t(o));
  for (int64_t idx = 0; idx < o; ++idx) {
    GroupElement e = g.element_at(idx);
    std::vector<Int> mapped(k, Int(0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const Rat& s = (*sinv)[i][j];
        require(rat_is_integer(s), errc::internal, "unimodular inverse must be integral");
        mapped[i] += numerator(s) * e.r[j];
      }
    std::vector<Int> kept;
    for (int i : keep) kept.push_back(mapped[i]);
    out.image.push_back(qg.reduce(kept));
  }
  return out;
}

GroupElement Quotient::apply(const AbelianGroup& g, const GroupElement& e) const {
  return image[size_t(g.index_of(e))];
}

AbelianGroup normalized(const AbelianGroup& g) {
  int k = g.k();
  IntMatrix rel(k, k);
  for (int i = 0; i < k; ++i) rel.at(i, i) = g.moduli[i];
  SnfResult snf = smith_normal_form(rel);
  std::vector<int64_t> mods;
  for (int i = 0; i < k; ++i) {
    int64_t d = to_int64(snf.d.at(i, i));
    if (d > 1) mods.push_back(d);
  }
  return AbelianGroup(mods);
}

std::optional<std::pair<int, int>> find_vanishing_subset(const AbelianGroup& g,
                                                         const std::vector<GroupElement>& seq) {
  // prefix-sum construction: a vanishing prefix, or two equal prefix sums
  // bounding a vanishing interval
  std::map<GroupElement, int> seen;  // prefix value -> end position
  GroupElement acc = g.zero();
  seen[acc] = -1;
  for (int i = 0; i < int(seq.size()); ++i) {
    acc = add(g, acc, seq[i]);
    auto it = seen.find(acc);
    if (it != seen.end()) return std::make_pair(it->second + 1, i);
    seen[acc] = i;
  }
  return std::nullopt;
}

}  // namespace gctuf
