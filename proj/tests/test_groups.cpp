#include <doctest.h>

#include <algorithm>
#include <set>

#include "groups.hpp"

using namespace gctuf;

namespace {

GroupElement el(std::vector<int64_t> r) { return GroupElement{std::move(r)}; }

// Independent oracle: a subset of G is a subgroup iff it contains zero and is
// closed under addition and negation. Enumerates all subsets.
std::set<std::vector<GroupElement>> subgroups_by_subset_enumeration(const AbelianGroup& g) {
  auto elems = g.all_elements();
  int64_t o = g.order();
  std::set<std::vector<GroupElement>> out;
  for (int64_t mask = 1; mask < (int64_t(1) << o); ++mask) {
    std::vector<GroupElement> sub;
    for (int64_t i = 0; i < o; ++i)
      if (mask & (int64_t(1) << i)) sub.push_back(elems[size_t(i)]);
    auto in = [&](const GroupElement& e) {
      return std::binary_search(sub.begin(), sub.end(), e);
    };
    if (!in(g.zero())) continue;
    bool closed = true;
    for (const auto& a : sub) {
      if (!in(neg(g, a))) closed = false;
      for (const auto& b : sub)
        if (!in(add(g, a, b))) closed = false;
    }
    if (closed) out.insert(sub);
  }
  return out;
}

std::vector<AbelianGroup> groups_up_to_order(int64_t max_order) {
  // all multisets of cyclic factors >= 2 with product <= max_order, plus the
  // trivial group
  std::vector<AbelianGroup> out;
  out.push_back(AbelianGroup({1}));
  std::vector<int64_t> cur;
  std::function<void(int64_t, int64_t)> rec = [&](int64_t prod, int64_t min_f) {
    if (prod > 1) out.push_back(AbelianGroup(cur));
    for (int64_t f = min_f; prod * f <= max_order; ++f) {
      cur.push_back(f);
      rec(prod * f, f);
      cur.pop_back();
    }
  };
  rec(1, 2);
  return out;
}

}  // namespace

TEST_CASE("group addition") {
  AbelianGroup z22({2, 2});
  CHECK(add(z22, el({1, 0}), el({1, 1})) == el({0, 1}));
  AbelianGroup z4({4});
  CHECK(add(z4, el({3}), el({3})) == el({2}));
  // identity case across a few groups
  for (const auto& g : groups_up_to_order(6))
    for (const auto& a : g.all_elements()) CHECK(add(g, a, g.zero()) == a);
  CHECK_THROWS_AS(add(z4, el({3}), el({1, 1})), error);
}

TEST_CASE("scalar multiplication") {
  AbelianGroup z4({4});
  CHECK(scalar_mul(z4, 3, el({1})) == el({3}));
  CHECK(scalar_mul(z4, -1, el({1})) == el({3}));
  AbelianGroup z23({2, 3});
  CHECK(scalar_mul(z23, 6, el({1, 1})) == el({0, 0}));
}

TEST_CASE("subgroup generated by an element") {
  AbelianGroup z4({4});
  auto h = subgroup_generated(z4, el({2}));
  CHECK(h.elements == std::vector<GroupElement>{el({0}), el({2})});
  CHECK(subgroup_generated(z4, z4.zero()).elements == std::vector<GroupElement>{el({0})});
  AbelianGroup z22({2, 2});
  auto d = subgroup_generated(z22, el({1, 1}));
  CHECK(d.elements == std::vector<GroupElement>{el({0, 0}), el({1, 1})});
}

TEST_CASE("all_subgroups matches subset-enumeration oracle") {
  for (const auto& g : groups_up_to_order(8)) {
    auto subs = all_subgroups(g);
    std::set<std::vector<GroupElement>> got;
    for (const auto& h : subs) {
      CHECK(g.order() % h.size() == 0);  // Lagrange
      got.insert(h.elements);
    }
    CHECK(got.size() == subs.size());  // exactly once each
    CHECK(got == subgroups_by_subset_enumeration(g));
  }
  CHECK(all_subgroups(AbelianGroup({4})).size() == 3);
  CHECK(all_subgroups(AbelianGroup({5})).size() == 2);
  CHECK(all_subgroups(AbelianGroup({2, 2})).size() == 5);
}

TEST_CASE("coset union test agrees with brute force") {
  AbelianGroup z4({4});
  Subgroup h = subgroup_generated(z4, el({2}));
  CHECK(is_coset_union(z4, TargetSet::of(z4, {el({1}), el({3})}), h));
  CHECK_FALSE(is_coset_union(z4, TargetSet::of(z4, {el({3})}), h));

  for (const auto& g : groups_up_to_order(8)) {
    auto elems = g.all_elements();
    int64_t o = g.order();
    for (const auto& h : all_subgroups(g)) {
      for (int64_t mask = 1; mask < (int64_t(1) << o); ++mask) {
        std::vector<GroupElement> relems;
        for (int64_t i = 0; i < o; ++i)
          if (mask & (int64_t(1) << i)) relems.push_back(elems[size_t(i)]);
        TargetSet r = TargetSet::of(g, relems);
        // brute force R + H
        std::set<GroupElement> sum;
        for (const auto& a : r.elements)
          for (const auto& b : h.elements) sum.insert(add(g, a, b));
        bool expect = std::vector<GroupElement>(sum.begin(), sum.end()) == r.elements;
        CHECK(is_coset_union(g, r, h) == expect);
      }
      if (o > 5) break;  // keep the exhaustive part for small groups only
    }
  }
}

TEST_CASE("quotient groups") {
  AbelianGroup z4({4});
  Subgroup h = subgroup_generated(z4, el({2}));
  Quotient q = quotient(z4, h);
  CHECK(q.group.order() == 2);
  CHECK(q.apply(z4, el({1})) == q.group.element_at(1));
  CHECK(q.apply(z4, el({2})) == q.group.zero());

  // G / {0} isomorphic to G; G / G trivial
  Quotient qid = quotient(z4, subgroup_generated(z4, z4.zero()));
  CHECK(qid.group.order() == 4);
  Quotient qall = quotient(z4, Subgroup{z4.all_elements()});
  CHECK(qall.group.order() == 1);

  for (const auto& g : groups_up_to_order(8)) {
    for (const auto& h : all_subgroups(g)) {
      Quotient qq = quotient(g, h);
      CHECK(qq.group.order() * h.size() == g.order());
      // kernel is exactly H; map is a surjective homomorphism
      std::set<GroupElement> image;
      for (const auto& a : g.all_elements()) {
        image.insert(qq.apply(g, a));
        bool in_kernel = qq.apply(g, a) == qq.group.zero();
        CHECK(in_kernel == h.contains(a));
        for (const auto& b : g.all_elements()) {
          CHECK(qq.apply(g, add(g, a, b)) ==
                add(qq.group, qq.apply(g, a), qq.apply(g, b)));
        }
      }
      CHECK(int64_t(image.size()) == qq.group.order());
    }
  }
}

TEST_CASE("vanishing subset via prefix sums") {
  AbelianGroup z3({3});
  auto r = find_vanishing_subset(z3, {el({1}), el({1}), el({1})});
  REQUIRE(r.has_value());
  CHECK(*r == std::make_pair(0, 2));

  AbelianGroup z2({2});
  auto r2 = find_vanishing_subset(z2, {z2.zero()});
  REQUIRE(r2.has_value());
  CHECK(*r2 == std::make_pair(0, 0));
  auto r3 = find_vanishing_subset(z2, {el({1}), el({1})});
  REQUIRE(r3.has_value());
  CHECK(*r3 == std::make_pair(0, 1));

  // every sequence of length |G| admits a vanishing interval (orders <= 5
  // here; the acceptance suite covers <= 6)
  for (const auto& g : groups_up_to_order(5)) {
    int64_t o = g.order();
    std::vector<int64_t> idx(size_t(o), 0);
    while (true) {
      std::vector<GroupElement> seq;
      for (int64_t i : idx) seq.push_back(g.element_at(i));
      auto iv = find_vanishing_subset(g, seq);
      REQUIRE(iv.has_value());
      GroupElement s = g.zero();
      for (int i = iv->first; i <= iv->second; ++i) s = add(g, s, seq[size_t(i)]);
      CHECK(s == g.zero());
      // next tuple
      int pos = int(o) - 1;
      while (pos >= 0 && idx[size_t(pos)] == o - 1) idx[size_t(pos--)] = 0;
      if (pos < 0) break;
      idx[size_t(pos)]++;
    }
  }
}

TEST_CASE("sumset pigeonhole for non-coset-union targets") {
  // On groups of order <= 6 here; the acceptance suite runs order <= 8.
  for (const auto& g : groups_up_to_order(6)) {
    auto elems = g.all_elements();
    int64_t o = g.order();
    auto subs = all_subgroups(g);
    for (int64_t rmask = 1; rmask < (int64_t(1) << o); ++rmask) {
      std::vector<GroupElement> relems;
      for (int64_t i = 0; i < o; ++i)
        if (rmask & (int64_t(1) << i)) relems.push_back(elems[size_t(i)]);
      TargetSet r = TargetSet::of(g, relems);
      bool coset_free = true;
      for (const auto& h : subs) {
        if (h.trivial()) continue;
        if (is_coset_union(g, r, h)) {
          coset_free = false;
          break;
        }
      }
      if (!coset_free) continue;
      int64_t d = o - r.size();
      for (int64_t xmask = 0; xmask < (int64_t(1) << o); ++xmask) {
        if (__builtin_popcountll(uint64_t(xmask)) != d) continue;
        for (int64_t ymask = 0; ymask < (int64_t(1) << o); ++ymask) {
          if (__builtin_popcountll(uint64_t(ymask)) < 2) continue;
          bool hit = false;
          for (int64_t i = 0; i < o && !hit; ++i) {
            if (!(xmask & (int64_t(1) << i))) continue;
            for (int64_t j = 0; j < o && !hit; ++j) {
              if (!(ymask & (int64_t(1) << j))) continue;
              if (r.contains(add(g, elems[size_t(i)], elems[size_t(j)]))) hit = true;
            }
          }
          CHECK(hit);
        }
      }
    }
  }
}

TEST_CASE("invariant factor normalization") {
  CHECK(normalized(AbelianGroup({2, 3})).moduli == std::vector<int64_t>{6});
  CHECK(normalized(AbelianGroup({4, 2})).moduli == std::vector<int64_t>{2, 4});
  CHECK(normalized(AbelianGroup({1, 1})).moduli.empty());
}
