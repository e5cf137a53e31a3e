#include "types.hpp"

#include <algorithm>
#include <functional>

namespace gctuf {

namespace {

std::pair<IntMatrix, std::vector<Int>> fold_box(const IntMatrix& t, const std::vector<Int>& b,
                                                const std::optional<Box>& box) {
  if (!box) return {t, b};
  int n = t.cols();
  require(box->size() == n, errc::invalid, "box arity mismatch");
  std::vector<std::vector<Int>> extra;
  std::vector<Int> b2 = b;
  for (int j = 0; j < n; ++j) {
    require(box->lo[j] <= box->hi[j], errc::invalid, "box has lo > hi");
    std::vector<Int> up(n, Int(0)), down(n, Int(0));
    up[j] = 1;
    down[j] = -1;
    extra.push_back(up);
    b2.push_back(box->hi[j]);
    extra.push_back(down);
    b2.push_back(-box->lo[j]);
  }
  return {t.with_rows_appended(extra), b2};
}

}  // namespace

std::pair<IntMatrix, std::vector<Int>> GctufInstance::full_system() const {
  return fold_box(t, b, box);
}

void GctufInstance::validate() const {
  require(int(b.size()) == t.rows(), errc::invalid, "rhs length != row count");
  require(int(labels.size()) == t.cols(), errc::invalid, "label count != column count");
  for (const auto& l : labels)
    require(group.contains(l), errc::invalid, "label not in group");
  for (const auto& e : targets.elements)
    require(group.contains(e), errc::invalid, "target not in group");
  require(!targets.empty(), errc::invalid, "target set must be nonempty");
  if (box) require(box->size() == t.cols(), errc::invalid, "box arity mismatch");
}

bool GctufInstance::relaxation_ok(const std::vector<Int>& x) const {
  if (!satisfies(t, b, x)) return false;
  if (box)
    for (int j = 0; j < t.cols(); ++j)
      if (x[j] < box->lo[j] || x[j] > box->hi[j]) return false;
  return true;
}

bool GctufInstance::satisfied_by(const std::vector<Int>& x) const {
  return relaxation_ok(x) && targets.contains(combination(group, labels, x));
}

std::pair<IntMatrix, std::vector<Int>> IpInstance::full_system() const {
  return fold_box(a, b, box);
}

void IpInstance::validate() const {
  require(int(b.size()) == a.rows(), errc::invalid, "rhs length != row count");
  if (c) require(int(c->size()) == a.cols(), errc::invalid, "objective arity mismatch");
  if (box) require(box->size() == a.cols(), errc::invalid, "box arity mismatch");
}

std::pair<IntMatrix, std::vector<Int>> McctuInstance::full_system() const {
  return fold_box(t, b, box);
}

bool McctuInstance::congruent(const std::vector<Int>& x) const {
  for (const Congruency& cc : congruencies) {
    Int v = (dot(cc.gamma, x) - cc.r) % cc.m;
    if (v != 0) return false;
  }
  return true;
}

void CirculationInstance::validate() const {
  for (const GArc& a : arcs) {
    require(a.tail >= 0 && a.tail < nv && a.head >= 0 && a.head < nv, errc::invalid,
            "arc endpoint out of range");
    require(a.cap >= 0, errc::invalid, "negative capacity");
    require(group.contains(a.label), errc::invalid, "arc label not in group");
  }
  require(group.contains(target), errc::invalid, "circulation target not in group");
}

bool is_circulation(const CirculationInstance& inst, const Circulation& f) {
  if (f.size() != inst.arcs.size()) return false;
  std::vector<Int> net(inst.nv, Int(0));
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0 || f[i] > inst.arcs[i].cap) return false;
    net[inst.arcs[i].tail] += f[i];
    net[inst.arcs[i].head] -= f[i];
  }
  for (const Int& v : net)
    if (v != 0) return false;
  return true;
}

GroupElement group_value(const CirculationInstance& inst, const Circulation& f) {
  GroupElement acc = inst.group.zero();
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) acc = add(inst.group, acc, scalar_mul(inst.group, f[i], inst.arcs[i].label));
  return acc;
}

Int length_of(const std::vector<Int>& lengths, const Circulation& f) {
  Int s = 0;
  for (size_t i = 0; i < f.size(); ++i) s += lengths[i] * f[i];
  return s;
}

void LatticeDag::validate() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : arcs) {
    require(u >= 0 && u < n && v >= 0 && v < n, errc::invalid, "dag arc out of range");
    require(u != v, errc::invalid, "dag has a self-loop");
    adj[u].push_back(v);
  }
  // Kahn's algorithm for acyclicity
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : arcs) indeg[v]++;
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  int seen = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++seen;
    for (int v : adj[u])
      if (--indeg[v] == 0) stack.push_back(v);
  }
  require(seen == n, errc::invalid, "lattice digraph has a cycle");
}

void GclfInstance::validate() const {
  dag.validate();
  require(int(gamma.size()) == dag.n, errc::invalid, "gamma arity != ground set size");
  for (const auto& e : gamma)
    require(group.contains(e), errc::invalid, "gamma value not in group");
  require(group.contains(target), errc::invalid, "gclf target not in group");
}

}  // namespace gctuf
