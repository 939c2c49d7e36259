#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"

namespace catgeo {

// Element subsets are bitmasks over the element file order: bit i = element i.
// Numeric comparison of Bits therefore realizes the canonical subset order
// (first element = least significant bit).
using Bits = boost::dynamic_bitset<>;

constexpr std::size_t kMaxElements = 1u << 16;

struct Pip {
  std::vector<std::string> elements;           // file order
  std::unordered_map<std::string, int> index;  // name -> position
  std::vector<std::pair<int, int>> covers;     // (lower, upper) as given
  std::vector<std::pair<int, int>> inconsistent_min;  // as given

  // derived; all include reflexivity where it makes sense
  std::vector<Bits> up;    // up[i] = { j : i <= j }, contains i
  std::vector<Bits> down;  // down[i] = { j : j <= i }, contains i
  std::vector<Bits> inc;   // inc[i] = { j : i ~ j }, upward closure, irreflexive

  int size() const { return static_cast<int>(elements.size()); }
  bool le(int i, int j) const { return up[i].test(j); }
  bool lt(int i, int j) const { return i != j && up[i].test(j); }
  bool incomparable(int i, int j) const {
    return i != j && !up[i].test(j) && !up[j].test(i);
  }
  bool inconsistent(int i, int j) const { return inc[i].test(j); }

  Bits empty_set() const { return Bits(size()); }
  Bits full_set() const {
    Bits b(size());
    b.set();
    return b;
  }
};

inline void for_each_bit(const Bits& s, const auto& f) {
  for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i))
    f(static_cast<int>(i));
}

// Constructs the derived relations and validates the structural rules.
// Throws ValidationError on: cover cycle, or any derived inconsistent pair
// whose members are comparable (this also rejects reflexive pairs).
inline Pip make_pip(std::vector<std::string> elements,
                    std::vector<std::pair<int, int>> covers,
                    std::vector<std::pair<int, int>> inconsistent_min) {
  Pip p;
  if (elements.size() > kMaxElements)
    throw ValidationError("too many elements (cap " +
                          std::to_string(kMaxElements) + ")");
  p.elements = std::move(elements);
  const int m = p.size();
  for (int i = 0; i < m; ++i)
    if (!p.index.emplace(p.elements[i], i).second)
      throw ValidationError("duplicate element: " + p.elements[i]);
  p.covers = std::move(covers);
  p.inconsistent_min = std::move(inconsistent_min);

  auto in_range = [m](std::pair<int, int> e) {
    return 0 <= e.first && e.first < m && 0 <= e.second && e.second < m;
  };
  std::vector<std::vector<int>> above(m);  // cover successors
  std::vector<int> indeg(m, 0);
  for (auto& [a, b] : p.covers) {
    if (!in_range({a, b})) throw ValidationError("cover index out of range");
    if (a == b) throw ValidationError("cover relates an element to itself");
    above[a].push_back(b);
    ++indeg[b];
  }
  for (auto& e : p.inconsistent_min)
    if (!in_range(e))
      throw ValidationError("inconsistent pair index out of range");

  // Kahn; also yields a topological order for the closure sweep.
  std::vector<int> topo;
  topo.reserve(m);
  {
    std::vector<int> stack;
    for (int i = m - 1; i >= 0; --i)
      if (indeg[i] == 0) stack.push_back(i);
    std::vector<int> deg = indeg;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      topo.push_back(v);
      for (int w : above[v])
        if (--deg[w] == 0) stack.push_back(w);
    }
    if (static_cast<int>(topo.size()) != m)
      throw ValidationError("cycle in covers");
  }

  p.up.assign(m, Bits(m));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int v = *it;
    p.up[v].set(v);
    for (int w : above[v]) p.up[v] |= p.up[w];
  }
  p.down.assign(m, Bits(m));
  for (int i = 0; i < m; ++i)
    for_each_bit(p.up[i], [&](int j) { p.down[j].set(i); });

  p.inc.assign(m, Bits(m));
  for (auto& [a, b] : p.inconsistent_min) {
    for_each_bit(p.up[a], [&](int x) { p.inc[x] |= p.up[b]; });
    for_each_bit(p.up[b], [&](int x) { p.inc[x] |= p.up[a]; });
  }

  // every derived pair must be incomparable (comparable includes equality)
  for (int i = 0; i < m; ++i) {
    Bits comparable = p.up[i] | p.down[i];
    comparable &= p.inc[i];
    if (comparable.any()) {
      int j = static_cast<int>(comparable.find_first());
      throw ValidationError("inconsistent pair {" + p.elements[i] + "," +
                            p.elements[j] + "} has comparable members");
    }
  }
  return p;
}

inline bool is_consistent_ideal(const Pip& p, const Bits& s) {
  for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) {
    if (!p.down[i].is_subset_of(s)) return false;
    if ((p.inc[i] & s).any()) return false;
  }
  return true;
}

inline Bits maximal_of(const Pip& p, const Bits& s) {
  Bits out(p.size());
  for_each_bit(s, [&](int i) {
    if ((p.up[i] & s).count() == 1) out.set(i);
  });
  return out;
}

// elements a with V + a still a consistent ideal
inline Bits addable_of(const Pip& p, const Bits& v) {
  Bits out(p.size());
  for (int a = 0; a < p.size(); ++a) {
    if (v.test(a)) continue;
    Bits lower = p.down[a];
    lower.reset(a);
    if (!lower.is_subset_of(v)) continue;
    if ((p.inc[a] & v).any()) continue;
    out.set(a);
  }
  return out;
}

// canonical order: size ascending, then bitmask value ascending
inline bool canonical_less(const Bits& a, const Bits& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return a < b;
}

inline std::vector<Bits> enumerate_ideals(const Pip& p, std::size_t limit) {
  if (limit < 1) throw ValidationError("limit must be >= 1");
  std::set<Bits> seen;
  std::vector<Bits> queue;
  queue.push_back(p.empty_set());
  seen.insert(queue.back());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Bits cur = queue[head];
    Bits adds = addable_of(p, cur);
    for_each_bit(adds, [&](int a) {
      Bits next = cur;
      next.set(a);
      if (seen.insert(next).second) queue.push_back(next);
    });
    if (seen.size() > limit)
      throw TooManyIdeals("more than " + std::to_string(limit) +
                          " consistent ideals");
  }
  std::sort(queue.begin(), queue.end(), canonical_less);
  return queue;
}

// Topological order of the restriction of the poset to s, smallest index
// first among the available elements. For a consistent ideal this is the
// linear extension with every prefix an ideal.
inline std::vector<int> restricted_topo_order(const Pip& p, const Bits& s) {
  std::vector<int> out;
  out.reserve(s.count());
  Bits placed(p.size());
  Bits remaining = s;
  while (remaining.any()) {
    int pick = -1;
    for (auto i = remaining.find_first(); i != Bits::npos;
         i = remaining.find_next(i)) {
      Bits below = p.down[i] & s;
      below.reset(i);
      if (below.is_subset_of(placed)) {
        pick = static_cast<int>(i);
        break;
      }
    }
    out.push_back(pick);
    placed.set(pick);
    remaining.reset(pick);
  }
  return out;
}

inline std::vector<int> linear_extension(const Pip& p, const Bits& ideal) {
  return restricted_topo_order(p, ideal);
}

} // namespace catgeo
