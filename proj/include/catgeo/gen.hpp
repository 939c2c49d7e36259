#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pip.hpp"

namespace catgeo {

// deterministic draws shared by the generator and the test corpora
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return (eng() >> 11) * 0x1.0p-53; }
  int below(int n) { return static_cast<int>(eng() % static_cast<unsigned>(n)); }
};

inline std::string element_name(int i) {
  std::string s(1, static_cast<char>('a' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

// Random PIP: every pair is first marked inconsistent with probability
// `density` (lex order draws), then covers i < j are proposed with
// probability density/2 and accepted only while every marked pair keeps
// disjoint up-sets, which is exactly validity of the final instance.
// density 0 gives the free cube, density 1 an all-inconsistent antichain.
// The emitted instance stores the covering relation of the closure and the
// minimal marked pairs, so it reparses to an identical structure.
inline Pip gen_pip(int m, double density, std::uint64_t seed) {
  if (m < 1 || m > 1000) throw ValidationError("element count must be 1..1000");
  if (density < 0 || density > 1)
    throw ValidationError("density must lie in [0,1]");
  Rng rng(seed);

  std::vector<std::pair<int, int>> marked;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (rng.uniform() < density) marked.emplace_back(i, j);

  std::vector<Bits> up(m, Bits(m));
  for (int i = 0; i < m; ++i) up[i].set(i);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double u = rng.uniform();
      if (u >= density / 2) continue;
      if (up[i].test(j)) continue;  // already below j
      if (up[j].test(i)) continue;  // would close a cycle
      std::vector<Bits> next = up;
      for (int x = 0; x < m; ++x)
        if (up[x].test(i)) next[x] |= up[j];
      bool ok = true;
      for (auto& [a, b] : marked)
        if ((next[a] & next[b]).any()) {
          ok = false;
          break;
        }
      if (ok) up = std::move(next);
    }

  std::vector<std::pair<int, int>> covers;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x == y || !up[x].test(y)) continue;
      bool direct = true;
      for (auto z = up[x].find_first(); z != Bits::npos;
           z = up[x].find_next(z)) {
        if (static_cast<int>(z) == x || static_cast<int>(z) == y) continue;
        if (up[z].test(y)) {
          direct = false;
          break;
        }
      }
      if (direct) covers.emplace_back(x, y);
    }

  std::vector<Bits> down(m, Bits(m));
  for (int i = 0; i < m; ++i)
    for_each_bit(up[i], [&](int j) { down[j].set(i); });
  std::vector<std::pair<int, int>> minimal;
  for (std::size_t a = 0; a < marked.size(); ++a) {
    auto [i, j] = marked[a];
    bool keep = true;
    for (std::size_t b = 0; b < marked.size() && keep; ++b) {
      if (b == a) continue;
      auto [pq1, pq2] = marked[b];
      bool implies = (down[i].test(pq1) && down[j].test(pq2)) ||
                     (down[i].test(pq2) && down[j].test(pq1));
      if (implies) keep = false;
    }
    if (keep) minimal.emplace_back(i, j);
  }

  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back(element_name(i));
  return make_pip(std::move(names), std::move(covers), std::move(minimal));
}

} // namespace catgeo
