#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "pip.hpp"

namespace catgeo {

struct GridResult {
  double value;
  double stretch_bound;  // worst-case metric stretch of the grid graph
};

namespace detail {

// grid key: one integer per element, K encodes exact 1.0
using GridKey = std::vector<int>;

inline double grid_coord(int k, int K, double h) {
  return k == K ? 1.0 : k * h;
}

} // namespace detail

// Shortest path between x and y over grid points of pitch h laid on every
// cell, with intra-cell arcs up to Chebyshev radius r. An independent
// estimator: it never undershoots d(x,y) by more than the snapping error
// and never overshoots by more than the stretch factor sec(pi/(4r)).
inline GridResult grid_distance(const Pip& p, const Point& x, const Point& y,
                                double h, int r) {
  if (!(h > 0) || h > 0.25) throw ValidationError("h must lie in (0, 0.25]");
  if (r < 1 || r > 3) throw ValidationError("r must be 1, 2 or 3");
  const int K = static_cast<int>(std::llround(1.0 / h));
  if (std::fabs(K - 1.0 / h) > 1e-9)
    throw ValidationError("1/h must be an integer");
  minimal_cell(p, x);
  minimal_cell(p, y);

  std::vector<Bits> ideals;
  try {
    ideals = enumerate_ideals(p, 10000);
  } catch (const TooManyIdeals&) {
    throw TooLarge("complex too large for the grid oracle");
  }

  const int m = p.size();
  std::map<detail::GridKey, int> node_of;
  std::vector<std::vector<std::pair<int, double>>> adj;
  auto intern = [&](const detail::GridKey& key) {
    auto [it, fresh] = node_of.emplace(key, static_cast<int>(adj.size()));
    if (fresh) {
      adj.emplace_back();
      if (adj.size() > 2000000)
        throw TooLarge("grid oracle node cap exceeded");
    }
    return it->second;
  };

  // enumerate each ideal's top cell (I, Max(I)); faces appear as boundary
  // grid points and dedup through the exact integer keys
  for (const Bits& ideal : ideals) {
    Bits maxi = maximal_of(p, ideal);
    std::vector<int> axes;
    for_each_bit(maxi, [&](int i) { axes.push_back(i); });
    const int dim = static_cast<int>(axes.size());

    detail::GridKey base(m, 0);
    for_each_bit(ideal, [&](int i) { base[i] = K; });

    std::vector<int> ks(dim, 0);
    std::vector<int> cell_nodes;
    for (;;) {  // odometer over {0..K}^dim
      detail::GridKey key = base;
      for (int d = 0; d < dim; ++d) key[axes[d]] = ks[d];
      cell_nodes.push_back(intern(key));
      int d = 0;
      while (d < dim && ks[d] == K) ks[d++] = 0;
      if (d == dim) break;
      ++ks[d];
    }

    // arcs: lexicographically positive offsets within Chebyshev radius r
    std::vector<std::vector<int>> offsets;
    std::vector<double> offlen;
    {
      std::vector<int> o(dim, -r);
      for (;;) {
        bool positive = false;
        for (int d = dim - 1; d >= 0; --d)
          if (o[d] != 0) {
            positive = o[d] > 0;
            break;
          }
        if (positive) {
          double q = 0;
          for (int v : o) q += static_cast<double>(v) * v;
          offsets.push_back(o);
          offlen.push_back(h * std::sqrt(q));
        }
        int d = 0;
        while (d < dim && o[d] == r) o[d++] = -r;
        if (d == dim) break;
        ++o[d];
      }
    }

    std::vector<int> stride(dim);  // node index arithmetic inside the cell
    for (int d = 0; d < dim; ++d)
      stride[d] = d == 0 ? 1 : stride[d - 1] * (K + 1);
    std::fill(ks.begin(), ks.end(), 0);
    for (long long idx = 0;; ++idx) {
      for (std::size_t oi = 0; oi < offsets.size(); ++oi) {
        long long jdx = idx;
        bool ok = true;
        for (int d = 0; d < dim && ok; ++d) {
          int kk = ks[d] + offsets[oi][d];
          if (kk < 0 || kk > K) ok = false;
          jdx += static_cast<long long>(offsets[oi][d]) * stride[d];
        }
        if (!ok) continue;
        int u = cell_nodes[idx], v = cell_nodes[jdx];
        adj[u].emplace_back(v, offlen[oi]);
        adj[v].emplace_back(u, offlen[oi]);
      }
      int d = 0;
      while (d < dim && ks[d] == K) ks[d++] = 0;
      if (d == dim) break;
      ++ks[d];
    }
  }

  auto key_of_point = [&](const Point& pt) {
    detail::GridKey key(m, 0);
    Point s = snap_point(pt);
    for (int i = 0; i < m; ++i)
      key[i] = std::clamp(
          static_cast<int>(std::llround(s[i] / h)), 0, K);
    return key;
  };

  auto it_src = node_of.find(key_of_point(x));
  auto it_dst = node_of.find(key_of_point(y));
  if (it_src == node_of.end() || it_dst == node_of.end())
    throw NotInComplex("snapped endpoint is not a grid node");
  int src = it_src->second, dst = it_dst->second;

  std::vector<double> dist(adj.size(), 1e300);
  std::priority_queue<std::pair<double, int>,
                      std::vector<std::pair<double, int>>,
                      std::greater<>>
      heap;
  dist[src] = 0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    for (auto& [v, w] : adj[u])
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
  }
  return {dist[dst], 1.0 / std::cos(3.14159265358979323846 / (4.0 * r))};
}

// Exact geodesic length when x and y sit in two distinct squares glued
// along an edge and the connecting segment crosses that edge's interior:
// lay both squares flat and measure the straight line.
inline double unfold_two_cells(const Pip& p, const Point& x_in,
                               const Point& y_in) {
  Point x = snap_point(x_in), y = snap_point(y_in);
  minimal_cell(p, x);
  minimal_cell(p, y);

  std::vector<Bits> ideals;
  try {
    ideals = enumerate_ideals(p, 10000);
  } catch (const TooManyIdeals&) {
    throw TooLarge("complex too large for the unfolding oracle");
  }

  struct Square {
    Bits I;
    int m1, m2;  // the two fractional axes
  };
  std::vector<Square> squares;
  for (const Bits& ideal : ideals) {
    std::vector<int> maxi;
    for_each_bit(maximal_of(p, ideal), [&](int i) { maxi.push_back(i); });
    for (std::size_t i = 0; i < maxi.size(); ++i)
      for (std::size_t j = i + 1; j < maxi.size(); ++j)
        squares.push_back({ideal, maxi[i], maxi[j]});
  }

  auto contains = [&](const Square& s, const Point& pt) {
    for (int i = 0; i < p.size(); ++i) {
      bool frac = i == s.m1 || i == s.m2;
      double want = s.I.test(i) ? 1.0 : 0.0;
      if (!frac && pt[i] != want) return false;
    }
    return true;
  };

  std::vector<int> in_x, in_y;
  for (std::size_t s = 0; s < squares.size(); ++s) {
    if (contains(squares[s], x)) in_x.push_back(static_cast<int>(s));
    if (contains(squares[s], y)) in_y.push_back(static_cast<int>(s));
  }
  for (int sx : in_x)
    for (int sy : in_y)
      if (sx == sy)
        throw NotApplicable("points share a square");

  // edges of square (I,{m1,m2}): fix one fractional axis to 0 or 1
  struct EdgeId {
    Bits J;
    int e;
    bool operator<(const EdgeId& o) const {
      if (e != o.e) return e < o.e;
      return J < o.J;
    }
  };
  auto edges_of = [&](const Square& s) {
    std::vector<std::pair<EdgeId, int>> out;  // edge, fixed axis
    for (int fixed : {s.m1, s.m2}) {
      int e = fixed == s.m1 ? s.m2 : s.m1;
      Bits j0 = s.I;
      j0.reset(fixed);
      out.push_back({{j0, e}, fixed});
      out.push_back({{s.I, e}, fixed});
    }
    return out;
  };

  double best = -1;
  for (int sx : in_x) {
    for (int sy : in_y) {
      for (auto& [e1, f1] : edges_of(squares[sx])) {
        for (auto& [e2, f2] : edges_of(squares[sy])) {
          if (e2 < e1 || e1 < e2) continue;  // same edge cell required
          int axis = e1.e;
          // offset of each point from the shared edge inside its square
          double u1 = e1.J.test(f1) ? 1.0 - x[f1] : x[f1];
          double u2 = e2.J.test(f2) ? 1.0 - y[f2] : y[f2];
          if (!(u1 > 0) || !(u2 > 0)) continue;
          double c = x[axis] + (y[axis] - x[axis]) * (u1 / (u1 + u2));
          if (!(c > 0) || !(c < 1)) continue;  // must cross the interior
          double dx = x[axis] - y[axis], dv = u1 + u2;
          double cand = std::sqrt(dx * dx + dv * dv);
          if (best < 0 || cand < best) best = cand;
        }
      }
    }
  }
  if (best < 0)
    throw NotApplicable("no shared edge crossed in the interior");
  return best;
}

} // namespace catgeo
