#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace catgeo {

// point of an orthant space: axis -> coordinate, absent axes are 0
using Local = std::map<int, double>;

constexpr double kTauCover = 1e-12;  // covers below 1 - this still split
constexpr double kTauSort = 1e-9;    // tolerated ratio disorder before repair

// hardware doubles cannot host finer dyadic grids on [0,1] without overflow
constexpr int kMaxPrecisionBits = 62;

struct Block {
  std::vector<int> A, B;  // shrinking source axes, growing target axes
  double lambda = 0;      // l2 norm of x over A
  double mu = 0;          // l2 norm of y over B
};

struct GeodesicDesc {
  Local x, y;               // endpoints, zero entries dropped
  std::vector<int> common;  // axes present in both supports
  std::vector<Block> blocks;
  double length = 0;
};

struct CoverResult {
  double value;
  std::vector<int> cover_a, cover_b;  // indices into the weight arrays
};

// Min-weight vertex cover of a bipartite graph as the min cut of the
// classic network: source->a_i (weight), a->b infinite per edge, b_j->sink
// (weight). Edmonds-Karp; deterministic because adjacency order is fixed
// by construction order.
inline CoverResult min_weight_vertex_cover(
    const std::vector<double>& wa, const std::vector<double>& wb,
    std::vector<std::pair<int, int>> edges) {
  const int na = static_cast<int>(wa.size());
  const int nb = static_cast<int>(wb.size());
  const int S = 0, T = na + nb + 1, nv = na + nb + 2;
  const double kInf = std::numeric_limits<double>::infinity();

  std::vector<int> head(nv, -1), nxt, to;
  std::vector<double> cap;
  auto add_edge = [&](int u, int v, double c) {
    to.push_back(v), cap.push_back(c), nxt.push_back(head[u]);
    head[u] = static_cast<int>(to.size()) - 1;
    to.push_back(u), cap.push_back(0), nxt.push_back(head[v]);
    head[v] = static_cast<int>(to.size()) - 1;
  };
  for (int i = 0; i < na; ++i) add_edge(S, 1 + i, wa[i]);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto& [a, b] : edges) add_edge(1 + a, 1 + na + b, kInf);
  for (int j = 0; j < nb; ++j) add_edge(1 + na + j, T, wb[j]);

  std::vector<int> pre(nv);  // incoming residual edge per vertex, -1 unseen
  auto bfs = [&] {
    std::fill(pre.begin(), pre.end(), -1);
    pre[S] = -2;
    std::vector<int> q{S};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int e = head[q[h]]; e != -1; e = nxt[e])
        if (cap[e] > 0 && pre[to[e]] == -1) pre[to[e]] = e, q.push_back(to[e]);
  };
  for (;;) {
    bfs();
    if (pre[T] == -1) break;
    double aug = kInf;
    for (int v = T; v != S; v = to[pre[v] ^ 1])
      aug = std::min(aug, cap[pre[v]]);
    for (int v = T; v != S; v = to[pre[v] ^ 1])
      cap[pre[v]] -= aug, cap[pre[v] ^ 1] += aug;
  }

  // cut: unreachable a's and reachable b's; recompute the value from the
  // weights rather than trusting accumulated flow arithmetic
  CoverResult r{0.0, {}, {}};
  for (int i = 0; i < na; ++i)
    if (pre[1 + i] == -1) r.cover_a.push_back(i), r.value += wa[i];
  for (int j = 0; j < nb; ++j)
    if (pre[1 + na + j] != -1) r.cover_b.push_back(j), r.value += wb[j];
  return r;
}

namespace detail {

inline double norm_over(const Local& m, const std::vector<int>& axes) {
  double q = 0;
  for (int e : axes) {
    double v = m.at(e);
    q += v * v;
  }
  return std::sqrt(q);
}

template <class Compat>
Block make_block(const Local& x, const Local& y, std::vector<int> a,
                 std::vector<int> b, Compat&&) {
  Block blk;
  blk.lambda = norm_over(x, a);
  blk.mu = norm_over(y, b);
  blk.A = std::move(a);
  blk.B = std::move(b);
  return blk;
}

// ratio conventions: an empty-A block sorts first, an empty-B block last
inline double block_ratio(const Block& b) {
  if (b.mu == 0) return std::numeric_limits<double>::infinity();
  return b.lambda / b.mu;
}

inline bool ratios_sorted(const std::vector<Block>& blocks) {
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
    if (block_ratio(blocks[i]) > block_ratio(blocks[i + 1]) + kTauSort)
      return false;
  return true;
}

// Splits every block whose min-weight vertex cover certifies a shortcut.
// The cover C1 u D2 yields children (C1, B\D2), (A\C1, D2); cover weight
// < 1 forces both leftover sides nonempty, and the uncovered pairs (all
// compatible) become the new cross-block pairs, so validity is preserved.
// Block count strictly grows, which bounds the loop.
template <class Compat>
void split_blocks(std::vector<Block>& blocks, const Local& x, const Local& y,
                  Compat&& compat) {
  int budget = 4 * static_cast<int>(x.size() + y.size()) + 16;
  std::size_t i = 0;
  while (i < blocks.size()) {
    Block& blk = blocks[i];
    if (blk.A.empty() || blk.B.empty()) {
      ++i;
      continue;
    }
    std::vector<double> wa, wb;
    for (int e : blk.A) {
      double v = x.at(e) / blk.lambda;
      wa.push_back(v * v);
    }
    for (int e : blk.B) {
      double v = y.at(e) / blk.mu;
      wb.push_back(v * v);
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t ai = 0; ai < blk.A.size(); ++ai)
      for (std::size_t bi = 0; bi < blk.B.size(); ++bi)
        if (!compat(blk.A[ai], blk.B[bi]))
          edges.emplace_back(static_cast<int>(ai), static_cast<int>(bi));
    CoverResult cover = min_weight_vertex_cover(wa, wb, edges);
    if (cover.value >= 1.0 - kTauCover) {
      ++i;
      continue;
    }
    if (--budget < 0) throw PrecisionLoss("block splitting did not settle");
    std::vector<char> inA(blk.A.size(), 0), inB(blk.B.size(), 0);
    for (int ai : cover.cover_a) inA[ai] = 1;
    for (int bi : cover.cover_b) inB[bi] = 1;
    std::vector<int> c1, c2, d1, d2;
    for (std::size_t ai = 0; ai < blk.A.size(); ++ai)
      (inA[ai] ? c1 : c2).push_back(blk.A[ai]);
    for (std::size_t bi = 0; bi < blk.B.size(); ++bi)
      (inB[bi] ? d2 : d1).push_back(blk.B[bi]);
    Block first = make_block(x, y, std::move(c1), std::move(d1), compat);
    Block second = make_block(x, y, std::move(c2), std::move(d2), compat);
    blocks[i] = std::move(first);
    blocks.insert(blocks.begin() + i + 1, std::move(second));
    // re-examine the first child in place
  }
}

} // namespace detail

// Geodesic between two points of a (truncated) orthant space whose axis
// compatibility graph is given by `compat`. Runs the split refinement from
// the single full block; the result satisfies validity, sorted ratios, and
// cover optimality, which certify the true geodesic.
template <class Compat>
GeodesicDesc gtp_solve(const Local& x_in, const Local& y_in, Compat&& compat) {
  GeodesicDesc g;
  for (auto& [e, v] : x_in)
    if (v != 0.0) g.x[e] = v;
  for (auto& [e, v] : y_in)
    if (v != 0.0) g.y[e] = v;

  std::vector<int> sx, sy;
  for (auto& [e, v] : g.x) sx.push_back(e);
  for (auto& [e, v] : g.y) sy.push_back(e);
  for (std::size_t i = 0; i < sx.size(); ++i)
    for (std::size_t j = i + 1; j < sx.size(); ++j)
      if (!compat(sx[i], sx[j]))
        throw IncompatibleSupport("source support is not a simplex");
  for (std::size_t i = 0; i < sy.size(); ++i)
    for (std::size_t j = i + 1; j < sy.size(); ++j)
      if (!compat(sy[i], sy[j]))
        throw IncompatibleSupport("target support is not a simplex");

  std::vector<int> a0, b0;
  std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(),
                        std::back_inserter(g.common));
  std::set_difference(sx.begin(), sx.end(), sy.begin(), sy.end(),
                      std::back_inserter(a0));
  std::set_difference(sy.begin(), sy.end(), sx.begin(), sx.end(),
                      std::back_inserter(b0));

  if (!a0.empty() || !b0.empty()) {
    bool splittable = !a0.empty() && !b0.empty();
    g.blocks.push_back(
        detail::make_block(g.x, g.y, std::move(a0), std::move(b0), compat));
    if (splittable) {
      detail::split_blocks(g.blocks, g.x, g.y, compat);
      if (!detail::ratios_sorted(g.blocks)) {
        // merge each out-of-order run and give the refinement one retry
        std::vector<Block> merged;
        for (Block& b : g.blocks) {
          if (!merged.empty() &&
              detail::block_ratio(merged.back()) >
                  detail::block_ratio(b) + kTauSort) {
            Block& m = merged.back();
            m.A.insert(m.A.end(), b.A.begin(), b.A.end());
            m.B.insert(m.B.end(), b.B.begin(), b.B.end());
            std::sort(m.A.begin(), m.A.end());
            std::sort(m.B.begin(), m.B.end());
            m.lambda = detail::norm_over(g.x, m.A);
            m.mu = detail::norm_over(g.y, m.B);
          } else {
            merged.push_back(std::move(b));
          }
        }
        g.blocks = std::move(merged);
        detail::split_blocks(g.blocks, g.x, g.y, compat);
        if (!detail::ratios_sorted(g.blocks))
          throw PrecisionLoss("geodesic blocks stay out of order");
      }
    }
  }

  double q = 0;
  for (const Block& b : g.blocks) {
    double s = b.lambda + b.mu;
    q += s * s;
  }
  for (int e : g.common) {
    double d = g.x.at(e) - g.y.at(e);
    q += d * d;
  }
  g.length = std::sqrt(q);
  return g;
}

// Point at parameter t. Factors are computed before scaling so evaluate(g,0)
// returns x and evaluate(g,1) returns y bit for bit.
inline Local evaluate(const GeodesicDesc& g, double t) {
  Local out;
  auto put = [&](int e, double v) {
    if (v != 0.0) out[e] = v;
  };
  for (int e : g.common) put(e, (1 - t) * g.x.at(e) + t * g.y.at(e));
  for (const Block& b : g.blocks) {
    if (!b.A.empty()) {
      double f = (b.mu == 0) ? (1 - t)
                             : std::max(0.0, (1 - t) * b.lambda - t * b.mu) /
                                   b.lambda;
      for (int e : b.A) put(e, g.x.at(e) * f);
    }
    if (!b.B.empty()) {
      double f = (b.lambda == 0)
                     ? t
                     : std::max(0.0, t * b.mu - (1 - t) * b.lambda) / b.mu;
      for (int e : b.B) put(e, g.y.at(e) * f);
    }
  }
  return out;
}

// Midpoint with every coordinate rounded to s fractional bits, chosen so the
// l2 perturbation stays below delta. delta <= 0 skips rounding. Rounding
// moves coordinates within the closed minimal cell, so validity survives.
inline Local midpoint(const GeodesicDesc& g, double delta,
                      int precision_bits = 53) {
  Local mid = evaluate(g, 0.5);
  if (delta <= 0 || g.length == 0) return mid;
  std::size_t dim = g.common.size();
  for (const Block& b : g.blocks) dim += b.A.size() + b.B.size();
  if (dim == 0) return mid;
  int s = static_cast<int>(
      std::ceil(std::log2(std::sqrt(static_cast<double>(dim)) / delta)));
  if (s > precision_bits || s > kMaxPrecisionBits)
    throw PrecisionLoss("midpoint needs " + std::to_string(s) +
                        " fractional bits, cap is " +
                        std::to_string(std::min(precision_bits,
                                                kMaxPrecisionBits)));
  if (s < 0) s = 0;
  Local out;
  for (auto& [e, v] : mid) {
    double r = std::ldexp(
        static_cast<double>(std::llround(std::ldexp(v, s))), -s);
    if (r != 0.0) out[e] = r;
  }
  return out;
}

// Exhaustive reference for small instances: minimum of the length formula
// over ordered partitions that are both valid and ratio-sorted. Sortedness
// is part of feasibility, not an optimization: the formula only measures a
// realizable path when ratios are nondecreasing, and an unsorted partition
// can score below the distance. Equal-ratio neighbors merge at equal cost,
// so strictly increasing ratios plus a single pure-growth block in front
// and a single pure-decay block at the back cover every candidate.
template <class Compat>
double brute_force_geodesic(const Local& x_in, const Local& y_in,
                            Compat&& compat) {
  Local x, y;
  for (auto& [e, v] : x_in)
    if (v != 0.0) x[e] = v;
  for (auto& [e, v] : y_in)
    if (v != 0.0) y[e] = v;
  std::vector<int> sx, sy, a0, b0, common;
  for (auto& [e, v] : x) sx.push_back(e);
  for (auto& [e, v] : y) sy.push_back(e);
  std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(),
                        std::back_inserter(common));
  std::set_difference(sx.begin(), sx.end(), sy.begin(), sy.end(),
                      std::back_inserter(a0));
  std::set_difference(sy.begin(), sy.end(), sx.begin(), sx.end(),
                      std::back_inserter(b0));
  const int na = static_cast<int>(a0.size());
  const int nb = static_cast<int>(b0.size());
  if (na > 6 || nb > 6)
    throw TooLarge("brute force limited to 6 axes per side");

  double cc = 0;
  for (int e : common) {
    double d = x.at(e) - y.at(e);
    cc += d * d;
  }

  // cm[i]: target axes compatible with source axis i; cmb[j]: transpose
  std::vector<unsigned> cm(na, 0), cmb(nb, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (compat(a0[i], b0[j])) cm[i] |= 1u << j, cmb[j] |= 1u << i;

  const unsigned fa = (1u << na) - 1, fb = (1u << nb) - 1;
  std::vector<double> wa2(1u << na, 0), wb2(1u << nb, 0);
  for (unsigned m = 1; m <= fa; ++m) {
    int i = std::countr_zero(m);
    double v = x.at(a0[i]);
    wa2[m] = wa2[m & (m - 1)] + v * v;
  }
  for (unsigned m = 1; m <= fb; ++m) {
    int j = std::countr_zero(m);
    double v = y.at(b0[j]);
    wb2[m] = wb2[m & (m - 1)] + v * v;
  }

  const double kInf = std::numeric_limits<double>::infinity();
  unsigned front_ok = fb;  // growth block must be compatible with every a
  for (int i = 0; i < na; ++i) front_ok &= cm[i];
  unsigned back_ok = 0;  // decay block must be compatible with every b
  for (int i = 0; i < na; ++i)
    if ((cm[i] & fb) == fb) back_ok |= 1u << i;

  double best = kInf;
  // middle blocks: both sides nonempty, ratios strictly increasing, every
  // source axis placed later compatible with the current target side
  auto walk = [&](auto&& self, unsigned ra, unsigned rb, double last_lam,
                  double last_mu, double sum) -> void {
    if (sum >= best) return;
    if (ra == 0 && rb == 0) {
      best = sum;
      return;
    }
    if (ra == 0 || rb == 0) return;
    for (unsigned c = ra; c; c = (c - 1) & ra) {
      unsigned later = ra & ~c;
      double lam = std::sqrt(wa2[c]);
      for (unsigned d = rb; d; d = (d - 1) & rb) {
        bool ok = true;
        for (unsigned dd = d; ok && dd; dd &= dd - 1)
          if (later & ~cmb[std::countr_zero(dd)]) ok = false;
        if (!ok) continue;
        double mu = std::sqrt(wb2[d]);
        if (lam * last_mu <= last_lam * mu) continue;  // ratio not above last
        double s = lam + mu;
        self(self, later, rb & ~d, lam, mu, sum + s * s);
      }
    }
  };

  unsigned d = front_ok;
  for (;;) {  // submasks of front_ok, full down to empty
    unsigned c = back_ok;
    for (;;) {
      walk(walk, fa & ~c, fb & ~d, 0.0, 1.0, wb2[d] + wa2[c]);
      if (c == 0) break;
      c = (c - 1) & back_ok;
    }
    if (d == 0) break;
    d = (d - 1) & front_ok;
  }
  return std::sqrt(best + cc);
}

} // namespace catgeo
