#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "complex.hpp"
#include "orthant.hpp"
#include "pip.hpp"
#include "star_geodesic.hpp"

namespace catgeo {

using Chain = std::vector<Point>;

struct RunParams {
  double eps = 1e-3;
  int precision_bits = 53;
  bool trace = false;       // record the per-sweep length trajectory
  bool early_exit = false;  // stop when successive lengths move < eps/10
};

struct RunStats {
  int n = 0;
  long long sweeps = 0;
  long long oracle_calls = 0;  // midpoint queries issued by sweeps
  double wall_ms = 0;
  double delta = 0;
  double initial_length = 0;
  double max_query_distance = 0;  // largest endpoint distance seen by a query
  int max_dyadic_exponent = 0;    // fractional bits of interior chain coords;
                                  // endpoints are caller data, echoed verbatim
  std::vector<double> lengths;    // trajectory, only when trace is on
};

struct RunResult {
  Chain chain;
  double length = 0;
  std::vector<StarGeodesic> segments;
  RunStats stats;
};

// fractional bits of v: least s >= 0 with v * 2^s integral (doubles are
// dyadic, so s <= 1074)
inline int dyadic_exponent(double v) {
  if (v == 0.0) return 0;
  int e;
  double f = std::frexp(std::fabs(v), &e);
  auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  int tz = std::countr_zero(mant);
  return std::max(0, 53 - tz - e);
}

inline double chain_length(const Pip& p, const Chain& c) {
  double total = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    total += star_distance(p, c[i], c[i + 1]);
  return total;
}

inline double gap(const Pip& p, const Chain& c) {
  if (c.size() < 2) return 0;
  double g = star_distance(p, c[0], c[1]);
  for (std::size_t i = 1; i + 1 < c.size(); ++i)
    g = std::max(g, 2 * star_distance(p, c[i], c[i + 1]));
  return g;
}

// One halving pass. The output is the reversed chain: z_0 = x_n, z_n = x_0,
// and each new interior point is the delta-midpoint of its already-placed
// neighbor with the old chain, z_{n-i} = mid(z_{n-i+1}, x_i). Endpoints are
// copies, never recomputed.
inline Chain halve_sweep(const Pip& p, const Chain& c, double delta,
                         int precision_bits = 53, RunStats* stats = nullptr) {
  const int n = static_cast<int>(c.size()) - 1;
  Chain z(n + 1);
  z[0] = c[n];
  z[n] = c[0];
  for (int i = 1; i <= n - 1; ++i) {
    StarGeodesic g = star_geodesic(p, z[n - i + 1], c[i]);
    if (stats) {
      ++stats->oracle_calls;
      stats->max_query_distance =
          std::max(stats->max_query_distance, g.desc.length);
    }
    z[n - i] = star_point(p, g.vertex, midpoint(g.desc, delta, precision_bits));
  }
  return z;
}

// Breakpoints of the endpoint geodesic at parameters (i+1)/(n+1): the
// doubled first spacing makes it the fixed point of the halving sweep.
inline Chain reference_chain(const Pip& p, const Chain& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Chain ref(n + 1);
  ref[0] = c[0];
  StarGeodesic g = star_geodesic(p, c[0], c[n]);
  for (int i = 1; i <= n; ++i)
    ref[i] = geodesic_point(
        p, g, static_cast<double>(i + 1) / static_cast<double>(n + 1));
  return ref;
}

namespace detail {

inline double round_to_bits(double v, int bits) {
  return std::ldexp(static_cast<double>(std::llround(std::ldexp(v, bits))),
                    -bits);
}

} // namespace detail

// Full pipeline: initial chain, schedule, k sweeps, final per-segment
// geodesics. Interior chain coordinates are committed to the same dyadic
// grid the midpoint oracle uses, so every coordinate the run ever emits
// carries O(log(|P|/delta)) fractional bits.
inline RunResult run(const Pip& p, const Point& src, const Point& dst,
                     const RunParams& params = {}) {
  if (!(params.eps > 0) || params.eps > 0.1)
    throw ValidationError("eps must lie in (0, 0.1]");
  auto t0 = std::chrono::steady_clock::now();

  RunResult r;
  r.chain = initial_chain(p, src, dst, params.eps);
  const int n = static_cast<int>(r.chain.size()) - 1;
  const double delta =
      params.eps / (16.0 * static_cast<double>(n) * n * n);
  r.stats.n = n;
  r.stats.delta = delta;

  int grid_bits = static_cast<int>(std::ceil(
                      std::log2(std::sqrt(static_cast<double>(p.size())) /
                                delta))) +
                  2;
  if (grid_bits > kMaxPrecisionBits || grid_bits > params.precision_bits)
    throw PrecisionLoss("initial chain needs " + std::to_string(grid_bits) +
                        " fractional bits, cap is " +
                        std::to_string(params.precision_bits));
  for (int i = 1; i < n; ++i)
    for (double& v : r.chain[i]) v = detail::round_to_bits(v, grid_bits);

  const double len0 = chain_length(p, r.chain);
  r.stats.initial_length = len0;
  long long k = 0;
  if (len0 > 0)
    k = std::max<long long>(
        0, static_cast<long long>(std::ceil(
               static_cast<double>(n) * n *
               std::log(4.0 * n * len0 / params.eps))));
  if (params.trace) r.stats.lengths.push_back(len0);

  double prev_len = len0;
  for (long long j = 1; j <= k; ++j) {
    r.chain = halve_sweep(p, r.chain, delta, params.precision_bits, &r.stats);
    ++r.stats.sweeps;
    if (params.trace || params.early_exit) {
      double len = chain_length(p, r.chain);
      if (params.trace) r.stats.lengths.push_back(len);
      if (params.early_exit && std::fabs(len - prev_len) < params.eps / 10)
        break;
      prev_len = len;
    }
  }
  if (r.stats.sweeps % 2 == 1) std::reverse(r.chain.begin(), r.chain.end());

  r.length = 0;
  for (int i = 0; i < n; ++i) {
    r.segments.push_back(star_geodesic(p, r.chain[i], r.chain[i + 1]));
    r.length += r.segments.back().desc.length;
  }
  for (int i = 1; i < n; ++i)
    for (double v : r.chain[i])
      r.stats.max_dyadic_exponent =
          std::max(r.stats.max_dyadic_exponent, dyadic_exponent(v));

  r.stats.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return r;
}

} // namespace catgeo
