#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

#include "errors.hpp"

namespace catgeo {

using bigint = boost::multiprecision::cpp_int;
using HalvingMatrix = std::vector<std::vector<double>>;

// entries (1/2)^(n+2-i-j) on the antidiagonal band i+j <= n+1, 1-based
inline HalvingMatrix build_halving(int n) {
  HalvingMatrix a(n, std::vector<double>(n, 0.0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n + 1 - i; ++j)
      a[i - 1][j - 1] = std::ldexp(1.0, i + j - n - 2);
  return a;
}

// O(n) multiply by the halving matrix: (Av)_k = 2^(k-n-2) * P_{n+1-k} with
// P_t the prefix sums of 2^j v_j. Exponents stay within double range for
// n <= 512; terms more than 53 binary orders below a prefix vanish, which
// matches the matrix's own geometric decay.
inline std::vector<double> apply_halving(int n, const std::vector<double>& v) {
  std::vector<double> pref(n + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    pref[j] = pref[j - 1] + std::ldexp(v[j - 1], j);
  std::vector<double> out(n);
  for (int k = 1; k <= n; ++k)
    out[k - 1] = std::ldexp(pref[n + 1 - k], k - n - 2);
  return out;
}

struct LemmaReport {
  int n = 0;
  double power_estimate = 0;   // Rayleigh quotient after power iteration
  double decay_slack = 0;      // min over milestones of bound - entry
  double wall_ms = 0;
};

namespace detail {

// Iterates S_state -> state of A*v in O(n) via the weighted prefix
// S'[j] = sum_{j' <= j} 2^(2j'-n) * S[n-1-j'], with the state itself the
// prefix transform S_t = sum_{j<=t} 2^j v_j (0-based storage, t = j+1).
// Reading entry k applies one extra multiply: after m steps v_at yields
// (A^(m+1) 1)_k, so milestone k is read after k-1 steps.
struct ScalarHalvingState {
  int n;
  std::vector<double> s, t, w;
  explicit ScalarHalvingState(int n_) : n(n_), s(n_), t(n_), w(n_) {
    for (int j = 0; j < n; ++j) w[j] = std::ldexp(1.0, 2 * j - n);
    for (int j = 0; j < n; ++j) s[j] = std::ldexp(1.0, j + 2) - 2.0;
  }
  void step() {
    double run = 0;
    for (int j = 0; j < n; ++j) {
      run += w[j] * s[n - 1 - j];
      t[j] = run;
    }
    s.swap(t);
  }
  double v_at(int k) const { return std::ldexp(s[n - k], k - n - 2); }
};

#if defined(__AVX512F__)
// Same recurrence in lane-major form: 32 lanes of length L, mem[32r+b] =
// S[b*L+r]. The reversed read S[n-1-j'] for a whole row is one unaligned
// load plus a lane reversal; a 32-double zero guard in front of the buffer
// absorbs reads past lane 0. Cross-lane carries are fixed up afterwards
// with an exclusive prefix over the 32 block totals.
struct LaneHalvingState {
  int n, L, N;
  std::vector<double> buf_a, buf_b, wlm;
  double* a;
  double* b;
  explicit LaneHalvingState(int n_) : n(n_) {
    L = (n + 31) / 32;
    N = 32 * L;
    buf_a.assign(N + 32, 0.0);
    buf_b.assign(N + 32, 0.0);
    wlm.assign(N, 0.0);
    a = buf_a.data() + 32;
    b = buf_b.data() + 32;
    for (int lane = 0; lane < 32; ++lane)
      for (int r = 0; r < L; ++r) {
        long j = static_cast<long>(lane) * L + r;
        if (j < n) {
          wlm[32 * r + lane] = std::ldexp(1.0, static_cast<int>(2 * j) - n);
          a[32 * r + lane] = std::ldexp(1.0, static_cast<int>(j) + 2) - 2.0;
        }
      }
  }
  void step() {
    const __m512i rev = _mm512_set_epi64(0, 1, 2, 3, 4, 5, 6, 7);
    __m512d acc0 = _mm512_setzero_pd(), acc1 = acc0, acc2 = acc0, acc3 = acc0;
    for (int r = 0; r < L; ++r) {
      long src_row = n - 1 - r;
      int o = static_cast<int>(src_row % L);
      int lane0 = static_cast<int>(src_row / L);
      const double* src = a + 32 * o + lane0;
      const double* wr = wlm.data() + 32 * r;
      double* out = b + 32 * r;
      __m512d in0 = _mm512_permutexvar_pd(rev, _mm512_loadu_pd(src - 7));
      __m512d in1 = _mm512_permutexvar_pd(rev, _mm512_loadu_pd(src - 15));
      __m512d in2 = _mm512_permutexvar_pd(rev, _mm512_loadu_pd(src - 23));
      __m512d in3 = _mm512_permutexvar_pd(rev, _mm512_loadu_pd(src - 31));
      acc0 = _mm512_fmadd_pd(_mm512_loadu_pd(wr), in0, acc0);
      acc1 = _mm512_fmadd_pd(_mm512_loadu_pd(wr + 8), in1, acc1);
      acc2 = _mm512_fmadd_pd(_mm512_loadu_pd(wr + 16), in2, acc2);
      acc3 = _mm512_fmadd_pd(_mm512_loadu_pd(wr + 24), in3, acc3);
      _mm512_storeu_pd(out, acc0);
      _mm512_storeu_pd(out + 8, acc1);
      _mm512_storeu_pd(out + 16, acc2);
      _mm512_storeu_pd(out + 24, acc3);
    }
    alignas(64) double tot[32], car[32];
    _mm512_storeu_pd(tot, acc0);
    _mm512_storeu_pd(tot + 8, acc1);
    _mm512_storeu_pd(tot + 16, acc2);
    _mm512_storeu_pd(tot + 24, acc3);
    double run = 0;
    for (int lane = 0; lane < 32; ++lane) {
      car[lane] = run;
      run += tot[lane];
    }
    __m512d c0 = _mm512_loadu_pd(car), c1 = _mm512_loadu_pd(car + 8),
            c2 = _mm512_loadu_pd(car + 16), c3 = _mm512_loadu_pd(car + 24);
    for (int r = 0; r < L; ++r) {
      double* out = b + 32 * r;
      _mm512_storeu_pd(out, _mm512_add_pd(_mm512_loadu_pd(out), c0));
      _mm512_storeu_pd(out + 8, _mm512_add_pd(_mm512_loadu_pd(out + 8), c1));
      _mm512_storeu_pd(out + 16,
                       _mm512_add_pd(_mm512_loadu_pd(out + 16), c2));
      _mm512_storeu_pd(out + 24,
                       _mm512_add_pd(_mm512_loadu_pd(out + 24), c3));
    }
    std::swap(a, b);
  }
  double v_at(int k) const {
    long j = n - k;
    return std::ldexp(a[32 * (j % L) + static_cast<int>(j / L)], k - n - 2);
  }
};
using HalvingState = LaneHalvingState;
#else
using HalvingState = ScalarHalvingState;
#endif

} // namespace detail

// Verifies the spectral facts behind the convergence bound for one order n:
// with u_k = k(n-k) + n^2 and LHS_k = sum_{j <= n+1-k} 2^j u_j,
//   (i)   A u <= (1 - 1/n^2) u          (exact integers)
//   (ii)  (Au)_k = u_k - 2 - (n^2-n-3) / 2^(n+1-k)   (exact)
//   (iii) Au <= u - 1 and 4u <= 5n^2, hence (I-A)^{-1} 1 <= u <= (5/4)n^2
//   (iv)  power-iteration Rayleigh estimate <= 1 - 1/n^2 + 1e-10
//   (v)   A^k 1 <= (5/4) e^(-k/n^2) entrywise at k in {1, n, n^2, 4n^2}
// Throws LemmaViolated naming the failing check and index.
inline LemmaReport check_lemma(int n) {
  if (n < 2 || n > 512) throw ValidationError("n must lie in 2..512");
  auto t0 = std::chrono::steady_clock::now();
  LemmaReport rep;
  rep.n = n;
  const long long n2 = static_cast<long long>(n) * n;

  auto fail = [n](const std::string& what, long long k) {
    throw LemmaViolated("n=" + std::to_string(n) + " check " + what +
                        " fails at k=" + std::to_string(k));
  };

  bigint lhs = 0, pow2 = 1;  // pow2 tracks 2^t
  for (int t = 1; t <= n; ++t) {
    pow2 <<= 1;
    const long long ut = static_cast<long long>(t) * (n - t) + n2;
    lhs += pow2 * ut;
    const int k = n + 1 - t;
    const long long uk = static_cast<long long>(k) * (n - k) + n2;
    const bigint scale = pow2 << 1;  // 2^(n+2-k)
    if (n2 * lhs > (n2 - 1) * uk * scale) fail("(i)", k);
    if (lhs != (uk - 2) * scale - 2 * (n2 - n - 3)) fail("(ii)", k);
    if (lhs > (uk - 1) * scale) fail("(iii)", k);
    if (4 * uk > 5 * n2) fail("(iii)", k);
  }

  {
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double rayleigh = 0;
    for (int it = 0; it < 300; ++it) {
      std::vector<double> w = apply_halving(n, v);
      double dot = 0, nrm = 0;
      for (int i = 0; i < n; ++i) {
        dot += v[i] * w[i];
        nrm += w[i] * w[i];
      }
      rayleigh = dot;  // v is unit length
      nrm = std::sqrt(nrm);
      for (int i = 0; i < n; ++i) v[i] = w[i] / nrm;
    }
    rep.power_estimate = rayleigh;
    if (!(rayleigh <= 1.0 - 1.0 / static_cast<double>(n2) + 1e-10))
      fail("(iv)", 0);
  }

  {
    detail::HalvingState st(n);
    long long milestones[4] = {1, n, n2, 4 * n2};
    long long steps = 0;
    double slack = 1e300;
    for (long long k : milestones) {
      while (steps < k - 1) {
        st.step();
        ++steps;
      }
      double bound =
          1.25 * std::exp(-static_cast<double>(k) / static_cast<double>(n2));
      for (int i = 1; i <= n; ++i) {
        double vi = st.v_at(i);
        slack = std::min(slack, bound - vi);
        if (vi > bound) fail("(v)", k);
      }
    }
    rep.decay_slack = slack;
  }

  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

} // namespace catgeo
