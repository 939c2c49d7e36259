// Shows the contraction machinery that prices the sweep count: entries of
// A^k 1 for the halving matrix against the 1.25 e^(-k/n^2) envelope, then
// the full certificate report for a few orders.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "catgeo/catgeo.hpp"

using namespace catgeo;

int main() {
  const int n = 32;
  std::printf("order n = %d, envelope 1.25 exp(-k/%d)\n\n", n, n * n);
  std::printf("%8s  %12s  %12s\n", "k", "max (A^k 1)", "envelope");

  std::vector<double> v(n, 1.0);
  int next_print = 1;
  for (int k = 1; k <= 4 * n * n; ++k) {
    v = apply_halving(n, v);
    if (k == next_print) {
      double mx = *std::max_element(v.begin(), v.end());
      std::printf("%8d  %12.6e  %12.6e\n", k, mx,
                  1.25 * std::exp(-double(k) / (n * n)));
      next_print *= 4;
    }
  }

  std::printf("\ncertificates (exact integer checks plus power iteration):\n");
  for (int order : {2, 8, 32, 128, 512}) {
    LemmaReport rep = check_lemma(order);
    std::printf("  n=%4d  rate estimate %.9f  (cap %.9f)  slack %.3e  "
                "%.1f ms\n",
                rep.n, rep.power_estimate,
                1.0 - 1.0 / (double(rep.n) * rep.n), rep.decay_slack,
                rep.wall_ms);
  }
  return 0;
}
