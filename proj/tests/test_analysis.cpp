#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace catgeo;

namespace {

std::vector<double> dense_apply(const HalvingMatrix& a,
                                const std::vector<double>& v) {
  const int n = static_cast<int>(a.size());
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += a[i][j] * v[j];
  return out;
}

} // namespace

TEST_CASE("halving matrix entries") {
  auto a2 = build_halving(2);
  REQUIRE(a2.size() == 2);
  CHECK(a2[0][0] == 0.25);
  CHECK(a2[0][1] == 0.5);
  CHECK(a2[1][0] == 0.5);
  CHECK(a2[1][1] == 0.0);

  auto a5 = build_halving(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i + j <= 4)  // 0-based band: i + j <= n - 1
        CHECK(a5[i][j] == std::ldexp(1.0, i + j - 5));
      else
        CHECK(a5[i][j] == 0.0);
    }
  // rows sum to less than 1: the matrix is strictly substochastic
  for (int i = 0; i < 5; ++i) {
    double s = 0;
    for (int j = 0; j < 5; ++j) s += a5[i][j];
    CHECK(s < 1.0);
  }
}

TEST_CASE("fast apply equals dense apply") {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int n : {1, 2, 5, 16, 33, 100}) {
    auto a = build_halving(n);
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> v(n);
      for (double& x : v) x = dist(eng);
      auto fast = apply_halving(n, v);
      auto slow = dense_apply(a, v);
      REQUIRE(fast.size() == slow.size());
      for (int i = 0; i < n; ++i)
        CHECK(fast[i] == Catch::Approx(slow[i]).epsilon(1e-12).margin(1e-15));
    }
  }
  // worked 2x2 product
  auto out = apply_halving(2, {5.0, 4.0});
  CHECK(out[0] == Catch::Approx(3.25));
  CHECK(out[1] == Catch::Approx(2.5));
}

TEST_CASE("fast apply handles wide dynamic range") {
  const int n = 40;
  auto a = build_halving(n);
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = std::ldexp(1.0, -j);
  auto fast = apply_halving(n, v);
  auto slow = dense_apply(a, v);
  for (int i = 0; i < n; ++i)
    CHECK(fast[i] == Catch::Approx(slow[i]).epsilon(1e-12));
}

TEMPLATE_TEST_CASE("iterated state tracks dense powers", "",
                   catgeo::detail::ScalarHalvingState,
                   catgeo::detail::HalvingState) {
  for (int n : {3, 16, 33, 100}) {
    auto a = build_halving(n);
    std::vector<double> w(n, 1.0);
    TestType st(n);
    for (int m = 0; m < 6; ++m) {
      w = dense_apply(a, w);  // w = A^(m+1) 1
      for (int k = 1; k <= n; ++k)
        CHECK(st.v_at(k) == Catch::Approx(w[k - 1]).epsilon(1e-12).margin(
                                std::ldexp(1.0, -1000)));
      st.step();
    }
  }
}

TEST_CASE("lemma report fields") {
  for (int n : {2, 3, 8, 17, 64}) {
    auto rep = check_lemma(n);
    CHECK(rep.n == n);
    CHECK(rep.power_estimate > 0.5);
    CHECK(rep.power_estimate <= 1.0 - 1.0 / (double(n) * n) + 1e-10);
    CHECK(rep.decay_slack >= 0.0);
    CHECK(rep.wall_ms >= 0.0);
  }
  // the estimate is deterministic
  CHECK(check_lemma(12).power_estimate == check_lemma(12).power_estimate);
}

TEST_CASE("lemma order validation") {
  CHECK_THROWS_AS(check_lemma(1), ValidationError);
  CHECK_THROWS_AS(check_lemma(0), ValidationError);
  CHECK_THROWS_AS(check_lemma(-4), ValidationError);
  CHECK_THROWS_AS(check_lemma(513), ValidationError);
  CHECK_NOTHROW(check_lemma(2));
  CHECK_NOTHROW(check_lemma(512));
}

TEST_CASE("contraction shows up in iterated powers") {
  // entries of A^k 1 stay below the 1.25 e^(-k/n^2) envelope for every k up
  // to n^2 (the envelope rate is an upper bound on the true decay, which is
  // in fact faster), yet the iterate is far from collapsed
  const int n = 16;
  auto a = build_halving(n);
  std::vector<double> w(n, 1.0);
  for (int k = 1; k <= n * n; ++k) {
    w = dense_apply(a, w);
    double bound = 1.25 * std::exp(-double(k) / (n * n));
    for (int i = 0; i < n; ++i) CHECK(w[i] <= bound);
  }
  double mx = 0;
  for (double x : w) mx = std::max(mx, x);
  CHECK(mx >= 1e-5);  // observed 6.4e-4 at k = 256
}
