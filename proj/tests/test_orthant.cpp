#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace catgeo;

namespace {

// compatibility table keyed by unordered axis pair; everything unknown is
// compatible
struct Table {
  std::set<std::pair<int, int>> bad;
  void forbid(int a, int b) {
    bad.insert({std::min(a, b), std::max(a, b)});
  }
  bool operator()(int a, int b) const {
    return !bad.count({std::min(a, b), std::max(a, b)});
  }
};

double block_cover_value(const GeodesicDesc& g, const Block& b,
                         const Table& compat) {
  std::vector<double> wa, wb;
  for (int e : b.A) {
    double v = g.x.at(e) / b.lambda;
    wa.push_back(v * v);
  }
  for (int e : b.B) {
    double v = g.y.at(e) / b.mu;
    wb.push_back(v * v);
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < b.A.size(); ++i)
    for (std::size_t j = 0; j < b.B.size(); ++j)
      if (!compat(b.A[i], b.B[j]))
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return min_weight_vertex_cover(wa, wb, edges).value;
}

void check_invariants(const GeodesicDesc& g, const Table& compat) {
  // blocks partition the one-sided supports
  std::set<int> sa, sb;
  for (const Block& b : g.blocks) {
    for (int e : b.A) CHECK(sa.insert(e).second);
    for (int e : b.B) CHECK(sb.insert(e).second);
  }
  for (auto& [e, v] : g.x)
    CHECK((g.y.count(e) ? !sa.count(e) : sa.count(e)));
  for (auto& [e, v] : g.y)
    CHECK((g.x.count(e) ? !sb.count(e) : sb.count(e)));
  // validity: later A against earlier B all compatible
  for (std::size_t i = 0; i < g.blocks.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      for (int a : g.blocks[i].A)
        for (int b : g.blocks[j].B) CHECK(compat(a, b));
  // sorted ratios
  for (std::size_t i = 0; i + 1 < g.blocks.size(); ++i) {
    const Block &b1 = g.blocks[i], &b2 = g.blocks[i + 1];
    double r1 = (b1.mu == 0) ? 1e300 : b1.lambda / b1.mu;
    double r2 = (b2.mu == 0) ? 1e300 : b2.lambda / b2.mu;
    CHECK(r1 <= r2 + kTauSort);
  }
  // cover optimality on every two-sided block
  for (const Block& b : g.blocks)
    if (!b.A.empty() && !b.B.empty())
      CHECK(block_cover_value(g, b, compat) >= 1.0 - 1e-9);
  // length formula
  double q = 0;
  for (const Block& b : g.blocks) q += (b.lambda + b.mu) * (b.lambda + b.mu);
  for (int e : g.common) {
    double d = g.x.at(e) - g.y.at(e);
    q += d * d;
  }
  CHECK(g.length == Catch::Approx(std::sqrt(q)).margin(1e-12));
}

} // namespace

TEST_CASE("cone point geodesic on incompatible axes") {
  Local x{{0, 3.0}}, y{{1, 4.0}};
  Table t;
  t.forbid(0, 1);
  auto g = gtp_solve(x, y, t);
  REQUIRE(g.blocks.size() == 1);
  CHECK(g.blocks[0].A == std::vector<int>{0});
  CHECK(g.blocks[0].B == std::vector<int>{1});
  CHECK(g.length == 7.0);
  check_invariants(g, t);

  auto mid = evaluate(g, 0.5);
  REQUIRE(mid.size() == 1);
  CHECK(mid.at(1) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("four cycle development") {
  // axes: a1=0 a2=1 b1=2 b2=3, incompatible exactly (a1,b1), (a2,b2)
  Local x{{0, 1.0}, {1, 2.0}}, y{{2, 2.0}, {3, 1.0}};
  Table t;
  t.forbid(0, 2);
  t.forbid(1, 3);
  auto g = gtp_solve(x, y, t);
  REQUIRE(g.blocks.size() == 2);
  CHECK(g.blocks[0].A == std::vector<int>{0});
  CHECK(g.blocks[0].B == std::vector<int>{2});
  CHECK(g.blocks[1].A == std::vector<int>{1});
  CHECK(g.blocks[1].B == std::vector<int>{3});
  CHECK(g.length == Catch::Approx(std::sqrt(18.0)).margin(1e-12));
  check_invariants(g, t);

  auto mid = evaluate(g, 0.5);
  REQUIRE(mid.size() == 2);
  CHECK(mid.at(1) == Catch::Approx(0.5).margin(1e-15));
  CHECK(mid.at(2) == Catch::Approx(0.5).margin(1e-15));

  // the midpoint is already dyadic: rounding is the identity
  auto rounded = midpoint(g, std::ldexp(1.0, -20));
  CHECK(rounded == mid);
}

TEST_CASE("single orthant straight line") {
  Local x{{2, 0.3}}, y{{2, 0.9}, {1, 0.4}};
  Table t;
  auto g = gtp_solve(x, y, t);
  REQUIRE(g.blocks.size() == 1);
  CHECK(g.blocks[0].A.empty());
  CHECK(g.blocks[0].B == std::vector<int>{1});
  CHECK(g.common == std::vector<int>{2});
  CHECK(g.length == Catch::Approx(std::sqrt(0.52)).margin(1e-12));
  check_invariants(g, t);
}

TEST_CASE("min weight vertex cover") {
  auto r = min_weight_vertex_cover({1.0}, {1.0}, {{0, 0}});
  CHECK(r.value == Catch::Approx(1.0).margin(1e-12));
  CHECK(r.cover_a.size() + r.cover_b.size() == 1);

  r = min_weight_vertex_cover({0.2, 0.8}, {0.8, 0.2}, {{0, 0}, {1, 1}});
  CHECK(r.value == Catch::Approx(0.4).margin(1e-12));
  CHECK(r.cover_a == std::vector<int>{0});
  CHECK(r.cover_b == std::vector<int>{1});

  r = min_weight_vertex_cover({0.5, 0.5}, {0.5}, {});
  CHECK(r.value == 0.0);
  CHECK(r.cover_a.empty());
  CHECK(r.cover_b.empty());
}

TEST_CASE("vertex cover agrees with subset enumeration") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    int na = 1 + rng.below(5), nb = 1 + rng.below(5);
    std::vector<double> wa(na), wb(nb);
    for (double& w : wa) w = 0.1 + rng.uniform();
    for (double& w : wb) w = 0.1 + rng.uniform();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j)
        if (rng.uniform() < 0.4) edges.emplace_back(i, j);

    auto r = min_weight_vertex_cover(wa, wb, edges);

    // the returned sets really cover and really cost `value`
    double cost = 0;
    std::set<int> ca(r.cover_a.begin(), r.cover_a.end());
    std::set<int> cb(r.cover_b.begin(), r.cover_b.end());
    for (int i : ca) cost += wa[i];
    for (int j : cb) cost += wb[j];
    CHECK(cost == Catch::Approx(r.value).margin(1e-9));
    for (auto& [i, j] : edges) CHECK((ca.count(i) || cb.count(j)));

    double best = 1e300;
    for (unsigned ma = 0; ma < (1u << na); ++ma)
      for (unsigned mb = 0; mb < (1u << nb); ++mb) {
        bool covers = true;
        for (auto& [i, j] : edges)
          if (!((ma >> i & 1) || (mb >> j & 1))) covers = false;
        if (!covers) continue;
        double c = 0;
        for (int i = 0; i < na; ++i)
          if (ma >> i & 1) c += wa[i];
        for (int j = 0; j < nb; ++j)
          if (mb >> j & 1) c += wb[j];
        best = std::min(best, c);
      }
    CHECK(r.value == Catch::Approx(best).margin(1e-9));
  }
}

TEST_CASE("evaluate hits the endpoints exactly") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Table t;
    Local x, y;
    for (int e = 0; e < 3; ++e) {
      if (rng.uniform() < 0.7) x[e] = rng.uniform();
      if (rng.uniform() < 0.7) y[e + 3 * (rng.uniform() < 0.5)] = rng.uniform();
    }
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        if (rng.uniform() < 0.3) t.forbid(a, b);
    bool simplex = true;
    for (auto& [a, va] : x)
      for (auto& [b, vb] : x)
        if (a < b && !t(a, b)) simplex = false;
    for (auto& [a, va] : y)
      for (auto& [b, vb] : y)
        if (a < b && !t(a, b)) simplex = false;
    if (!simplex) continue;
    auto g = gtp_solve(x, y, t);
    Local x0, y0;
    for (auto& [e, v] : x)
      if (v != 0.0) x0[e] = v;
    for (auto& [e, v] : y)
      if (v != 0.0) y0[e] = v;
    CHECK(evaluate(g, 0.0) == x0);  // bitwise
    CHECK(evaluate(g, 1.0) == y0);
    check_invariants(g, t);
  }
}

TEST_CASE("constant speed along the geodesic") {
  Table t;
  t.forbid(0, 2);
  t.forbid(1, 3);
  Local x{{0, 1.0}, {1, 2.0}}, y{{2, 2.0}, {3, 1.0}};
  auto g = gtp_solve(x, y, t);
  Rng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    double t1 = rng.uniform(), t2 = rng.uniform();
    if (t1 > t2) std::swap(t1, t2);
    auto p1 = evaluate(g, t1);
    auto p2 = evaluate(g, t2);
    double d = gtp_solve(p1, p2, t).length;
    CHECK(d == Catch::Approx((t2 - t1) * g.length).epsilon(1e-9));
  }
}

TEST_CASE("midpoint rounding stays within delta and snaps to the grid") {
  Table t;
  t.forbid(0, 1);
  Local x{{0, 1.0}}, y{{1, 1.0}};
  auto g = gtp_solve(x, y, t);
  // true midpoint is the cone point
  CHECK(midpoint(g, 0.25).empty());

  Local x2{{0, 0.3}}, y2{{1, 0.7}};
  auto g2 = gtp_solve(x2, y2, t);
  for (double delta : {1e-2, 1e-4, 1e-8}) {
    auto w = midpoint(g2, delta);
    auto exact = evaluate(g2, 0.5);
    double q = 0;
    for (auto& [e, v] : exact) {
      double dv = v - (w.count(e) ? w.at(e) : 0.0);
      q += dv * dv;
    }
    CHECK(std::sqrt(q) <= delta);
    int s = static_cast<int>(
        std::ceil(std::log2(std::sqrt(2.0) / delta)));
    for (auto& [e, v] : w)
      CHECK(std::ldexp(v, s) == std::floor(std::ldexp(v, s)));
  }

  // delta <= 0 means no rounding at all
  CHECK(midpoint(g2, 0.0) == evaluate(g2, 0.5));

  // unreachable precision must refuse rather than emit garbage
  CHECK_THROWS_AS(midpoint(g2, 1e-30, 53), PrecisionLoss);
  CHECK_THROWS_AS(midpoint(g2, 1e-300), PrecisionLoss);
  CHECK_NOTHROW(midpoint(g2, 1e-18, 62));
}

TEST_CASE("identical points have zero geodesic") {
  Table t;
  Local x{{0, 0.4}, {2, 0.3}};
  auto g = gtp_solve(x, x, t);
  CHECK(g.length == 0.0);
  CHECK(g.blocks.empty());
  CHECK(midpoint(g, 0.5) == x);
  CHECK(brute_force_geodesic(x, x, t) == 0.0);
}

TEST_CASE("incompatible supports are refused") {
  Table t;
  t.forbid(0, 1);
  Local bad{{0, 0.5}, {1, 0.5}}, y{{2, 0.5}};
  CHECK_THROWS_AS(gtp_solve(bad, y, t), IncompatibleSupport);
  CHECK_THROWS_AS(gtp_solve(y, bad, t), IncompatibleSupport);
}

TEST_CASE("brute force reproduces the worked examples") {
  Table t1;
  t1.forbid(0, 1);
  CHECK(brute_force_geodesic(Local{{0, 3.0}}, Local{{1, 4.0}}, t1) == 7.0);

  Table t2;
  t2.forbid(0, 2);
  t2.forbid(1, 3);
  CHECK(brute_force_geodesic(Local{{0, 1.0}, {1, 2.0}},
                             Local{{2, 2.0}, {3, 1.0}}, t2) ==
        Catch::Approx(std::sqrt(18.0)).margin(1e-12));

  Table t3;
  CHECK(brute_force_geodesic(Local{{2, 0.3}}, Local{{2, 0.9}, {1, 0.4}}, t3) ==
        Catch::Approx(std::sqrt(0.52)).margin(1e-12));

  // single compatible pair: Euclidean
  CHECK(brute_force_geodesic(Local{{0, 0.6}}, Local{{1, 0.8}}, t3) ==
        Catch::Approx(1.0).margin(1e-12));

  Local big;
  for (int e = 0; e < 7; ++e) big[e] = 0.1;
  CHECK_THROWS_AS(brute_force_geodesic(big, Local{{9, 1.0}}, t3), TooLarge);
}

TEST_CASE("solver matches brute force on random instances") {
  Rng rng(20260816);
  int solved = 0;
  while (solved < 300) {
    int na = 1 + rng.below(4), nb = 1 + rng.below(4);
    Local x, y;
    for (int i = 0; i < na; ++i) x[i] = 0.05 + 0.95 * rng.uniform();
    for (int j = 0; j < nb; ++j) y[10 + j] = 0.05 + 0.95 * rng.uniform();
    int ncommon = rng.below(3);
    for (int c = 0; c < ncommon; ++c) {
      x[20 + c] = rng.uniform();
      y[20 + c] = rng.uniform();
    }
    Table t;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j)
        if (rng.uniform() < 0.45) t.forbid(i, 10 + j);
    auto g = gtp_solve(x, y, t);
    double ref = brute_force_geodesic(x, y, t);
    CHECK(std::fabs(g.length - ref) <= 1e-9 * (1.0 + ref));
    check_invariants(g, t);
    ++solved;
  }
}
