#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pip.hpp"

namespace catgeo {

// coordinate per element, file order; values in [0,1]
using Point = std::vector<double>;

// Scale bound under which star-local queries are guaranteed to succeed.
constexpr double kD = 0.9;

// float dust this close to 0 or 1 must not change cell combinatorics
constexpr double kSnapTol = 1e-15;

inline double snapped(double v) {
  if (std::fabs(v) <= kSnapTol) return 0.0;
  if (std::fabs(v - 1.0) <= kSnapTol) return 1.0;
  return v;
}

inline Point snap_point(Point x) {
  for (double& v : x) v = snapped(v);
  return x;
}

inline double l2_dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct Cell {
  Bits I;  // support ideal
  Bits M;  // fractional part, subset of Max(I)
};

// Smallest cell containing x; doubles as the embedding validity check.
inline Cell minimal_cell(const Pip& p, const Point& x_in) {
  if (static_cast<int>(x_in.size()) != p.size())
    throw NotInComplex("coordinate count mismatch");
  Point x = snap_point(x_in);
  Cell c{p.empty_set(), p.empty_set()};
  for (int i = 0; i < p.size(); ++i) {
    if (x[i] < 0.0 || x[i] > 1.0)
      throw NotInComplex("coordinate of " + p.elements[i] + " outside [0,1]");
    if (x[i] > 0.0) c.I.set(i);
    if (x[i] < 1.0 && x[i] > 0.0) c.M.set(i);
  }
  if (!is_consistent_ideal(p, c.I))
    throw NotInComplex("support is not a consistent ideal");
  if (!c.M.is_subset_of(maximal_of(p, c.I)))
    throw NotInComplex("fractional coordinate below another positive one");
  return c;
}

inline Point point_of_vertex(const Pip& p, const Bits& v) {
  Point x(p.size(), 0.0);
  for_each_bit(v, [&](int i) { x[i] = 1.0; });
  return x;
}

// Vertex path u -> w of length |u delta w| in the ideal graph: peel u\w from
// the top down, then grow w\u from the bottom up. u\w is up-closed within u,
// so removing its elements in reverse topological order keeps ideals; adding
// w\u in topological order keeps ideals likewise.
inline std::vector<Bits> edge_geodesic(const Pip& p, const Bits& u,
                                       const Bits& w) {
  std::vector<Bits> path{u};
  Bits cur = u;
  auto removals = restricted_topo_order(p, u - w);
  for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
    cur.reset(*it);
    path.push_back(cur);
  }
  for (int a : restricted_topo_order(p, w - u)) {
    cur.set(a);
    path.push_back(cur);
  }
  return path;
}

// Chain of points with consecutive pairs in a common cell and consecutive
// distances at most (D/2 - eps)/2: straight runs src -> vertex(I_src),
// vertex path to vertex(I_dst), then -> dst, each subdivided evenly.
inline std::vector<Point> initial_chain(const Pip& p, const Point& src,
                                        const Point& dst, double eps) {
  Cell cs = minimal_cell(p, src);
  Cell cd = minimal_cell(p, dst);
  const double step = (kD / 2 - eps) / 2;
  if (snap_point(src) == snap_point(dst))
    return {snap_point(src), snap_point(dst)};

  std::vector<Point> waypoints;
  waypoints.push_back(snap_point(src));
  waypoints.push_back(point_of_vertex(p, cs.I));
  for (const Bits& v : edge_geodesic(p, cs.I, cd.I))
    waypoints.push_back(point_of_vertex(p, v));
  waypoints.push_back(point_of_vertex(p, cd.I));
  waypoints.push_back(snap_point(dst));

  std::vector<Point> chain{waypoints.front()};
  for (std::size_t w = 0; w + 1 < waypoints.size(); ++w) {
    const Point& a = waypoints[w];
    const Point& b = waypoints[w + 1];
    double len = l2_dist(a, b);
    if (len == 0.0) continue;  // degenerate segment, drop
    int parts = static_cast<int>(std::ceil(len / step));
    for (int k = 1; k <= parts; ++k) {
      double t = static_cast<double>(k) / parts;
      Point z(p.size());
      for (int i = 0; i < p.size(); ++i)
        z[i] = (a[i] == b[i]) ? a[i] : (1 - t) * a[i] + t * b[i];
      chain.push_back(std::move(z));
    }
  }
  if (chain.size() == 1) chain.push_back(chain.front());  // trivial n = 1
  return chain;
}

// Vertex of both minimal cells, when one exists. V = (I1\M1) u (I2\M2) is
// always an ideal (union of ideals); containment in both supports is the
// whole test and fails exactly when the cells are disjoint.
inline Bits common_star_vertex(const Pip& p, const Point& x, const Point& y) {
  Cell c1 = minimal_cell(p, x);
  Cell c2 = minimal_cell(p, y);
  Bits v = (c1.I - c1.M) | (c2.I - c2.M);
  if (!v.is_subset_of(c1.I) || !v.is_subset_of(c2.I))
    throw NoCommonVertex("minimal cells share no vertex");
  return v;
}

// One step away from vertex v in the ideal graph.
struct LinkDirection {
  int elem;
  bool removal;  // true: drop a maximal element; false: add an addable one
  friend bool operator==(LinkDirection a, LinkDirection b) = default;
  friend auto operator<=>(LinkDirection a, LinkDirection b) = default;
};

// dense axis key used by the orthant solver
inline int axis_id(LinkDirection d) {
  return (d.elem << 1) | (d.removal ? 1 : 0);
}
inline LinkDirection axis_dir(int id) { return {id >> 1, (id & 1) != 0}; }

// Two directions span a square at v iff all four corner ideals exist.
// Rem-Rem squares always exist; Add(a)-Add(b) fails only on a ~ b; mixed
// Add(a)-Rem(m) fails only when m sits strictly below a.
inline bool link_compatible(const Pip& p, LinkDirection d1, LinkDirection d2) {
  if (d1.removal && d2.removal) return true;
  if (!d1.removal && !d2.removal) return !p.inconsistent(d1.elem, d2.elem);
  if (d1.removal) std::swap(d1, d2);
  return !p.lt(d2.elem, d1.elem);
}

using StarLocal = std::map<LinkDirection, double>;

// Coordinates of x in the truncated orthant space over the link of v.
// Accepts exactly the points whose minimal cell has v among its vertices:
// integral coordinates must match v, fractional ones must name a link
// direction at v.
inline StarLocal star_coordinates(const Pip& p, const Bits& v,
                                  const Point& x_in) {
  Point x = snap_point(x_in);
  if (static_cast<int>(x.size()) != p.size())
    throw NotInStar("coordinate count mismatch");
  Bits maxv = maximal_of(p, v);
  Bits adds = addable_of(p, v);
  StarLocal local;
  for (int i = 0; i < p.size(); ++i) {
    if (x[i] < 0.0 || x[i] > 1.0)
      throw NotInStar("coordinate of " + p.elements[i] + " outside [0,1]");
    if (x[i] == 1.0) {
      if (!v.test(i))
        throw NotInStar(p.elements[i] + " is 1 but absent from the vertex");
    } else if (x[i] == 0.0) {
      if (v.test(i))
        throw NotInStar(p.elements[i] + " is 0 but present in the vertex");
    } else if (v.test(i)) {
      if (!maxv.test(i))
        throw NotInStar(p.elements[i] + " is fractional but not maximal");
      local[{i, true}] = 1.0 - x[i];
    } else {
      if (!adds.test(i))
        throw NotInStar(p.elements[i] + " is fractional but not addable");
      local[{i, false}] = x[i];
    }
  }
  return local;
}

// Inverse map. The nonzero support must be pairwise compatible; zero entries
// are inert and ignored. Exact on dyadic values, so it round-trips
// star_coordinates bit for bit on the chains the driver produces.
inline Point from_star_coordinates(const Pip& p, const Bits& v,
                                   const StarLocal& local) {
  Bits maxv = maximal_of(p, v);
  Bits adds = addable_of(p, v);
  std::vector<LinkDirection> support;
  for (auto& [d, val] : local) {
    if (val == 0.0) continue;
    bool ok = d.removal ? maxv.test(d.elem) : adds.test(d.elem);
    if (!ok)
      throw IncompatibleSupport(p.elements[d.elem] +
                                " does not name a link direction");
    support.push_back(d);
  }
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j)
      if (!link_compatible(p, support[i], support[j]))
        throw IncompatibleSupport("support directions span no square");
  Point x = point_of_vertex(p, v);
  for (auto& [d, val] : local) {
    if (val == 0.0) continue;
    x[d.elem] = d.removal ? 1.0 - val : val;
  }
  return x;
}

} // namespace catgeo
