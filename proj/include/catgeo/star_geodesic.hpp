#pragma once

#include <utility>

#include "complex.hpp"
#include "orthant.hpp"

namespace catgeo {

// geodesic between two complex points, carried by their common star
struct StarGeodesic {
  Bits vertex;
  GeodesicDesc desc;
};

inline Local to_local(const StarLocal& sc) {
  Local out;
  for (auto& [d, v] : sc)
    if (v != 0.0) out[axis_id(d)] = v;
  return out;
}

inline auto axis_compat(const Pip& p) {
  return [&p](int a, int b) {
    return link_compatible(p, axis_dir(a), axis_dir(b));
  };
}

inline StarGeodesic star_geodesic(const Pip& p, const Point& x,
                                  const Point& y) {
  Bits v = common_star_vertex(p, x, y);
  GeodesicDesc desc =
      gtp_solve(to_local(star_coordinates(p, v, x)),
                to_local(star_coordinates(p, v, y)), axis_compat(p));
  return {std::move(v), std::move(desc)};
}

inline double star_distance(const Pip& p, const Point& x, const Point& y) {
  return star_geodesic(p, x, y).desc.length;
}

inline Point star_point(const Pip& p, const Bits& v, const Local& loc) {
  StarLocal sc;
  for (auto& [axis, val] : loc) sc[axis_dir(axis)] = val;
  return from_star_coordinates(p, v, sc);
}

inline Point geodesic_point(const Pip& p, const StarGeodesic& g, double t) {
  return star_point(p, g.vertex, evaluate(g.desc, t));
}

inline Point midpoint_point(const Pip& p, const Point& x, const Point& y,
                            double delta, int precision_bits = 53) {
  StarGeodesic g = star_geodesic(p, x, y);
  return star_point(p, g.vertex, midpoint(g.desc, delta, precision_bits));
}

} // namespace catgeo
