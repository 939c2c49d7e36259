#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <catgeo/catgeo.hpp>

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_file(const std::string& name) {
  return std::string(CATGEO_DATA_DIR) + "/" + name;
}

inline catgeo::Pip load_pip(const std::string& name) {
  return catgeo::parse_pip(read_file(data_file(name)));
}

// the four staple complexes: free square, wedge of two edges, one chain
// relation, and two squares glued along an edge
inline catgeo::Pip square() { return catgeo::make_pip({"a", "b"}, {}, {}); }
inline catgeo::Pip wedge() {
  return catgeo::make_pip({"a", "b"}, {}, {{0, 1}});
}
inline catgeo::Pip chain2() {
  return catgeo::make_pip({"a", "b"}, {{0, 1}}, {});
}
inline catgeo::Pip book() {
  return catgeo::make_pip({"a", "b", "c"}, {}, {{1, 2}});
}

inline catgeo::Bits bits_of(const catgeo::Pip& p,
                            std::initializer_list<int> elems) {
  catgeo::Bits b(p.size());
  for (int e : elems) b.set(e);
  return b;
}

} // namespace testutil
