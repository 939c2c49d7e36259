// Command-line front end: every subcommand reads JSON documents, prints one
// JSON report on stdout, and maps failures to stable exit codes:
//   0 success
//   1 malformed input or invalid parameters
//   2 geometric or capacity refusal (point outside the complex, pair not
//     star-local, oracle out of scope, instance too large)
//   3 precision cap exceeded

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catgeo/catgeo.hpp"

namespace {

using namespace catgeo;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Pip load_pip(const std::string& path) { return parse_pip(read_file(path)); }

Point load_point(const Pip& p, const std::string& path) {
  return parse_point(p, read_file(path));
}

std::string axis_name(const Pip& p, int axis) {
  return (axis & 1 ? "-" : "+") + p.elements[axis >> 1];
}

std::string serialize_axes(const Pip& p, std::vector<int> axes) {
  std::sort(axes.begin(), axes.end());
  std::string out = "[";
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (i) out += ",";
    out += json_quote(axis_name(p, axes[i]));
  }
  return out + "]";
}

std::string serialize_desc(const Pip& p, const GeodesicDesc& g) {
  std::string out = "{\"length\":" + fmt17(g.length);
  out += ",\"common\":" + serialize_axes(p, g.common);
  out += ",\"blocks\":[";
  for (std::size_t i = 0; i < g.blocks.size(); ++i) {
    const Block& b = g.blocks[i];
    if (i) out += ",";
    out += "{\"A\":" + serialize_axes(p, b.A);
    out += ",\"B\":" + serialize_axes(p, b.B);
    out += ",\"lambda\":" + fmt17(b.lambda);
    out += ",\"mu\":" + fmt17(b.mu) + "}";
  }
  return out + "]}";
}

std::string serialize_chain(const Pip& p, const Chain& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += serialize_point(p, c[i]);
  }
  return out + "]";
}

struct Cli {
  std::string pip_path, src_path, dst_path;
  double epsilon = 1e-3;
  int precision_bits = 53;
  bool early_exit = false;
  bool trace = false;
  double delta = std::ldexp(1.0, -30);
  double h = 0.05;
  int r = 2;
  int limit = 10000;
  int lemma_n = 0;
  int elements = 6;
  double density = 0.5;
  std::uint64_t seed = 1;
};

RunResult do_run(const Cli& c) {
  Pip p = load_pip(c.pip_path);
  Point src = load_point(p, c.src_path);
  Point dst = load_point(p, c.dst_path);
  RunParams params;
  params.eps = c.epsilon;
  params.precision_bits = c.precision_bits;
  params.early_exit = c.early_exit;
  params.trace = c.trace;
  return run(p, src, dst, params);
}

int cmd_validate(const Cli& c) {
  Pip p = load_pip(c.pip_path);
  std::cout << "{\"elements\":" << p.size()
            << ",\"covers\":" << p.covers.size()
            << ",\"inconsistent\":" << p.inconsistent_min.size() << "}\n";
  return 0;
}

int cmd_ideals(const Cli& c) {
  Pip p = load_pip(c.pip_path);
  auto ideals = enumerate_ideals(p, c.limit);
  std::string out = "{\"count\":" + std::to_string(ideals.size()) +
                    ",\"ideals\":[";
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (i) out += ",";
    out += serialize_ideal(p, ideals[i]);
  }
  std::cout << out << "]}\n";
  return 0;
}

int cmd_distance(const Cli& c) {
  RunResult r = do_run(c);
  std::cout << "{\"length\":" << fmt17(r.length) << ",\"n\":" << r.stats.n
            << ",\"sweeps\":" << r.stats.sweeps
            << ",\"oracle_calls\":" << r.stats.oracle_calls << "}\n";
  return 0;
}

int cmd_geodesic(const Cli& c) {
  Pip p = load_pip(c.pip_path);
  RunResult r = do_run(c);
  std::string out = "{\"length\":" + fmt17(r.length);
  out += ",\"n\":" + std::to_string(r.stats.n);
  out += ",\"sweeps\":" + std::to_string(r.stats.sweeps);
  out += ",\"oracle_calls\":" + std::to_string(r.stats.oracle_calls);
  out += ",\"chain\":" + serialize_chain(p, r.chain);
  out += ",\"segments\":[";
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    if (i) out += ",";
    out += "{\"vertex\":" + serialize_ideal(p, r.segments[i].vertex);
    out += ",\"geodesic\":" + serialize_desc(p, r.segments[i].desc) + "}";
  }
  out += "]";
  if (c.trace) {
    out += ",\"lengths\":[";
    for (std::size_t i = 0; i < r.stats.lengths.size(); ++i) {
      if (i) out += ",";
      out += fmt17(r.stats.lengths[i]);
    }
    out += "]";
  }
  std::cout << out << "}\n";
  return 0;
}

int cmd_midpoint(const Cli& c) {
  Pip p = load_pip(c.pip_path);
  Point x = load_point(p, c.src_path);
  Point y = load_point(p, c.dst_path);
  StarGeodesic g = star_geodesic(p, x, y);
  Local mid = midpoint(g.desc, c.delta, c.precision_bits);
  Point w = star_point(p, g.vertex, mid);
  std::cout << "{\"vertex\":" << serialize_ideal(p, g.vertex)
            << ",\"length\":" << fmt17(g.desc.length)
            << ",\"midpoint\":" << serialize_point(p, w) << "}\n";
  return 0;
}

int cmd_check_lemma(const Cli& c) {
  LemmaReport rep = check_lemma(c.lemma_n);
  std::cout << "{\"n\":" << rep.n
            << ",\"power_estimate\":" << fmt17(rep.power_estimate)
            << ",\"decay_slack\":" << fmt17(rep.decay_slack)
            << ",\"wall_ms\":" << fmt17(rep.wall_ms) << "}\n";
  return 0;
}

int cmd_oracle(const Cli& c) {
  Pip p = load_pip(c.pip_path);
  Point x = load_point(p, c.src_path);
  Point y = load_point(p, c.dst_path);
  GridResult g = grid_distance(p, x, y, c.h, c.r);
  std::cout << "{\"value\":" << fmt17(g.value)
            << ",\"stretch_bound\":" << fmt17(g.stretch_bound) << "}\n";
  return 0;
}

int cmd_gen(const Cli& c) {
  std::cout << serialize_pip(gen_pip(c.elements, c.density, c.seed)) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesics in CAT(0) cubical complexes presented as posets "
               "with inconsistent pairs"};
  app.require_subcommand(1);
  Cli c;

  auto add_pip = [&](CLI::App* sub) {
    sub->add_option("pip", c.pip_path, "complex description (JSON)")
        ->required();
  };
  auto add_pair = [&](CLI::App* sub, const char* a, const char* b) {
    add_pip(sub);
    sub->add_option("src", c.src_path, a)->required();
    sub->add_option("dst", c.dst_path, b)->required();
  };
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--epsilon", c.epsilon, "target accuracy, in (0, 0.1]");
    sub->add_option("--precision-bits", c.precision_bits,
                    "cap on fractional bits of computed coordinates");
    sub->add_flag("--early-exit", c.early_exit,
                  "stop once successive lengths move less than epsilon/10");
  };

  auto* validate =
      app.add_subcommand("validate", "parse and check a complex description");
  add_pip(validate);

  auto* ideals =
      app.add_subcommand("ideals", "list the vertices of the complex");
  add_pip(ideals);
  ideals->add_option("--limit", c.limit, "refuse beyond this many vertices");

  auto* distance = app.add_subcommand(
      "distance", "approximate geodesic distance between two points");
  add_pair(distance, "start point (JSON)", "end point (JSON)");
  add_run_flags(distance);

  auto* geodesic = app.add_subcommand(
      "geodesic", "approximate geodesic with chain and per-leg geometry");
  add_pair(geodesic, "start point (JSON)", "end point (JSON)");
  add_run_flags(geodesic);
  geodesic->add_flag("--trace", c.trace,
                     "include the per-sweep length trajectory");

  auto* midpoint = app.add_subcommand(
      "midpoint", "near-midpoint of a star-local pair on the dyadic grid");
  add_pair(midpoint, "first point (JSON)", "second point (JSON)");
  midpoint->add_option("--delta", c.delta, "midpoint accuracy");
  midpoint->add_option("--precision-bits", c.precision_bits,
                       "cap on fractional bits of the result");

  auto* lemma = app.add_subcommand(
      "check-lemma", "verify the halving-matrix decay certificates");
  lemma->add_option("n", c.lemma_n, "matrix order, 2..512")->required();

  auto* oracle = app.add_subcommand(
      "oracle", "independent grid estimate of the distance");
  oracle->set_help_flag("--help", "print help");  // frees --h for the pitch
  add_pair(oracle, "first point (JSON)", "second point (JSON)");
  oracle->add_option("--h", c.h, "grid pitch; 1/h must be an integer");
  oracle->add_option("--r", c.r, "arc radius, 1..3");

  auto* gen = app.add_subcommand(
      "gen", "generate a pseudorandom complex description");
  gen->add_option("--elements", c.elements, "number of elements");
  gen->add_option("--density", c.density, "relation density, 0..1");
  gen->add_option("--seed", c.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(c);
    if (ideals->parsed()) return cmd_ideals(c);
    if (distance->parsed()) return cmd_distance(c);
    if (geodesic->parsed()) return cmd_geodesic(c);
    if (midpoint->parsed()) return cmd_midpoint(c);
    if (lemma->parsed()) return cmd_check_lemma(c);
    if (oracle->parsed()) return cmd_oracle(c);
    if (gen->parsed()) return cmd_gen(c);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionLoss& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
