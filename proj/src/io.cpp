/*******************************************************************************
 * @file:   io.cpp
 ******************************************************************************/
#include "geosssp/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "geosssp/error.hpp"
#include "geosssp/rng.hpp"

namespace geosssp {

namespace {

/// Reads the next non-comment, non-empty line split into tokens.
bool next_tokens(std::istream &in, std::vector<std::string> &tokens, std::size_t &line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    tokens.clear();
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      tokens.push_back(tok);
    }
    if (!tokens.empty()) {
      return true;
    }
  }
  return false;
}

[[noreturn]] void bad_line(const char *format, std::size_t line_no, const std::string &why) {
  throw ConfigError(std::string(format) + " line " + std::to_string(line_no) + ": " + why);
}

std::uint64_t parse_count(const std::string &token, const char *format, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    bad_line(format, line_no, "expected a nonnegative integer, got '" + token + "'");
  }
  return value;
}

std::uint64_t expect_keyed(
    std::istream &in, const char *key, const char *format, std::size_t &line_no
) {
  std::vector<std::string> tokens;
  if (!next_tokens(in, tokens, line_no) || tokens.size() != 2 || tokens[0] != key) {
    bad_line(format, line_no, std::string("expected '") + key + " <count>'");
  }
  return parse_count(tokens[1], format, line_no);
}

void write_notes(std::ostream &out, const Provenance &notes) {
  for (const std::string &note : notes) {
    out << "# " << note << '\n';
  }
}

} // namespace

std::string format_real(double x) {
  if (x == kInfinity) {
    return "inf";
  }
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, ptr);
}

double parse_real(const std::string &token) {
  if (token == "inf") {
    return kInfinity;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ConfigError("expected a real number, got '" + token + "'");
  }
  return value;
}

std::string rng_provenance(std::uint64_t seed) {
  return std::string("rng ") + kRngName + " v" + std::to_string(kRngVersion) + " seed " +
         std::to_string(seed);
}

void write_graph(std::ostream &out, const EuclideanGraph &g, const Provenance &notes) {
  out << "geograph v1\n";
  out << "d " << g.dim() << '\n';
  out << "n " << g.n() << '\n';
  out << "m " << g.m() << '\n';
  for (VertexId v = 0; v < g.n(); ++v) {
    out << "v " << v;
    for (const double x : g.point(v)) {
      out << ' ' << format_real(x);
    }
    out << '\n';
  }
  for (const Edge &e : g.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << format_real(e.w) << '\n';
  }
  write_notes(out, notes);
}

EuclideanGraph read_graph(std::istream &in) {
  constexpr const char *kFormat = "geograph";
  std::size_t line_no = 0;
  std::vector<std::string> tokens;
  if (!next_tokens(in, tokens, line_no) || tokens.size() != 2 || tokens[0] != "geograph" ||
      tokens[1] != "v1") {
    bad_line(kFormat, line_no, "missing 'geograph v1' header");
  }
  const std::uint64_t dim = expect_keyed(in, "d", kFormat, line_no);
  const std::uint64_t n = expect_keyed(in, "n", kFormat, line_no);
  const std::uint64_t m = expect_keyed(in, "m", kFormat, line_no);
  if (dim == 0) {
    bad_line(kFormat, line_no, "dimension must be positive");
  }
  std::vector<double> coords(n * dim);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!next_tokens(in, tokens, line_no) || tokens.size() != dim + 2 || tokens[0] != "v") {
      bad_line(kFormat, line_no, "expected 'v <id> <x1> ... <xd>'");
    }
    if (parse_count(tokens[1], kFormat, line_no) != i) {
      bad_line(kFormat, line_no, "vertex ids must be contiguous from 0");
    }
    for (std::uint64_t j = 0; j < dim; ++j) {
      coords[i * dim + j] = parse_real(tokens[j + 2]);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_tokens(in, tokens, line_no) || tokens.size() != 4 || tokens[0] != "e") {
      bad_line(kFormat, line_no, "expected 'e <u> <v> <weight>'");
    }
    edges.push_back(
        {static_cast<VertexId>(parse_count(tokens[1], kFormat, line_no)),
         static_cast<VertexId>(parse_count(tokens[2], kFormat, line_no)), parse_real(tokens[3])}
    );
  }
  try {
    return EuclideanGraph(dim, std::move(coords), std::move(edges));
  } catch (const ContractError &e) {
    throw ConfigError(std::string("geograph: ") + e.what());
  }
}

void write_system(std::ostream &out, const NeighborhoodSystem &sys, const Provenance &notes) {
  out << "geosys v1 " << (sys.kind == SystemKind::ball ? "ball" : "cube") << '\n';
  out << "d " << sys.dim << '\n';
  out << "n " << sys.size() << '\n';
  for (std::size_t i = 0; i < sys.size(); ++i) {
    out << "o " << i;
    if (sys.kind == SystemKind::ball) {
      for (const double x : sys.balls[i].center.coords()) {
        out << ' ' << format_real(x);
      }
      out << ' ' << format_real(sys.balls[i].radius) << '\n';
    } else {
      for (const double x : sys.cubes[i].corner.coords()) {
        out << ' ' << format_real(x);
      }
      out << ' ' << format_real(sys.cubes[i].side) << '\n';
    }
  }
  out << "# declared_ply " << sys.declared_ply << '\n';
  write_notes(out, notes);
}

NeighborhoodSystem read_system(std::istream &in) {
  constexpr const char *kFormat = "geosys";
  NeighborhoodSystem sys;
  std::size_t line_no = 0;
  std::vector<std::string> tokens;
  if (!next_tokens(in, tokens, line_no) || tokens.size() != 3 || tokens[0] != "geosys" ||
      tokens[1] != "v1" || (tokens[2] != "ball" && tokens[2] != "cube")) {
    bad_line(kFormat, line_no, "missing 'geosys v1 <ball|cube>' header");
  }
  sys.kind = tokens[2] == "ball" ? SystemKind::ball : SystemKind::cube;
  sys.dim = expect_keyed(in, "d", kFormat, line_no);
  const std::uint64_t n = expect_keyed(in, "n", kFormat, line_no);
  if (sys.dim == 0) {
    bad_line(kFormat, line_no, "dimension must be positive");
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!next_tokens(in, tokens, line_no) || tokens.size() != sys.dim + 3 || tokens[0] != "o") {
      bad_line(kFormat, line_no, "expected 'o <id> <c1> ... <cd> <size>'");
    }
    if (parse_count(tokens[1], kFormat, line_no) != i) {
      bad_line(kFormat, line_no, "object ids must be contiguous from 0");
    }
    std::vector<double> c(sys.dim);
    for (std::size_t j = 0; j < sys.dim; ++j) {
      c[j] = parse_real(tokens[j + 2]);
    }
    const double size = parse_real(tokens[sys.dim + 2]);
    try {
      if (sys.kind == SystemKind::ball) {
        sys.balls.push_back(make_ball(Point(std::move(c)), size));
      } else {
        sys.cubes.push_back(make_cube(Point(std::move(c)), size));
      }
    } catch (const ContractError &e) {
      bad_line(kFormat, line_no, e.what());
    }
  }
  // Optional trailing metadata.
  std::string line;
  while (std::getline(in, line)) {
    constexpr std::string_view kPly = "# declared_ply ";
    if (line.starts_with(kPly)) {
      sys.declared_ply =
          static_cast<std::uint32_t>(parse_count(line.substr(kPly.size()), kFormat, line_no));
    }
  }
  return sys;
}

void write_labels(std::ostream &out, const std::vector<double> &dist) {
  for (std::size_t v = 0; v < dist.size(); ++v) {
    out << v << ' ' << format_real(dist[v]) << '\n';
  }
}

std::vector<double> read_labels(std::istream &in) {
  std::vector<double> dist;
  std::size_t line_no = 0;
  std::vector<std::string> tokens;
  while (next_tokens(in, tokens, line_no)) {
    if (tokens.size() != 2) {
      bad_line("labels", line_no, "expected '<vertex> <dist>'");
    }
    if (parse_count(tokens[0], "labels", line_no) != dist.size()) {
      bad_line("labels", line_no, "vertex ids must be contiguous from 0");
    }
    dist.push_back(parse_real(tokens[1]));
  }
  return dist;
}

void save_text(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  out << content;
}

std::string load_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace geosssp
