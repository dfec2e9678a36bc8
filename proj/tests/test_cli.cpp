#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "geosssp/io.hpp"

using namespace geosssp;
namespace fs = std::filesystem;

namespace {

const fs::path &scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "geosssp_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string at(const std::string &name) { return (scratch() / name).string(); }

int run(const std::string &args) {
  const std::string cmd = std::string(GEOSSSP_CLI) + " " + args + " > " + at("stdout.txt") + " 2> " +
                          at("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_wall_time(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("wall_ms") == std::string::npos) {
      out += line + "\n";
    }
  }
  return out;
}

} // namespace

TEST_CASE("gen-spanner with two points has one edge") {
  REQUIRE(run("gen-spanner --n 2 --seed 1 -o " + at("two.geograph")) == 0);
  std::ifstream in(at("two.geograph"));
  const auto g = read_graph(in);
  CHECK(g.n() == 2);
  CHECK(g.m() == 1);
}

TEST_CASE("hkrs and dijkstra agree through verify") {
  REQUIRE(run("gen-spanner --n 3000 --seed 4 -o " + at("g.geograph")) == 0);
  REQUIRE(run("sssp --engine dijkstra --graph " + at("g.geograph") + " --source 5 -o " + at("d.labels")) == 0);
  REQUIRE(run("sssp --engine hkrs --graph " + at("g.geograph") + " --source 5 -o " + at("h.labels") +
              " --stats " + at("stats.json")) == 0);
  CHECK(run("verify " + at("d.labels") + " " + at("h.labels")) == 0);
  CHECK(slurp(at("stats.json")).find("relaxations") != std::string::npos);
  CHECK(run("sssp --engine hkrs --graph " + at("g.geograph") + " --source 5 --budget 1 -o " +
            at("h1.labels")) == 0);
  CHECK(run("verify " + at("d.labels") + " " + at("h1.labels")) == 0);

  std::ofstream(at("off.labels")) << "0 0\n1 1\n";
  CHECK(run("verify " + at("d.labels") + " " + at("off.labels")) == 1);
}

TEST_CASE("systems, separators and divisions") {
  REQUIRE(run("gen-kply --n 3000 --k 5 --seed 2 -o " + at("k.geosys")) == 0);
  REQUIRE(run("igraph -i " + at("k.geosys") + " -o " + at("k.geograph")) == 0);
  CHECK(run("separate --method mttv -i " + at("k.geosys") + " --seed 3 -o " + at("cut.json")) == 0);
  CHECK(slurp(at("cut.json")).find("\"valid\": true") != std::string::npos);
  CHECK(run("separate --method lanky -i " + at("k.geograph") + " -o " + at("lcut.json")) == 0);
  REQUIRE(run("gen-cubes --n 3000 --kappa 5 --seed 2 -o " + at("c.geosys")) == 0);
  CHECK(run("separate --method sw -i " + at("c.geosys") + " -o " + at("scut.json")) == 0);

  CHECK(run("rdiv --class kply --sys " + at("k.geosys") + " -o " + at("tree.json") + " --report " +
            at("report.json")) == 0);
  CHECK(slurp(at("report.json")).find("\"valid\": true") != std::string::npos);
  CHECK(run("rdiv --class cubes --sys " + at("c.geosys") + " -o " + at("ctree.json")) == 0);
  CHECK(run("sssp --engine hkrs --class kply --sys " + at("k.geosys") + " --source 0 -o " +
            at("k.labels")) == 0);
  CHECK(run("sssp --engine dijkstra --graph " + at("k.geograph") + " --source 0 -o " + at("kd.labels")) == 0);
  CHECK(run("verify " + at("k.labels") + " " + at("kd.labels") + " --tol 1e-12") == 0);
}

TEST_CASE("artifacts are byte-identical across runs") {
  // Same command lines each round; outputs are copied aside before the rerun.
  for (const char *tag : {"a", "b"}) {
    const std::string t(tag);
    REQUIRE(run("gen-spanner --n 2000 --dist clustered --seed 9 -o " + at("s")) == 0);
    REQUIRE(run("gen-cubes --n 1000 --d 3 --seed 9 -o " + at("c")) == 0);
    REQUIRE(run("rdiv --graph " + at("s") + " --seed 5 -o " + at("r")) == 0);
    REQUIRE(run("sssp --graph " + at("s") + " --source 3 -o " + at("l") + " --stats " + at("st")) == 0);
    for (const char *name : {"s", "c", "r", "l", "st"}) {
      fs::copy_file(at(name), at(std::string(name) + t), fs::copy_options::overwrite_existing);
    }
  }
  for (const char *name : {"s", "c", "r", "l"}) {
    const std::string n(name);
    CHECK(slurp(at(n + "a")) == slurp(at(n + "b")));
  }
  CHECK(without_wall_time(slurp(at("sta"))) == without_wall_time(slurp(at("stb"))));
}

TEST_CASE("bench writes one row per size") {
  REQUIRE(run("bench --sweep 10:12 -o " + at("bench.csv")) == 0);
  std::ifstream in(at("bench.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("n,", 0) == 0);
  CHECK(header.find("relaxations") != std::string::npos);
  CHECK(header.find("key_updates") != std::string::npos);
  CHECK(header.find("wall_ms") != std::string::npos);
  CHECK(header.find("sep_max") != std::string::npos);
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    rows += line.empty() ? 0 : 1;
  }
  CHECK(rows == 3);
}

TEST_CASE("exit codes") {
  CHECK(run("--help") == 0);
  CHECK(run("gen-spanner --n 10 --t 0.5") != 0);
  CHECK(run("rdiv --class planar --graph " + at("two.geograph")) == 2);
  CHECK(run("sssp --graph " + at("missing.geograph")) == 2);
  std::ofstream(at("bad.geograph")) << "geograph v1\nd 2\nn 1\nm 0\nv 0 nan 0\n";
  CHECK(run("sssp --graph " + at("bad.geograph")) != 0);
  CHECK(run("sssp --graph " + at("two.geograph") + " --source 7") == 2);
}
