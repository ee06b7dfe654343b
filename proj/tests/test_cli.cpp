#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "korder/bench.hpp"
#include "support.hpp"

using namespace korder;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("korder_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(KORDER_CLI_PATH) + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

// Drops the timing columns so runs can be compared byte for byte.
std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string f;
    for (int col = 0; std::getline(fields, f, ','); ++col) {
      if (col != 10 && col != 11) out << f;
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("decompose prints the core histogram") {
  auto tri = write_file("tri.txt", "1 2\n2 3\n3 1\n");
  auto r = run("decompose " + tri.string());
  CHECK(r.status == 0);
  CHECK(r.out == "2,3\n");
  CHECK(r.err.find("n=3 m=3") != std::string::npos);
  CHECK(r.err.find("max_k=2") != std::string::npos);

  auto path = write_file("path.txt", "a b\n");
  CHECK(run("decompose " + path.string()).status == 2);
  auto path3 = write_file("path3.txt", "10 20\n20 30\n");
  CHECK(run("decompose " + path3.string()).out == "1,3\n");
}

TEST_CASE("decompose of an empty file") {
  auto empty = write_file("empty.txt", "");
  auto r = run("decompose " + empty.string());
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("n=0") != std::string::npos);
}

TEST_CASE("missing files and bad usage exit with 2") {
  CHECK(run("decompose " + (scratch() / "nope.txt").string()).status == 2);
  CHECK(run("").status == 2);
  CHECK(run("bench --mode sideways --sample 1 x").status == 2);
  CHECK(run("validate --n 1").status == 2);
}

TEST_CASE("insert bench over a whole triangle ends at the original cores") {
  auto tri = write_file("tri.txt", "1 2\n2 3\n3 1\n");
  auto csv = scratch() / "tri.csv";
  auto r = run("bench --mode insert --sample 3 --seed 4 --reps 2 --out " + csv.string() + " " +
               tri.string());
  CHECK(r.status == 0);
  CHECK(r.err.find("matches a fresh decomposition") != std::string::npos);
  auto text = slurp(csv);
  CHECK(text.find("summary,3,") != std::string::npos);

  auto loaded = load_edge_list(tri);
  BenchConfig cfg;
  cfg.sample_count = 3;
  cfg.seed = 4;
  auto rep = run_bench(loaded.graph, loaded.original_ids, cfg);
  CHECK(rep.final_cores == std::vector<CoreValue>{2, 2, 2});
  CHECK(rep.rows.size() == 3);
}

TEST_CASE("remove bench with an empty sample") {
  auto tri = write_file("tri.txt", "1 2\n2 3\n3 1\n");
  auto r = run("bench --mode remove --sample 0 " + tri.string());
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string header, summary, extra;
  std::getline(lines, header);
  std::getline(lines, summary);
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(summary.rfind("summary,0,,,0,0,0,0,0,0,0.0,0.0,0.0000", 0) == 0);
}

TEST_CASE("oversized samples fail before anything runs") {
  auto tri = write_file("tri.txt", "1 2\n2 3\n3 1\n");
  auto csv = scratch() / "never.csv";
  fs::remove(csv);
  auto r = run("bench --mode remove --sample 4 --out " + csv.string() + " " + tri.string());
  CHECK(r.status == 2);
  CHECK_FALSE(fs::exists(csv));
}

TEST_CASE("bench output is deterministic apart from timing") {
  auto g = oracle::random_graph(200, 800, 9);
  std::ostringstream text;
  write_edge_list(text, g);
  auto file = write_file("g.txt", text.str());
  for (const char* mode : {"insert", "remove", "batch"}) {
    auto a = run(std::string("bench --mode ") + mode + " --sample 100 --seed 3 --reps 2 " +
                 file.string());
    auto b = run(std::string("bench --mode ") + mode + " --sample 100 --seed 3 --reps 2 " +
                 file.string());
    CHECK(a.status == 0);
    CHECK(strip_timing(a.out) == strip_timing(b.out));
  }
}

TEST_CASE("batch and insert modes reach the same cores") {
  auto g = oracle::random_graph(150, 500, 11);
  std::vector<std::uint64_t> ids(150);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    BenchConfig cfg;
    cfg.sample_count = 60;
    cfg.seed = seed;
    cfg.mode = BenchMode::kInsert;
    auto one = run_bench(g, ids, cfg);
    cfg.mode = BenchMode::kBatch;
    auto batch = run_bench(g, ids, cfg);
    CHECK(one.final_cores == batch.final_cores);
    CHECK_FALSE(one.verify_failed);
    CHECK_FALSE(batch.verify_failed);
  }
}

TEST_CASE("batching the two chain edges searches less than inserting them one by one") {
  auto base = testing::graph_from(7, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {4, 6}});
  std::vector<Edge> edges{{0, 5}, {1, 5}};
  CoreMaintainer batch(base);
  auto b = batch.insert_batch(edges);
  CoreMaintainer seq(base);
  OpStats total;
  for (const Edge& e : edges) total += seq.insert_edge(e.u, e.v);
  CHECK(std::vector<CoreValue>(batch.cores().begin(), batch.cores().end()) ==
        std::vector<CoreValue>(seq.cores().begin(), seq.cores().end()));
  CHECK(b.v_plus_size <= total.v_plus_size);
}

TEST_CASE("validate exit codes") {
  auto ok = run("validate");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("0 violations") != std::string::npos);
  auto zero = run("validate --steps 0 --seed 5");
  CHECK(zero.status == 0);
  auto broken = run("validate --steps 200 --inject-fault drop-last-promotion");
  CHECK(broken.status == 1);
  CHECK(broken.out.find("minimized reproduction") != std::string::npos);
}
