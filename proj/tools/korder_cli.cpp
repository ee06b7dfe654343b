#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "korder/bench.hpp"

int main(int argc, char** argv) {
  using namespace korder;

  CLI::App app{"k-core maintenance over an order-maintained k-order"};
  app.require_subcommand(1);

  std::string decompose_path;
  auto* dec = app.add_subcommand("decompose", "core histogram as k,count rows");
  dec->add_option("file", decompose_path, "edge-list file")->required();

  BenchConfig bench;
  std::string mode = "insert";
  std::string bench_path;
  std::string out_path;
  auto* b = app.add_subcommand("bench", "time insert/remove/batch over sampled edges");
  b->add_option("--mode", mode, "insert, remove or batch")
      ->check(CLI::IsMember({"insert", "remove", "batch"}));
  b->add_option("--sample", bench.sample_count, "number of sampled edges")->required();
  b->add_option("--seed", bench.seed, "sampling seed");
  b->add_option("--reps", bench.repetitions, "repetitions")->check(CLI::PositiveNumber);
  b->add_option("--out", out_path, "CSV output path (default stdout)");
  b->add_option("file", bench_path, "edge-list file")->required();

  oracle::FuzzConfig fuzz;
  std::string fault = "none";
  auto* val = app.add_subcommand("validate", "differential fuzz against the peeling oracle");
  val->add_option("--n", fuzz.n, "vertices");
  val->add_option("--m", fuzz.m, "edges");
  val->add_option("--steps", fuzz.steps, "alternating insert/remove steps");
  val->add_option("--seed", fuzz.seed, "seed");
  val->add_option("--inject-fault", fault)
      ->check(CLI::IsMember({"none", "drop-last-promotion", "skip-removal-repair"}))
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (dec->parsed()) return cmd_decompose(decompose_path, std::cout, std::cerr);

  if (b->parsed()) {
    bench.mode = *parse_bench_mode(mode);
    bench.graph_path = bench_path;
    bench.csv_path = out_path;
    return cmd_bench(bench, std::cout, std::cerr);
  }

  static const std::map<std::string, Fault> faults{
      {"none", Fault::kNone},
      {"drop-last-promotion", Fault::kDropLastPromotion},
      {"skip-removal-repair", Fault::kSkipRemovalRepair}};
  fuzz.fault = faults.at(fault);
  return cmd_validate(fuzz, std::cout, std::cerr);
}
