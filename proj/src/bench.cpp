#include "korder/bench.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "korder/decompose.hpp"
#include "korder/graph.hpp"

namespace korder {

std::optional<BenchMode> parse_bench_mode(const std::string& s) {
  if (s == "insert") return BenchMode::kInsert;
  if (s == "remove") return BenchMode::kRemove;
  if (s == "batch") return BenchMode::kBatch;
  return std::nullopt;
}

const char* to_string(BenchMode mode) {
  switch (mode) {
    case BenchMode::kInsert: return "insert";
    case BenchMode::kRemove: return "remove";
    case BenchMode::kBatch: return "batch";
  }
  return "unknown";
}

namespace {

// Two-sided 97.5% quantiles of Student's t for 1..30 degrees of freedom.
constexpr double kT975[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                            2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                            2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};

constexpr std::size_t kVerifyLimit = 10'000;

}  // namespace

double BenchReport::ns_mean() const {
  if (rep_ns.empty()) return 0.0;
  return std::accumulate(rep_ns.begin(), rep_ns.end(), 0.0) / static_cast<double>(rep_ns.size());
}

double BenchReport::ns_ci95() const {
  const std::size_t r = rep_ns.size();
  if (r < 2) return 0.0;
  const double mean = ns_mean();
  double ss = 0.0;
  for (auto x : rep_ns) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  const double sd = std::sqrt(ss / static_cast<double>(r - 1));
  const double t = r - 1 <= 30 ? kT975[r - 2] : 1.960;
  return t * sd / std::sqrt(static_cast<double>(r));
}

BenchReport run_bench(const Graph& g, const std::vector<std::uint64_t>& original_ids,
                      const BenchConfig& config) {
  if (config.repetitions == 0) throw std::invalid_argument("repetitions must be at least 1");
  if (config.sample_count > g.edge_count()) {
    throw std::invalid_argument("sample of " + std::to_string(config.sample_count) +
                                " edges exceeds edge count " + std::to_string(g.edge_count()));
  }
  const EdgeBatch sample = sample_edges(g, config.sample_count, config.seed);
  auto original = [&](VertexId v) -> std::uint64_t {
    return v < original_ids.size() ? original_ids[v] : v;
  };

  BenchReport report;
  report.n = g.vertex_count();
  report.m = g.edge_count();

  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    Graph start = g;
    if (config.mode != BenchMode::kRemove) {
      for (const Edge& e : sample) start.remove_edge(e.u, e.v);
    }
    CoreMaintainer cm(std::move(start));
    OpStats rep_total;

    if (config.mode == BenchMode::kBatch) {
      if (!sample.empty()) {
        const OpStats s = cm.insert_batch(sample);
        report.rows.push_back({rep, 0, 0, 0, false, s});
        rep_total += s;
      }
    } else {
      for (std::size_t i = 0; i < sample.size(); ++i) {
        const Edge& e = sample[i];
        const OpStats s = config.mode == BenchMode::kInsert ? cm.insert_edge(e.u, e.v)
                                                            : cm.remove_edge(e.u, e.v);
        report.rows.push_back({rep, i, original(e.u), original(e.v), true, s});
        rep_total += s;
      }
    }

    report.rep_ns.push_back(rep_total.elapsed_ns);
    if (rep == 0) {
      report.totals = rep_total;
      report.final_cores.assign(cm.cores().begin(), cm.cores().end());
      if (cm.graph().vertex_count() <= kVerifyLimit) {
        report.verified = true;
        report.verify_failed = decompose(cm.graph()).core != report.final_cores ||
                               !validate_quiescent(cm.state(), cm.graph()).empty();
      }
    }
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "rep,op,u,v,v_star,v_plus,e_work,relabels,order_inserts,rounds,ns,ns_ci95,"
         "relabels_per_insert\n";
  auto work = [](const OpStats& s) { return s.e_plus + s.e_star; };
  for (const BenchRow& r : report.rows) {
    out << r.rep << ',' << r.op << ',';
    if (r.has_edge) out << r.u << ',' << r.v; else out << ',';
    const OpStats& s = r.stats;
    out << ',' << s.v_star_size << ',' << s.v_plus_size << ',' << work(s) << ',' << s.relabels
        << ',' << s.order_inserts << ',' << s.rounds << ',' << s.elapsed_ns << ",,\n";
  }
  const OpStats& t = report.totals;
  const double per_insert =
      t.order_inserts == 0 ? 0.0 : static_cast<double>(t.relabels) / static_cast<double>(t.order_inserts);
  out << "summary," << report.rows.size() / std::max<std::size_t>(report.rep_ns.size(), 1)
      << ",,," << t.v_star_size << ',' << t.v_plus_size << ',' << work(t) << ',' << t.relabels
      << ',' << t.order_inserts << ',' << t.rounds << ',' << std::fixed << std::setprecision(1)
      << report.ns_mean() << ',' << report.ns_ci95() << ',' << std::setprecision(4) << per_insert
      << '\n';
  out.unsetf(std::ios::floatfield);
}

void write_core_histogram(std::ostream& out, std::span<const CoreValue> cores) {
  std::map<CoreValue, std::size_t> hist;
  for (CoreValue c : cores) ++hist[c];
  for (const auto& [k, count] : hist) out << k << ',' << count << '\n';
}

namespace {

std::optional<LoadedGraph> load_or_report(const std::filesystem::path& path, std::ostream& err) {
  try {
    return load_edge_list(path);
  } catch (const ParseError& e) {
    err << path.string() << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << e.what() << '\n';
  }
  return std::nullopt;
}

}  // namespace

int cmd_decompose(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  auto loaded = load_or_report(path, err);
  if (!loaded) return 2;
  const Graph& g = loaded->graph;
  const CoreState cs = decompose(g);
  const double avg = g.vertex_count() == 0
                         ? 0.0
                         : 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
  err << "n=" << g.vertex_count() << " m=" << g.edge_count() << " avg_deg=" << std::fixed
      << std::setprecision(2) << avg << " max_k=" << cs.max_core() << '\n';
  err.unsetf(std::ios::floatfield);
  write_core_histogram(out, cs.core);
  return 0;
}

int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_or_report(config.graph_path, err);
  if (!loaded) return 2;
  BenchReport report;
  try {
    report = run_bench(loaded->graph, loaded->original_ids, config);
  } catch (const std::invalid_argument& e) {
    err << "bench: " << e.what() << '\n';
    return 2;
  }

  if (config.csv_path.empty() || config.csv_path == "-") {
    write_bench_csv(out, report);
  } else {
    std::ofstream file(config.csv_path);
    if (!file) {
      err << "cannot write " << config.csv_path.string() << '\n';
      return 2;
    }
    write_bench_csv(file, report);
  }

  const OpStats& t = report.totals;
  err << to_string(config.mode) << ": n=" << report.n << " m=" << report.m
      << " sample=" << config.sample_count << " reps=" << config.repetitions << '\n'
      << "  accumulated " << std::fixed << std::setprecision(3) << report.ns_mean() / 1e6
      << " ms +- " << report.ns_ci95() / 1e6 << " ms (95% CI)\n"
      << "  |V*|=" << t.v_star_size << " |V+|=" << t.v_plus_size << " relabels=" << t.relabels
      << " order_inserts=" << t.order_inserts << '\n';
  err.unsetf(std::ios::floatfield);
  if (report.verified) {
    err << "  end state " << (report.verify_failed ? "DIFFERS from" : "matches")
        << " a fresh decomposition\n";
  }
  return report.verify_failed ? 1 : 0;
}

int cmd_validate(const oracle::FuzzConfig& config, std::ostream& out, std::ostream& err) {
  const std::uint64_t max_edges =
      config.n < 2 ? 0 : std::uint64_t{config.n} * (config.n - 1) / 2;
  if (config.n < 2 || config.m > max_edges) {
    err << "validate: need n >= 2 and m <= n(n-1)/2\n";
    return 2;
  }
  const oracle::FuzzReport report = oracle::fuzz(config);
  out << report.to_text();
  return report.ok() ? 0 : 1;
}

}  // namespace korder
