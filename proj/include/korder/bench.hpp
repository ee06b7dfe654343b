#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "korder/maintain.hpp"
#include "korder/oracle.hpp"
#include "korder/types.hpp"

namespace korder {

enum class BenchMode { kInsert, kRemove, kBatch };

std::optional<BenchMode> parse_bench_mode(const std::string& s);
const char* to_string(BenchMode mode);

struct BenchConfig {
  std::filesystem::path graph_path;
  BenchMode mode = BenchMode::kInsert;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::size_t repetitions = 1;
  std::filesystem::path csv_path;  // empty or "-" for stdout
};

struct BenchRow {
  std::size_t rep = 0;
  std::size_t op = 0;
  std::uint64_t u = 0;  // original ids; unset for the single batch row
  std::uint64_t v = 0;
  bool has_edge = true;
  OpStats stats;
};

struct BenchReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<BenchRow> rows;
  OpStats totals;  // per repetition; every repetition does the same work
  std::vector<std::uint64_t> rep_ns;
  std::vector<CoreValue> final_cores;
  bool verified = false;       // end-state checked against a fresh decomposition
  bool verify_failed = false;

  double ns_mean() const;
  double ns_ci95() const;  // half-width of the 95% t interval
};

// Throws std::invalid_argument for sample_count > m or repetitions == 0,
// before mutating anything.
BenchReport run_bench(const Graph& g, const std::vector<std::uint64_t>& original_ids,
                      const BenchConfig& config);

void write_bench_csv(std::ostream& out, const BenchReport& report);

// Core histogram rows "k,count" for every nonempty k.
void write_core_histogram(std::ostream& out, std::span<const CoreValue> cores);

// Command entry points; they return process exit codes
// (0 ok, 1 validation failure, 2 usage or input error).
int cmd_decompose(const std::filesystem::path& path, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const oracle::FuzzConfig& config, std::ostream& out, std::ostream& err);

}  // namespace korder
