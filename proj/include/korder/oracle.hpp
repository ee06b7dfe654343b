#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "korder/graph.hpp"
#include "korder/maintain.hpp"
#include "korder/types.hpp"

namespace korder::oracle {

// Core numbers by iterated deletion: for k = 1, 2, ... strip vertices of
// degree < k until nothing changes. Quadratic; desk-scale graphs only.
std::vector<CoreValue> naive_cores(const Graph& g);

// G(n, m): m distinct edges drawn uniformly. Throws if m > n(n-1)/2.
Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

enum class StepKind : std::uint8_t { kInsert, kRemove };

struct Step {
  StepKind kind;
  VertexId u;
  VertexId v;
  friend bool operator==(const Step&, const Step&) = default;
};

struct OpScript {
  std::uint64_t seed = 0;
  std::vector<Step> steps;
};

// Alternating insert/remove script valid when replayed from `start`: inserts
// pick absent pairs, removes pick present edges. Falls back to the other kind
// when the graph is empty or complete.
OpScript make_script(const Graph& start, std::size_t steps, std::uint64_t seed);

// True when every step's precondition holds replayed from `start`.
bool script_valid(const Graph& start, const OpScript& script);

struct Violation {
  std::string kind;
  std::string detail;
};

struct Failure {
  std::size_t step;  // index into the script; npos-like for the initial state
  std::vector<Violation> violations;
};

inline constexpr std::size_t kInitialState = static_cast<std::size_t>(-1);

// All obligations on a quiescent maintainer: cores equal the oracle, the
// state validates, and the last operation (if any) obeyed change-by-one,
// locality and its kind-specific bounds.
std::vector<Violation> check_state(const CoreMaintainer& cm);
std::vector<Violation> check_step(const std::vector<CoreValue>& before, const Step& step,
                                  const OpStats& stats, CoreMaintainer& cm);

// Replays the script with full checking after every step; returns the first
// failing step.
std::optional<Failure> replay_checked(const Graph& start, const OpScript& script,
                                      Fault fault = Fault::kNone);

// Greedy shrinking: drop the suffix after the failing step, then single steps,
// keeping each candidate only if it is still valid and still fails with the
// same violation kind.
OpScript shrink(const Graph& start, const OpScript& script, const Failure& failure,
                Fault fault = Fault::kNone);

struct FuzzConfig {
  std::size_t n = 100;
  std::size_t m = 300;
  std::size_t steps = 500;
  std::uint64_t seed = 0;
  Fault fault = Fault::kNone;
};

struct FuzzReport {
  FuzzConfig config;
  std::size_t steps_checked = 0;
  std::optional<Failure> failure;
  OpScript reproduction;

  bool ok() const { return !failure.has_value(); }
  std::string to_text() const;
};

FuzzReport fuzz(const FuzzConfig& config);

}  // namespace korder::oracle
