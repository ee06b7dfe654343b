#include "korder/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "korder/random.hpp"

namespace korder {

std::size_t Graph::max_degree() const {
  if (max_degree_stale_) {
    max_degree_ = 0;
    for (const auto& adj : adjacency_) max_degree_ = std::max(max_degree_, adj.size());
    max_degree_stale_ = false;
  }
  return max_degree_;
}

void Graph::check_id(VertexId v) const {
  if (v >= adjacency_.size()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n = " +
                            std::to_string(adjacency_.size()) + ")");
  }
}

bool Graph::add_edge(VertexId u, VertexId v) {
  check_id(u);
  check_id(v);
  if (u == v) return false;
  const VertexId lo = std::min(u, v);
  const VertexId hi = std::max(u, v);
  const Slots slots{static_cast<std::uint32_t>(adjacency_[lo].size()),
                    static_cast<std::uint32_t>(adjacency_[hi].size())};
  if (!index_.try_emplace(key(lo, hi), slots).second) return false;
  adjacency_[lo].push_back(hi);
  adjacency_[hi].push_back(lo);
  if (!max_degree_stale_) {
    max_degree_ = std::max({max_degree_, adjacency_[lo].size(), adjacency_[hi].size()});
  }
  return true;
}

void Graph::detach(VertexId owner, std::uint32_t pos) {
  auto& adj = adjacency_[owner];
  const VertexId moved = adj.back();
  if (pos + 1 != adj.size()) {
    adj[pos] = moved;
    Slots& s = index_.at(key(std::min(owner, moved), std::max(owner, moved)));
    (owner < moved ? s.low : s.high) = pos;
  }
  adj.pop_back();
}

bool Graph::remove_edge(VertexId u, VertexId v) {
  check_id(u);
  check_id(v);
  if (u == v) return false;
  const VertexId lo = std::min(u, v);
  const VertexId hi = std::max(u, v);
  const auto it = index_.find(key(lo, hi));
  if (it == index_.end()) return false;
  const Slots slots = it->second;
  index_.erase(it);
  if (adjacency_[lo].size() == max_degree_ || adjacency_[hi].size() == max_degree_) {
    max_degree_stale_ = true;
  }
  detach(lo, slots.low);
  detach(hi, slots.high);
  return true;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  check_id(u);
  check_id(v);
  return u != v && index_.contains(key(std::min(u, v), std::max(u, v)));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  std::vector<VertexId> higher;
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    higher.clear();
    for (VertexId w : adjacency_[u]) {
      if (w > u) higher.push_back(w);
    }
    std::sort(higher.begin(), higher.end());
    for (VertexId w : higher) out.push_back({u, w});
  }
  return out;
}

bool Graph::check_invariants() const {
  std::size_t degree_sum = 0;
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    const auto& adj = adjacency_[u];
    degree_sum += adj.size();
    for (std::uint32_t pos = 0; pos < adj.size(); ++pos) {
      const VertexId w = adj[pos];
      if (w == u || w >= adjacency_.size()) return false;
      const auto it = index_.find(key(std::min(u, w), std::max(u, w)));
      if (it == index_.end()) return false;
      const std::uint32_t expected = u < w ? it->second.low : it->second.high;
      if (expected != pos) return false;
      const auto& back = adjacency_[w];
      const std::uint32_t mirror = u < w ? it->second.high : it->second.low;
      if (mirror >= back.size() || back[mirror] != u) return false;
    }
  }
  return degree_sum == 2 * index_.size();
}

namespace {

bool parse_id(std::string_view token, std::uint64_t& out) {
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::string_view next_token(std::string_view& rest) {
  const auto begin = rest.find_first_not_of(" \t\r\v\f");
  if (begin == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(begin);
  const auto end = rest.find_first_of(" \t\r\v\f");
  const std::string_view token = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return token;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in) {
  std::unordered_map<std::uint64_t, VertexId> compact;
  std::vector<std::uint64_t> original;
  std::vector<Edge> raw;

  auto intern = [&](std::uint64_t id) {
    const auto [it, fresh] = compact.try_emplace(id, static_cast<VertexId>(original.size()));
    if (fresh) original.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    const std::string_view first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    const std::string_view second = next_token(rest);
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_id(first, a)) throw ParseError(line_no, "malformed vertex id '" + std::string(first) + "'");
    if (second.empty()) throw ParseError(line_no, "expected two vertex ids");
    if (!parse_id(second, b)) throw ParseError(line_no, "malformed vertex id '" + std::string(second) + "'");
    const VertexId u = intern(a);
    const VertexId v = intern(b);
    raw.push_back({u, v});
  }

  LoadedGraph out{Graph(original.size()), std::move(original)};
  for (const Edge& e : raw) out.graph.add_edge(e.u, e.v);
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

EdgeBatch sample_edges(const Graph& g, std::size_t count, std::uint64_t seed) {
  if (count > g.edge_count()) {
    throw std::invalid_argument("sample of " + std::to_string(count) + " edges exceeds m = " +
                                std::to_string(g.edge_count()));
  }
  std::vector<Edge> all = g.edges();
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(all.size() - i);
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  return all;
}

}  // namespace korder
