#include <set>

#include "ipsx/harness.hpp"

namespace ipsx::harness {

namespace {

constexpr int kExit = -1;

// Blocks (or kExit) control can reach from the nodes in `starts` without
// passing through another statement.
std::set<int> next_blocks(const flow::Cfg& cfg, const std::vector<int>& starts) {
  std::set<int> out;
  std::set<int> seen;
  std::vector<int> work;
  for (int s : starts) {
    for (int m : cfg.successors(s)) work.push_back(m);
  }
  while (!work.empty()) {
    int n = work.back();
    work.pop_back();
    if (!seen.insert(n).second) continue;
    const flow::CfgNode& node = cfg.nodes[static_cast<std::size_t>(n)];
    if (n == cfg.exit) {
      out.insert(kExit);
      continue;
    }
    if (node.block >= 0) {
      if (cfg.blocks[static_cast<std::size_t>(node.block)].nodes.front() == n) out.insert(node.block);
      continue;
    }
    for (int m : cfg.successors(n)) work.push_back(m);
  }
  return out;
}

}  // namespace

std::optional<std::string> check_marker_walk(const flow::Cfg& cfg, const Trace& trace) {
  std::vector<std::set<int>> follows;
  for (const auto& b : cfg.blocks) follows.push_back(next_blocks(cfg, b.nodes));
  std::set<int> from_entry = next_blocks(cfg, {cfg.entry});

  int last = -2;  // -2: no marker yet in this run
  for (const auto& e : trace) {
    if (e.kind == Event::Kind::Mark) {
      int b = std::stoi(e.text);
      if (b < 0 || b >= static_cast<int>(cfg.blocks.size())) return "marker " + e.text + " names no block";
      const std::set<int>& allowed = last == -2 ? from_entry : follows[static_cast<std::size_t>(last)];
      if (!allowed.count(b)) {
        return "block " + std::to_string(b) + " cannot follow " + (last == -2 ? "entry" : "block " + std::to_string(last));
      }
      last = b;
    } else if (e.kind == Event::Kind::Return) {
      if (last == -2 && !from_entry.count(kExit)) return "a function ran without reaching any block";
      if (last >= 0 && !follows[static_cast<std::size_t>(last)].count(kExit)) {
        return "block " + std::to_string(last) + " cannot reach exit";
      }
      last = -2;
    }
  }
  return std::nullopt;
}

}  // namespace ipsx::harness
