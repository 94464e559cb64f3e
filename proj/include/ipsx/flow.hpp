#pragma once

// Statement-level control-flow graphs over IPS terms, basic blocks, and the
// inserter that places block items at logical program points.

#include <string>
#include <vector>

#include "ipsx/language.hpp"

namespace ipsx::flow {

enum class NodeRole {
  Entry,
  Exit,
  Stmt,     // start of a statement (block item or unbraced body)
  Skip,     // stands in for an empty body
  Cond,     // start of a loop or branch condition
  Operand,  // right operand of a short-circuit operator
  Step,     // for-loop step expression
};

std::string_view to_string(NodeRole role);

/// Node paths are relative to the term the graph was built from.
struct CfgNode {
  int id = 0;
  NodeRole role = NodeRole::Stmt;
  Path path;
  int block = -1;  // basic block of Stmt/Skip nodes
  bool reachable = false;
};

struct InsertionPoint {
  enum class Kind { BeforeStmt, BeforeLoopCondition, BlockEntry };
  Kind kind = Kind::BeforeStmt;
  Path path;

  static InsertionPoint before_stmt(Path p) { return {Kind::BeforeStmt, std::move(p)}; }
  static InsertionPoint before_loop_condition(Path p) { return {Kind::BeforeLoopCondition, std::move(p)}; }
  static InsertionPoint block_entry(Path p) { return {Kind::BlockEntry, std::move(p)}; }

  friend bool operator==(const InsertionPoint&, const InsertionPoint&) = default;
};

struct BasicBlock {
  int id = 0;
  InsertionPoint leader;
  std::vector<int> nodes;  // in program order; the first is the leader node
};

struct Cfg {
  std::vector<CfgNode> nodes;
  std::vector<std::pair<int, int>> edges;  // sorted, no duplicates
  int entry = 0;
  int exit = 1;
  std::vector<BasicBlock> blocks;

  std::vector<int> successors(int node) const;
  std::vector<int> predecessors(int node) const;
  /// Graph text: `n<id> [label="..."]` per node, `n<a> -> n<b>` per edge.
  std::string dot() const;
};

/// `term` is a whole program or one function body (a generic Block).
Cfg build_cfg(const Term& term, const LanguageDef& lang);

/// Blocks in pre-order of their leaders, ids 0..n-1.
std::vector<BasicBlock> basic_blocks(const Cfg& cfg);

/// Inserts copies of `stmts` (BlockItemL terms) at `point`.
Term insert_at(const Term& term, const InsertionPoint& point, const std::vector<Term>& stmts,
               const LanguageDef& lang);

enum class SiteKind { BeforeLoop, BodyEnd, BeforeContinue };

struct Site {
  SiteKind kind;
  Path path;  // the loop, its body, or the continue statement
};

/// Where BeforeLoopCondition on the loop at `loop` inserts, in program order.
std::vector<Site> loop_condition_sites(const Term& term, const Path& loop, const LanguageDef& lang);

/// Moves a for-loop's init before the loop and its step to the end of the
/// body and before each continue aimed at the loop.
Term desugar_for(const Term& term, const Path& loop, const LanguageDef& lang);

// Lower-level editing helpers, shared with the passes.
Term insert_before(const Term& root, const Path& stmt, const std::vector<Term>& items, const LanguageDef& lang);
Term append_to_body(const Term& root, const BodyRef& body, const std::vector<Term>& items, const LanguageDef& lang);
bool is_jump(const StmtView& v);

}  // namespace ipsx::flow
