#include <gtest/gtest.h>

#include <deque>
#include <regex>
#include <set>

#include "data.hpp"
#include "expect_error.hpp"
#include "ipsx/flow.hpp"
#include "ipsx/harness.hpp"

using namespace ipsx;
using flow::NodeRole;

namespace {

Term ips(const LanguageDef& lang, const std::string& src) { return lang.decompose(lang.parse(src)); }

flow::Cfg cfg_of(const std::string& lang_name, const std::string& src) {
  const LanguageDef& lang = language(lang_name);
  return flow::build_cfg(ips(lang, src), lang);
}

bool is_block_node(const flow::CfgNode& n) { return n.role == NodeRole::Stmt || n.role == NodeRole::Skip; }

// Block-level successors: statement nodes (or exit) reachable through
// expression-level nodes only.
std::vector<std::set<int>> block_successors(const flow::Cfg& cfg) {
  std::vector<std::set<int>> out(cfg.nodes.size());
  for (const auto& n : cfg.nodes) {
    std::vector<int> first = cfg.successors(n.id);
    std::deque<int> work(first.begin(), first.end());
    std::set<int> seen;
    while (!work.empty()) {
      int m = work.front();
      work.pop_front();
      if (!seen.insert(m).second) continue;
      const auto& mn = cfg.nodes[static_cast<std::size_t>(m)];
      if (is_block_node(mn) || m == cfg.exit) {
        out[static_cast<std::size_t>(n.id)].insert(m);
        continue;
      }
      for (int s : cfg.successors(m)) work.push_back(s);
    }
  }
  return out;
}

// Leaders from first principles: a statement node starts a block when it is
// reached from entry, has other than one block-level predecessor, or its
// predecessor branches.
std::set<int> oracle_leaders(const flow::Cfg& cfg) {
  auto succ = block_successors(cfg);
  std::vector<std::vector<int>> pred(cfg.nodes.size());
  for (const auto& n : cfg.nodes) {
    if (!is_block_node(n) && n.id != cfg.entry) continue;
    for (int s : succ[static_cast<std::size_t>(n.id)]) pred[static_cast<std::size_t>(s)].push_back(n.id);
  }
  std::set<int> leaders;
  for (const auto& n : cfg.nodes) {
    if (!is_block_node(n)) continue;
    const auto& p = pred[static_cast<std::size_t>(n.id)];
    bool from_entry = std::find(p.begin(), p.end(), cfg.entry) != p.end();
    if (from_entry || p.size() != 1 || succ[static_cast<std::size_t>(p[0])].size() != 1) leaders.insert(n.id);
  }
  return leaders;
}

// Leaders from the syntax alone: the first statement of every body, and every
// statement that follows a branch, loop or jump in its sequence. Nested
// blocks do not start a block of their own.
class SyntacticLeaders {
 public:
  SyntacticLeaders(const LanguageDef& lang, const Term& root) : lang_(lang), root_(root) {
    for (const auto& b : lang.function_bodies(root)) body({b, true});
  }
  std::set<Path> leaders;

 private:
  std::vector<Path> items(const BodyRef& b) const {
    if (!b.is_block) return {b.path};
    std::vector<Path> out;
    std::size_t n = generic::block_items(term_at(root_, b.path)).size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(concat(concat(b.path, {0}), generic::list_item_path(i)));
    return out;
  }
  void body(const BodyRef& b) {
    std::vector<Path> ps = items(b);
    if (ps.empty()) {
      leaders.insert(b.path);
      return;
    }
    seq(ps, true);
  }
  bool seq(const std::vector<Path>& ps, bool lead) {
    for (const auto& p : ps) {
      if (lead) leaders.insert(p);
      lead = false;
      StmtView v = lang_.stmt_view(term_at(root_, p));
      switch (v.kind) {
        case StmtKind::Block: lead = seq(items({concat(p, v.bodies[0].path), v.bodies[0].is_block}), false); break;
        case StmtKind::If:
        case StmtKind::While:
        case StmtKind::For:
        case StmtKind::NumFor:
          for (const auto& b : v.bodies) body({concat(p, b.path), b.is_block});
          lead = true;
          break;
        case StmtKind::Return:
        case StmtKind::Break:
        case StmtKind::Continue: lead = true; break;
        default: break;
      }
    }
    return lead;
  }
  const LanguageDef& lang_;
  const Term& root_;
};

std::set<Path> implementation_leader_paths(const flow::Cfg& cfg) {
  std::set<Path> out;
  for (const auto& b : flow::basic_blocks(cfg)) out.insert(cfg.nodes[static_cast<std::size_t>(b.nodes.front())].path);
  return out;
}

std::set<int> implementation_leaders(const flow::Cfg& cfg) {
  std::set<int> out;
  for (const auto& b : flow::basic_blocks(cfg)) out.insert(b.nodes.front());
  return out;
}

void collect_stmt_paths(const LanguageDef& lang, const Term& t, Path& here, std::vector<Path>& out) {
  if (t.sort() == lang.stmt_sort()) out.push_back(here);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    here.push_back(i);
    collect_stmt_paths(lang, t.child(i), here, out);
    here.pop_back();
  }
}

std::vector<Path> loops_of(const LanguageDef& lang, const Term& program, bool with_numfor) {
  std::vector<Path> all, loops;
  Path here;
  collect_stmt_paths(lang, program, here, all);
  for (auto& p : all) {
    StmtKind k = lang.stmt_view(term_at(program, p)).kind;
    if (k != StmtKind::While && k != StmtKind::For && !(with_numfor && k == StmtKind::NumFor)) continue;
    // Address the enclosing block item when there is one.
    Path parent(p.begin(), p.end() - 1);
    bool in_item = !p.empty() && term_at(program, parent).sort() == generic::sorts::BlockItemL();
    loops.push_back(in_item ? parent : p);
  }
  return loops;
}

Term probe(const LanguageDef& lang) {
  return make_assign_item(lang, lang.lhs_of({lang.var_ref("__probe")}), lang.true_rhs());
}

bool is_probe(const LanguageDef& lang, const Term& root, const flow::CfgNode& n) {
  if (n.role != NodeRole::Stmt) return false;
  Term t = term_at(root, n.path);
  if (t.sort() != generic::sorts::BlockItemL()) t = inj_f(lang.injections(), t, generic::sorts::BlockItemL());
  return t == probe(lang);
}

bool reaches_avoiding(const flow::Cfg& cfg, std::vector<int> from, int target, const std::vector<bool>& blocked) {
  std::vector<bool> seen(cfg.nodes.size());
  std::deque<int> work(from.begin(), from.end());
  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    if (n == target) return true;
    if (seen[static_cast<std::size_t>(n)] || blocked[static_cast<std::size_t>(n)]) continue;
    seen[static_cast<std::size_t>(n)] = true;
    for (int s : cfg.successors(n)) work.push_back(s);
  }
  return false;
}

}  // namespace

TEST(Cfg, StraightLineIsOneBlock) {
  flow::Cfg cfg = cfg_of("minijs", "function f(a) {\n  var x = a;\n  print(x);\n  x = x + 1;\n}\n");
  EXPECT_EQ(flow::basic_blocks(cfg).size(), 1u);
  EXPECT_EQ(cfg.nodes.size(), 3u + 2u);
  EXPECT_EQ(cfg.successors(cfg.entry).size(), 1u);
  EXPECT_EQ(cfg.predecessors(cfg.exit).size(), 1u);
}

TEST(Cfg, IfElseHasFourBlocks) {
  flow::Cfg cfg = cfg_of("minic", "int f(int a) {\n  a = a + 1;\n  if (a < 2) {\n    print(1);\n  } else {\n    print(2);\n  }\n  return a;\n}\n");
  auto blocks = flow::basic_blocks(cfg);
  ASSERT_EQ(blocks.size(), 4u);
  for (std::size_t i = 0; i < blocks.size(); ++i) EXPECT_EQ(blocks[i].id, static_cast<int>(i));
}

TEST(Cfg, WhileHasBackEdgeToCondition) {
  flow::Cfg cfg = cfg_of("minijs", "function f(i) {\n  while (i < 3) {\n    i = i + 1;\n  }\n}\n");
  int cond = -1, body = -1;
  for (const auto& n : cfg.nodes) {
    if (n.role == NodeRole::Cond) cond = n.id;
    if (n.role == NodeRole::Stmt && n.block == 1) body = n.id;
  }
  ASSERT_GE(cond, 0);
  ASSERT_GE(body, 0);
  auto s = cfg.successors(body);
  EXPECT_NE(std::find(s.begin(), s.end(), cond), s.end());
  auto p = cfg.predecessors(cond);
  EXPECT_EQ(p.size(), 2u);
}

TEST(Cfg, ShortCircuitAddsOperandBranch) {
  flow::Cfg cfg = cfg_of("minijs", "function f(a, b) {\n  print(a && b);\n}\n");
  int operand = -1;
  for (const auto& n : cfg.nodes) {
    if (n.role == NodeRole::Operand) operand = n.id;
  }
  ASSERT_GE(operand, 0);
  EXPECT_EQ(cfg.successors(cfg.nodes[2].id).size(), 2u);
  EXPECT_EQ(flow::basic_blocks(cfg).size(), 1u);
}

TEST(Cfg, CountFHasFiveBlocks) {
  flow::Cfg cfg = cfg_of("minijs", testdata::read("countf.mjs"));
  auto blocks = flow::basic_blocks(cfg);
  EXPECT_EQ(blocks.size(), 5u);
  EXPECT_EQ(implementation_leaders(cfg), oracle_leaders(cfg));
}

TEST(Cfg, EmptyBodyIsOneBlock) {
  for (const auto& [lang, src] : std::vector<std::pair<std::string, std::string>>{
           {"minic", "void f() {\n}\n"}, {"minijs", "function f() {\n}\n"}, {"minilua", "function f()\nend\n"}}) {
    flow::Cfg cfg = cfg_of(lang, src);
    ASSERT_EQ(flow::basic_blocks(cfg).size(), 1u) << lang;
    EXPECT_EQ(cfg.nodes[2].role, NodeRole::Skip);
  }
}

TEST(Cfg, BreakAndReturnTargets) {
  flow::Cfg cfg = cfg_of("minijs", "function f(i) {\n  while (true) {\n    if (i > 2) {\n      break;\n    }\n    return 1;\n  }\n  return 0;\n}\n");
  int ret0 = -1;
  for (const auto& n : cfg.nodes) {
    if (n.role == NodeRole::Stmt && cfg.successors(n.id) == std::vector<int>{cfg.exit}) ret0 = n.id;
  }
  EXPECT_GE(ret0, 0);
  EXPECT_EQ(cfg.predecessors(cfg.exit).size(), 2u);
}

TEST(Cfg, DotFormatIsLineOriented) {
  flow::Cfg cfg = cfg_of("minijs", testdata::read("continue_loop.mjs"));
  std::string dot = cfg.dot();
  EXPECT_EQ(dot, flow::build_cfg(ips(language("minijs"), testdata::read("continue_loop.mjs")), language("minijs")).dot());
  std::regex node_line(R"(  n\d+ \[label="[^"]*"\])"), edge_line(R"(  n\d+ -> n\d+)");
  std::istringstream in(dot);
  std::string line;
  std::size_t nodes = 0, edges = 0;
  while (std::getline(in, line)) {
    if (std::regex_match(line, node_line)) ++nodes;
    if (std::regex_match(line, edge_line)) ++edges;
  }
  EXPECT_EQ(nodes, cfg.nodes.size());
  EXPECT_EQ(edges, cfg.edges.size());
}

TEST(Cfg, EveryNodeHasAPredecessorOrIsUnreachable) {
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    for (const auto& src : harness::gen_corpus(lang, 100, 41)) {
      flow::Cfg cfg = flow::build_cfg(ips(lang, src), lang);
      for (const auto& n : cfg.nodes) {
        if (n.id == cfg.entry) continue;
        EXPECT_TRUE(!cfg.predecessors(n.id).empty() || !n.reachable) << src;
      }
    }
  }
}

TEST(Sites, WhileWithoutContinueHasTwo) {
  const LanguageDef& js = language("minijs");
  Term t = ips(js, "function f(c) {\n  while (c) {\n    f();\n  }\n}\n");
  auto loops = loops_of(js, t, false);
  ASSERT_EQ(loops.size(), 1u);
  auto sites = flow::loop_condition_sites(t, loops[0], js);
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0].kind, flow::SiteKind::BeforeLoop);
  EXPECT_EQ(sites[1].kind, flow::SiteKind::BodyEnd);
}

TEST(Sites, OneContinueGivesThree) {
  const LanguageDef& js = language("minijs");
  Term t = ips(js, testdata::read("continue_loop.mjs"));
  auto loops = loops_of(js, t, false);
  auto sites = flow::loop_condition_sites(t, loops[0], js);
  ASSERT_EQ(sites.size(), 3u);
  EXPECT_EQ(sites[1].kind, flow::SiteKind::BeforeContinue);
  Term r = flow::insert_at(t, flow::InsertionPoint::before_loop_condition(loops[0]), {probe(js)}, js);
  EXPECT_EQ(js.pretty(js.recompose(r)),
            "function h() {\n  var i = 0;\n  __probe = true;\n  while (i + 1 < 5) {\n    i = i + 1;\n"
            "    if (i == 2) {\n      __probe = true;\n      continue;\n    }\n    print(i);\n    __probe = true;\n"
            "  }\n  return i;\n}\n");
}

TEST(Sites, NothingBeforeBreak) {
  const LanguageDef& js = language("minijs");
  Term t = ips(js, "function f(c) {\n  while (c) {\n    break;\n  }\n}\n");
  auto sites = flow::loop_condition_sites(t, loops_of(js, t, false)[0], js);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].kind, flow::SiteKind::BeforeLoop);
}

TEST(Sites, ForStepRunsBeforeRecomputation) {
  const LanguageDef& js = language("minijs");
  Term t = ips(js, "function f() {\n  var i;\n  for (i = 0; i < 3; i = i + 1) {\n    print(i);\n  }\n}\n");
  Term r = flow::insert_at(t, flow::InsertionPoint::before_loop_condition(loops_of(js, t, false)[0]), {probe(js)}, js);
  EXPECT_EQ(js.pretty(js.recompose(r)),
            "function f() {\n  var i;\n  i = 0;\n  __probe = true;\n  for (; i < 3;) {\n    print(i);\n"
            "    i = i + 1;\n    __probe = true;\n  }\n}\n");
}

TEST(Insert, BeforeFirstStatementEqualsBlockEntry) {
  const LanguageDef& js = language("minijs");
  Term t = ips(js, "function f() {\n  print(1);\n  print(2);\n}\n");
  Path body = js.function_bodies(t)[0];
  Path first = concat(body, concat({0}, generic::list_item_path(0)));
  Term a = flow::insert_at(t, flow::InsertionPoint::before_stmt(first), {probe(js)}, js);
  Term b = flow::insert_at(t, flow::InsertionPoint::block_entry(body), {probe(js)}, js);
  EXPECT_EQ(a, b);
}

TEST(Insert, RejectsNonBlockItems) {
  const LanguageDef& js = language("minijs");
  Term t = ips(js, "function f() {\n  print(1);\n}\n");
  EXPECT_IPSX_ERROR(flow::insert_at(t, flow::InsertionPoint::block_entry(js.function_bodies(t)[0]), {js.var_ref("x")}, js),
                    ErrorCode::NoInjection);
  EXPECT_IPSX_ERROR(flow::insert_at(t, flow::InsertionPoint::block_entry({0}), {probe(js)}, js), ErrorCode::InvalidPath);
}

// Property: block leaders agree with the syntactic leader oracle, and refine
// the maximal blocks found on the graph.
TEST(FlowProperties, LeadersMatchOracles) {
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    for (const auto& src : harness::gen_corpus(lang, 200, 9)) {
      Term t = ips(lang, src);
      flow::Cfg cfg = flow::build_cfg(t, lang);
      ASSERT_EQ(implementation_leader_paths(cfg), SyntacticLeaders(lang, t).leaders) << src;
      std::set<int> maximal = oracle_leaders(cfg), mine = implementation_leaders(cfg);
      ASSERT_TRUE(std::includes(mine.begin(), mine.end(), maximal.begin(), maximal.end())) << src;
      auto blocks = flow::basic_blocks(cfg);
      for (std::size_t i = 0; i < blocks.size(); ++i) ASSERT_EQ(blocks[i].id, static_cast<int>(i));
    }
  }
}

// Property: after inserting a probe before a loop condition, no path reaches
// the condition without passing through a probe since the last evaluation.
TEST(FlowProperties, LoopConditionSitesAreComplete) {
  std::size_t checked = 0;
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    for (const auto& src : harness::gen_corpus(lang, 150, 13)) {
      Term t = ips(lang, src);
      auto loops = loops_of(lang, t, false);
      for (std::size_t k = 0; k < loops.size(); ++k) {
        std::optional<Term> inserted;
        try {
          inserted = flow::insert_at(t, flow::InsertionPoint::before_loop_condition(loops[k]), {probe(lang)}, lang);
        } catch (const Error& e) {
          ASSERT_EQ(e.code(), ErrorCode::LocalLimit);
          continue;
        }
        const Term& r = *inserted;
        flow::Cfg cfg = flow::build_cfg(r, lang);
        Path loop = loops_of(lang, r, false)[k];
        Path cond = concat(loop, *lang.stmt_view(term_at(r, loop)).cond);
        int c = -1;
        std::vector<bool> blocked(cfg.nodes.size());
        for (const auto& n : cfg.nodes) {
          if (n.role == NodeRole::Cond && n.path == cond) c = n.id;
          blocked[static_cast<std::size_t>(n.id)] = is_probe(lang, r, n);
        }
        ASSERT_GE(c, 0);
        EXPECT_FALSE(reaches_avoiding(cfg, {cfg.entry}, c, blocked)) << src;
        EXPECT_FALSE(reaches_avoiding(cfg, cfg.successors(c), c, blocked)) << src;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
}
