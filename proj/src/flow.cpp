#include "ipsx/flow.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace ipsx::flow {

using generic::sorts::BlockItemL;
using generic::sorts::BlockL;

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Entry: return "entry";
    case NodeRole::Exit: return "exit";
    case NodeRole::Stmt: return "stmt";
    case NodeRole::Skip: return "skip";
    case NodeRole::Cond: return "cond";
    case NodeRole::Operand: return "operand";
    case NodeRole::Step: return "step";
  }
  return "?";
}

std::vector<int> Cfg::successors(int node) const {
  std::vector<int> out;
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair<int, int>{node, -1});
  for (; it != edges.end() && it->first == node; ++it) out.push_back(it->second);
  return out;
}

std::vector<int> Cfg::predecessors(int node) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (b == node) out.push_back(a);
  }
  return out;
}

namespace {

std::string path_text(const Path& p) {
  if (p.empty()) return ".";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
  return s;
}

}  // namespace

std::string Cfg::dot() const {
  std::ostringstream out;
  out << "digraph cfg {\n";
  for (const auto& n : nodes) {
    out << "  n" << n.id << " [label=\"" << to_string(n.role);
    if (n.block >= 0) out << " b" << n.block;
    if (n.role != NodeRole::Entry && n.role != NodeRole::Exit) out << " @" << path_text(n.path);
    out << "\"]\n";
  }
  for (const auto& [a, b] : edges) out << "  n" << a << " -> n" << b << "\n";
  out << "}\n";
  return out.str();
}

bool is_jump(const StmtView& v) {
  return v.kind == StmtKind::Return || v.kind == StmtKind::Break || v.kind == StmtKind::Continue;
}

namespace {

bool is_loop(StmtKind k) { return k == StmtKind::While || k == StmtKind::For || k == StmtKind::NumFor; }

Path rel(const Path& base, const Path& p) { return concat(base, p); }

std::vector<Path> body_stmt_paths(const Term& root, const BodyRef& body) {
  if (!body.is_block) return {body.path};
  std::vector<Path> out;
  std::size_t n = generic::block_items(term_at(root, body.path)).size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(concat(concat(body.path, {0}), generic::list_item_path(i)));
  return out;
}

BodyRef absolute(const Path& base, const BodyRef& b) { return {concat(base, b.path), b.is_block}; }

class Builder {
 public:
  Builder(const Term& root, const LanguageDef& lang) : root_(root), lang_(lang) {}

  Cfg run() {
    cfg_.entry = node(NodeRole::Entry, {});
    cfg_.exit = node(NodeRole::Exit, {});
    std::vector<Path> bodies;
    if (root_.sort() == BlockL()) {
      bodies.push_back({});
    } else {
      bodies = lang_.function_bodies(root_);
    }
    for (const auto& b : bodies) {
      Preds out = body({b, true}, {cfg_.entry});
      link(out, cfg_.exit);
    }
    std::sort(cfg_.edges.begin(), cfg_.edges.end());
    cfg_.edges.erase(std::unique(cfg_.edges.begin(), cfg_.edges.end()), cfg_.edges.end());
    mark_reachable();
    return std::move(cfg_);
  }

 private:
  using Preds = std::vector<int>;

  struct Loop {
    std::vector<int> breaks;
    std::vector<int> continues;
  };

  // Basic block currently being filled; -1 when the next statement leads.
  struct Seq {
    int block = -1;
  };

  int node(NodeRole role, Path path) {
    int id = static_cast<int>(cfg_.nodes.size());
    cfg_.nodes.push_back({id, role, std::move(path), -1, false});
    return id;
  }

  void link(const Preds& from, int to) {
    for (int f : from) cfg_.edges.emplace_back(f, to);
  }

  int new_block(InsertionPoint leader) {
    int id = static_cast<int>(cfg_.blocks.size());
    cfg_.blocks.push_back({id, std::move(leader), {}});
    return id;
  }

  void join_block(int n, const Seq& st) {
    cfg_.nodes[static_cast<std::size_t>(n)].block = st.block;
    cfg_.blocks[static_cast<std::size_t>(st.block)].nodes.push_back(n);
  }

  Preds body(const BodyRef& b, Preds in) {
    Seq st;
    std::vector<Path> items = body_stmt_paths(root_, b);
    if (items.empty()) {
      st.block = new_block(InsertionPoint::block_entry(b.path));
      int n = node(NodeRole::Skip, b.path);
      join_block(n, st);
      link(in, n);
      return {n};
    }
    InsertionPoint first = b.is_block ? InsertionPoint::block_entry(b.path) : InsertionPoint::before_stmt(b.path);
    return sequence(items, first, st, std::move(in));
  }

  Preds sequence(const std::vector<Path>& items, const InsertionPoint& first, Seq& st, Preds in) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (st.block < 0) st.block = new_block(i == 0 ? first : InsertionPoint::before_stmt(items[i]));
      in = stmt(items[i], std::move(in), st);
    }
    return in;
  }

  Preds stmt(const Path& path, Preds in, Seq& st) {
    const Term& t = term_at(root_, path);
    const StmtView v = lang_.stmt_view(t);
    int n = node(NodeRole::Stmt, path);
    join_block(n, st);
    link(in, n);
    Preds cur{n};
    switch (v.kind) {
      case StmtKind::Simple:
        for (const auto& e : v.exprs) cur = expr(rel(path, e), cur);
        if (v.assign) cur = assign(rel(path, *v.assign), cur);
        return cur;
      case StmtKind::Decl: return decl(rel(path, *v.decl), cur);
      case StmtKind::Empty: return cur;
      case StmtKind::Block: {
        std::vector<Path> items = body_stmt_paths(root_, absolute(path, v.bodies[0]));
        if (items.empty()) return cur;
        return sequence(items, InsertionPoint::before_stmt(items[0]), st, cur);
      }
      case StmtKind::Return:
        for (const auto& e : v.exprs) cur = expr(rel(path, e), cur);
        link(cur, cfg_.exit);
        st.block = -1;
        return {};
      case StmtKind::Break:
        innermost(t).breaks.push_back(n);
        st.block = -1;
        return {};
      case StmtKind::Continue:
        innermost(t).continues.push_back(n);
        st.block = -1;
        return {};
      case StmtKind::If: {
        int c = node(NodeRole::Cond, rel(path, *v.cond));
        link(cur, c);
        Preds after = expr(rel(path, *v.cond), {c});
        Preds out = body(absolute(path, v.bodies[0]), after);
        Preds other = v.bodies.size() > 1 ? body(absolute(path, v.bodies[1]), after) : after;
        out.insert(out.end(), other.begin(), other.end());
        st.block = -1;
        return out;
      }
      case StmtKind::While:
      case StmtKind::For:
      case StmtKind::NumFor: {
        st.block = -1;
        return loop(path, v, cur);
      }
    }
    return cur;
  }

  Preds loop(const Path& path, const StmtView& v, Preds cur) {
    if (v.kind == StmtKind::For && v.init) cur = expr(rel(path, *v.init), cur);
    if (v.kind == StmtKind::NumFor) {
      for (const auto& e : v.exprs) cur = expr(rel(path, e), cur);
    }
    int c = node(NodeRole::Cond, v.cond ? rel(path, *v.cond) : path);
    link(cur, c);
    Preds after = v.cond ? expr(rel(path, *v.cond), {c}) : Preds{c};
    loops_.emplace_back();
    Preds bout = body(absolute(path, v.bodies[0]), after);
    Loop lp = std::move(loops_.back());
    loops_.pop_back();
    int head = c;
    if (v.kind == StmtKind::For && v.step) {
      head = node(NodeRole::Step, rel(path, *v.step));
      link(expr(rel(path, *v.step), {head}), c);
    }
    link(bout, head);
    link(lp.continues, head);
    Preds out = (v.cond || v.kind == StmtKind::NumFor) ? after : Preds{};
    out.insert(out.end(), lp.breaks.begin(), lp.breaks.end());
    return out;
  }

  Loop& innermost(const Term& t) {
    if (loops_.empty()) throw Error(ErrorCode::UnstructuredConstruct, t.name() + " outside a loop");
    return loops_.back();
  }

  Preds expr(const Path& path, Preds cur) {
    const ExprView v = lang_.expr_view(term_at(root_, path));
    switch (v.kind) {
      case ExprKind::Strict:
        for (const auto& o : v.operands) cur = expr(rel(path, o), cur);
        return cur;
      case ExprKind::ShortCircuit: {
        cur = expr(rel(path, v.operands[0]), cur);
        int o = node(NodeRole::Operand, rel(path, v.operands[1]));
        link(cur, o);
        Preds rhs = expr(rel(path, v.operands[1]), {o});
        cur.insert(cur.end(), rhs.begin(), rhs.end());
        return cur;
      }
      case ExprKind::Assign: return assign(rel(path, *v.assign), cur);
      default: return cur;
    }
  }

  Preds assign(const Path& path, Preds cur) {
    const Term& a = term_at(root_, path);
    for (const auto& e : lang_.lhs_exprs(a.child(0))) cur = expr(concat(rel(path, {0}), e), cur);
    for (const auto& e : lang_.rhs_exprs(a.child(2))) cur = expr(concat(rel(path, {2}), e), cur);
    return cur;
  }

  Preds decl(const Path& path, Preds cur) {
    const Term& m = term_at(root_, path);
    std::vector<Term> singles = generic::decl_singles(m);
    for (std::size_t i = 0; i < singles.size(); ++i) {
      auto init = generic::single_init(singles[i]);
      if (!init) continue;
      Path ip = concat(concat(concat(path, {1}), generic::list_item_path(i)), {2, 0});
      for (const auto& e : lang_.init_exprs(*init)) cur = expr(concat(ip, e), cur);
    }
    return cur;
  }

  void mark_reachable() {
    std::vector<std::vector<int>> succ(cfg_.nodes.size());
    for (const auto& [a, b] : cfg_.edges) succ[static_cast<std::size_t>(a)].push_back(b);
    std::deque<int> work{cfg_.entry};
    cfg_.nodes[static_cast<std::size_t>(cfg_.entry)].reachable = true;
    while (!work.empty()) {
      int n = work.front();
      work.pop_front();
      for (int s : succ[static_cast<std::size_t>(n)]) {
        auto& sn = cfg_.nodes[static_cast<std::size_t>(s)];
        if (!sn.reachable) {
          sn.reachable = true;
          work.push_back(s);
        }
      }
    }
  }

  const Term& root_;
  const LanguageDef& lang_;
  Cfg cfg_;
  std::vector<Loop> loops_;
};

Term prepend_items(const Term& list, const std::vector<Term>& items) {
  Term out = list;
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = mk_term(builtin::cons(BlockItemL()), {}, {*it, out});
  return out;
}

template <typename T>
std::vector<T> joined(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool body_ends_in_jump(const Term& root, const BodyRef& body, const LanguageDef& lang) {
  std::vector<Path> items = body_stmt_paths(root, body);
  if (items.empty()) return false;
  return is_jump(lang.stmt_view(term_at(root, items.back())));
}

void collect_continues(const Term& root, const BodyRef& body, const LanguageDef& lang, std::vector<Path>& out) {
  for (const auto& p : body_stmt_paths(root, body)) {
    const StmtView v = lang.stmt_view(term_at(root, p));
    if (v.kind == StmtKind::Continue) {
      out.push_back(p);
    } else if (!is_loop(v.kind)) {
      for (const auto& b : v.bodies) collect_continues(root, absolute(p, b), lang, out);
    }
  }
}

StmtView loop_view(const Term& root, const Path& loop, const LanguageDef& lang) {
  StmtView v = lang.stmt_view(term_at(root, loop));
  if (!is_loop(v.kind)) throw Error(ErrorCode::InvalidPath, "no loop at " + path_text(loop));
  return v;
}

void ident_names(const Term& t, std::set<std::string>& out) {
  if (same_kind(t.kind(), *generic::Ident())) out.insert(t.str_payload(0));
  for (const auto& c : t.children()) ident_names(c, out);
}

void declared_names(const Term& t, const LanguageDef& lang, std::set<std::string>& out) {
  if (same_kind(t.kind(), *generic::MultiLocalVarDecl())) {
    for (const auto& single : generic::decl_singles(t)) {
      for (auto& n : lang.binder_names(single.child(1))) out.insert(std::move(n));
    }
  }
  for (const auto& c : t.children()) declared_names(c, lang, out);
}

bool meets(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& n) { return b.contains(n); });
}

// Statements copied to the end of a block-scoped loop body must not see the
// body's own declarations. A body that declares one of their names is moved
// into a nested block; a continue inside such a scope is out of reach.
Term guard_tail_scope(const Term& root, const Path& loop, const std::vector<Term>& tail, const LanguageDef& lang) {
  std::set<std::string> used;
  for (const auto& t : tail) ident_names(t, used);
  BodyRef body = absolute(loop, loop_view(root, loop, lang).bodies[0]);
  std::vector<Path> conts;
  collect_continues(root, body, lang, conts);
  std::set<std::string> anywhere;
  declared_names(term_at(root, body.path), lang, anywhere);
  if (!conts.empty() && meets(used, anywhere)) {
    throw Error(ErrorCode::LocalLimit, "loop at " + path_text(loop) + " redeclares a name its condition reads");
  }
  if (!body.is_block) return root;
  const Term& b = term_at(root, body.path);
  std::set<std::string> top;
  for (const auto& item : generic::block_items(b)) {
    if (auto d = as_decl(lang, item)) declared_names(*d, lang, top);
  }
  if (!meets(used, top)) return root;
  Term inner = lang.make_block_stmt(generic::block_items(b), lang.stmt_sort());
  return replace_at(root, body.path, generic::with_block_items(b, {inj_f(lang.injections(), inner, BlockItemL())}));
}

Term loop_insert(const Term& root, const Path& loop, const std::vector<Term>& prelude, const LanguageDef& lang) {
  StmtView v = loop_view(root, loop, lang);
  Term r = root;
  std::vector<Term> before;
  std::vector<Term> tail;
  if (v.kind == StmtKind::For && (v.init || v.step)) {
    Term s = term_at(root, loop);
    for (const auto* part : {&v.init, &v.step}) {
      if (!*part) continue;
      const Term e = term_at(s, **part);
      Term item = inj_f(lang.injections(), e, BlockItemL());
      (part == &v.init ? before : tail).push_back(item);
      Path slot(**part);
      slot.pop_back();
      s = replace_at(s, slot, make_option(lang.expr_sort(), std::nullopt));
    }
    r = replace_at(r, loop, s);
  }
  before = joined(before, prelude);
  tail = joined(tail, prelude);
  if (lang.scope_rule() == ScopeRule::Block && !tail.empty()) r = guard_tail_scope(r, loop, tail, lang);
  std::vector<Site> sites = loop_condition_sites(r, loop, lang);
  for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
    switch (it->kind) {
      case SiteKind::BodyEnd: {
        StmtView lv = loop_view(r, loop, lang);
        r = append_to_body(r, absolute(loop, lv.bodies[0]), tail, lang);
        break;
      }
      case SiteKind::BeforeContinue: r = insert_before(r, it->path, tail, lang); break;
      case SiteKind::BeforeLoop: r = insert_before(r, loop, before, lang); break;
    }
  }
  return r;
}

}  // namespace

Cfg build_cfg(const Term& term, const LanguageDef& lang) { return Builder(term, lang).run(); }

std::vector<BasicBlock> basic_blocks(const Cfg& cfg) { return cfg.blocks; }

Term insert_before(const Term& root, const Path& stmt, const std::vector<Term>& items, const LanguageDef& lang) {
  if (items.empty()) return root;
  const Term& t = term_at(root, stmt);
  if (t.sort() == BlockItemL()) {
    if (stmt.empty() || stmt.back() != 0) throw Error(ErrorCode::InvalidPath, "block item outside a list");
    Path cell(stmt.begin(), stmt.end() - 1);
    const Term& c = term_at(root, cell);
    if (!c.is(builtin::kCons)) throw Error(ErrorCode::InvalidPath, "block item outside a list");
    return replace_at(root, cell, prepend_items(c, items));
  }
  std::vector<Term> all = items;
  all.push_back(inj_f(lang.injections(), t, BlockItemL()));
  return replace_at(root, stmt, lang.make_block_stmt(all, t.sort()));
}

Term append_to_body(const Term& root, const BodyRef& body, const std::vector<Term>& items, const LanguageDef& lang) {
  if (items.empty()) return root;
  const Term& t = term_at(root, body.path);
  if (body.is_block) {
    return replace_at(root, body.path, generic::with_block_items(t, joined(generic::block_items(t), items)));
  }
  std::vector<Term> all{inj_f(lang.injections(), t, BlockItemL())};
  return replace_at(root, body.path, lang.make_block_stmt(joined(all, items), t.sort()));
}

std::vector<Site> loop_condition_sites(const Term& term, const Path& loop, const LanguageDef& lang) {
  StmtView v = loop_view(term, loop, lang);
  BodyRef body = absolute(loop, v.bodies[0]);
  std::vector<Site> out{{SiteKind::BeforeLoop, loop}};
  std::vector<Path> conts;
  collect_continues(term, body, lang, conts);
  for (auto& c : conts) out.push_back({SiteKind::BeforeContinue, std::move(c)});
  if (!body_ends_in_jump(term, body, lang)) out.push_back({SiteKind::BodyEnd, body.path});
  return out;
}

Term desugar_for(const Term& term, const Path& loop, const LanguageDef& lang) {
  return loop_insert(term, loop, {}, lang);
}

Term insert_at(const Term& term, const InsertionPoint& point, const std::vector<Term>& stmts,
               const LanguageDef& lang) {
  for (const auto& s : stmts) {
    if (s.sort() != BlockItemL()) throw Error(ErrorCode::NoInjection, s.sort().key() + " is not a block item");
  }
  switch (point.kind) {
    case InsertionPoint::Kind::BlockEntry: {
      const Term& b = term_at(term, point.path);
      if (!b.is("Block")) throw Error(ErrorCode::InvalidPath, "no block at " + path_text(point.path));
      return replace_at(term, point.path, generic::with_block_items(b, joined(stmts, generic::block_items(b))));
    }
    case InsertionPoint::Kind::BeforeStmt: return insert_before(term, point.path, stmts, lang);
    case InsertionPoint::Kind::BeforeLoopCondition: return loop_insert(term, point.path, stmts, lang);
  }
  return term;
}

}  // namespace ipsx::flow
