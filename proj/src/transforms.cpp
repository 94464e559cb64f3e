#include "ipsx/transforms.hpp"

#include <algorithm>

#include "ipsx/flow.hpp"
#include "ipsx/traversal.hpp"

namespace ipsx::transforms {

using namespace generic::sorts;

// ---------------------------------------------------------------------------
// Requirements

const PassRequirements& hoist_requirements() {
  static const PassRequirements r{
      {generic::Block(), generic::MultiLocalVarDecl(), generic::SingleLocalVarDecl(), generic::JustLocalVarInit(),
       generic::NoLocalVarInit(), generic::Assign(), generic::AssignOpEquals()},
      {{AssignL(), BlockItemL()}, {MultiLocalVarDeclL(), BlockItemL()}},
      {"var_init_to_rhs", "var_decl_binder_to_lhs"}};
  return r;
}

const PassRequirements& testcov_requirements() {
  static const PassRequirements r{{generic::Block(), generic::Assign(), generic::AssignOpEquals()},
                                  {{AssignL(), BlockItemL()}, {BlockL(), BlockItemL()}},
                                  {}};
  return r;
}

const PassRequirements& tac_requirements() {
  static const PassRequirements r{
      {generic::Block(), generic::MultiLocalVarDecl(), generic::SingleLocalVarDecl(), generic::JustLocalVarInit(),
       generic::Assign()},
      {{AssignL(), BlockItemL()}, {MultiLocalVarDeclL(), BlockItemL()}},
      {"var_init_to_rhs", "var_decl_binder_to_lhs", "untyped_declarations"}};
  return r;
}

void check_requirements(const LanguageDef& lang, const PassRequirements& reqs, std::string_view pass) {
  auto missing = [&](const std::string& what) {
    throw Error(ErrorCode::RequirementMissing, std::string(pass) + " on " + lang.name() + ": missing " + what);
  };
  for (const auto& k : reqs.kinds) {
    if (!lang.ips_signature().contains(*k)) missing("kind " + k->name);
  }
  for (const auto& [from, to] : reqs.injections) {
    // A block reaches block items through a block statement.
    Sort src = from == BlockL() ? lang.stmt_sort() : from;
    if (from == BlockL() && !lang.injections().has(from, src)) missing("injection " + from.key() + " -> " + src.key());
    if (src != to && !lang.injections().has(src, to)) missing("injection " + src.key() + " -> " + to.key());
  }
  for (const auto& op : reqs.ops) {
    if (op == "untyped_declarations" && !lang.untyped_declarations()) missing("untyped declarations");
  }
}

std::set<std::string> identifier_names(const Term& t) {
  std::set<std::string> out;
  Query<std::string> q = [](const Term& n) -> std::vector<std::string> {
    if (same_kind(n.kind(), *generic::Ident())) return {n.str_payload(0)};
    return {};
  };
  for (auto& s : query_collect(q, t)) out.insert(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// Hoisting

namespace {

bool intersects(const std::vector<std::string>& names, const std::set<std::string>& set) {
  return std::any_of(names.begin(), names.end(), [&](const std::string& n) { return set.contains(n); });
}

std::vector<std::string> decl_names(const Term& multi, const LanguageDef& lang) {
  std::vector<std::string> out;
  for (const auto& s : generic::decl_singles(multi)) {
    for (auto& n : lang.binder_names(s.child(1))) out.push_back(std::move(n));
  }
  return out;
}

void free_names(const Term& t, const LanguageDef& lang, const std::set<std::string>& bound,
                std::set<std::string>& out) {
  if (same_kind(t.kind(), *generic::Ident())) {
    if (!bound.contains(t.str_payload(0))) out.insert(t.str_payload(0));
    return;
  }
  if (same_kind(t.kind(), *generic::Block())) {
    std::set<std::string> local = bound;
    for (const auto& item : generic::block_items(t)) {
      if (auto d = as_decl(lang, item)) {
        for (const auto& s : generic::decl_singles(*d)) {
          if (auto init = generic::single_init(s)) free_names(*init, lang, local, out);
        }
        for (auto& n : decl_names(*d, lang)) local.insert(std::move(n));
      } else {
        free_names(item, lang, local, out);
      }
    }
    return;
  }
  for (const auto& c : t.children()) free_names(c, lang, bound, out);
}

// Walks a block's items and reports, for each declaration, whether hoisting
// it would capture an earlier occurrence of one of its names.
class ShadowScan {
 public:
  ShadowScan(const LanguageDef& lang) : lang_(lang), active_(lang.scope_rule() == ScopeRule::Block) {}

  bool blocked(const Term& multi) {
    if (!active_) return false;
    std::vector<std::string> names = decl_names(multi, lang_);
    bool hit = intersects(names, seen_);
    // An initializer may read names bound by earlier declarators of the same
    // declaration, but not its own or later ones.
    std::vector<Term> singles = generic::decl_singles(multi);
    for (std::size_t i = 0; i < singles.size(); ++i) {
      auto init = generic::single_init(singles[i]);
      if (!init) continue;
      std::set<std::string> reads;
      free_names(*init, lang_, {}, reads);
      for (std::size_t j = i; j < singles.size() && !hit; ++j) hit = intersects(lang_.binder_names(singles[j].child(1)), reads);
      seen_.insert(reads.begin(), reads.end());
    }
    seen_.insert(names.begin(), names.end());
    return hit;
  }

  void other(const Term& item) {
    if (active_) free_names(item, lang_, {}, seen_);
  }

 private:
  const LanguageDef& lang_;
  bool active_;
  std::set<std::string> seen_;
};

Term hoist_block(const Term& block, const LanguageDef& lang, bool shadow_check) {
  std::vector<Term> decls;
  std::vector<Term> rest;
  ShadowScan scan(lang);
  bool changed = false;
  for (const auto& item : generic::block_items(block)) {
    auto d = as_decl(lang, item);
    if (!d) {
      if (shadow_check) scan.other(item);
      rest.push_back(item);
      continue;
    }
    if (shadow_check && scan.blocked(*d)) {
      rest.push_back(item);
      continue;
    }
    const Term& common = d->child(0);
    std::vector<Term> stripped;
    for (const auto& s : generic::decl_singles(*d)) {
      stripped.push_back(generic::without_init(s));
      if (auto init = generic::single_init(s)) {
        Term lhs = var_decl_binder_to_lhs(lang, s.child(1));
        Term rhs = var_init_to_rhs(lang, common, s.child(0), *init);
        rest.push_back(make_assign_item(lang, lhs, rhs));
      }
    }
    decls.push_back(inj_f(lang.injections(), generic::multi_decl(common, stripped), BlockItemL()));
    changed = true;
  }
  if (!changed) return block;
  decls.insert(decls.end(), rest.begin(), rest.end());
  return generic::with_block_items(block, decls);
}

Term hoist_all(const Term& program, const LanguageDef& lang, bool shadow_check, std::string_view pass) {
  check_requirements(lang, hoist_requirements(), pass);
  Rewrite r = [&](const Term& t) -> std::optional<Term> {
    if (!same_kind(t.kind(), *generic::Block())) return std::nullopt;
    return hoist_block(t, lang, shadow_check);
  };
  return transform_bottom_up(r, program);
}

}  // namespace

Term elementary_hoist(const Term& program, const LanguageDef& lang) {
  return hoist_all(program, lang, false, "ehoist");
}

Term hoist(const Term& program, const LanguageDef& lang) {
  return hoist_all(program, lang, lang.scope_rule() == ScopeRule::Block, "hoist");
}

std::vector<std::string> hoist_violations(const Term& program, const LanguageDef& lang) {
  std::vector<std::string> out;
  Query<Term> blocks = [](const Term& t) -> std::vector<Term> {
    if (same_kind(t.kind(), *generic::Block())) return {t};
    return {};
  };
  for (const auto& b : query_collect(blocks, program)) {
    ShadowScan scan(lang);
    bool after_other = false;
    std::size_t i = 0;
    for (const auto& item : generic::block_items(b)) {
      auto d = as_decl(lang, item);
      if (!d) {
        scan.other(item);
        after_other = true;
      } else {
        bool has_init = false;
        for (const auto& s : generic::decl_singles(*d)) has_init = has_init || generic::single_init(s).has_value();
        bool exempt = scan.blocked(*d);
        if ((after_other || has_init) && !exempt) {
          out.push_back("item " + std::to_string(i) + ": declaration of " + decl_names(*d, lang).front() +
                        (has_init ? " keeps its initializer" : " follows a statement"));
        }
      }
      ++i;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Test coverage

Coverage testcov(const Term& program, const LanguageDef& lang) {
  check_requirements(lang, testcov_requirements(), "testcov");
  flow::Cfg cfg = flow::build_cfg(program, lang);
  std::vector<flow::BasicBlock> blocks = flow::basic_blocks(cfg);
  Term out = program;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    Term marker = make_assign_item(lang, lang.coverage_lhs(it->id), lang.true_rhs());
    out = flow::insert_at(out, it->leader, {marker}, lang);
  }
  return {out, static_cast<int>(blocks.size())};
}

// ---------------------------------------------------------------------------
// Three-address code

namespace {

bool is_atomic(const LanguageDef& lang, const Term& e) {
  ExprKind k = lang.expr_view(e).kind;
  return k == ExprKind::Literal || k == ExprKind::Var;
}

void assigned_names(const Term& t, const LanguageDef& lang, std::set<std::string>& out) {
  if (same_kind(t.kind(), *generic::Assign())) {
    for (const auto& p : lang.lhs_exprs(t.child(0))) {
      ExprView v = lang.expr_view(term_at(t.child(0), p));
      if (v.kind == ExprKind::Var) out.insert(v.var_name);
    }
  } else if (same_kind(t.kind(), *generic::MultiLocalVarDecl())) {
    for (auto& n : decl_names(t, lang)) out.insert(std::move(n));
  }
  for (const auto& c : t.children()) assigned_names(c, lang, out);
}

using Prelude = std::vector<Term>;

class Tac {
 public:
  Tac(const LanguageDef& lang, std::set<std::string> names) : lang_(lang), names_(std::move(names)) {}

  Term block(const Term& b) { return generic::with_block_items(b, items(generic::block_items(b))); }

 private:
  enum class Mode { Atom, Flat };
  struct Slot {
    Path path;
    Mode mode;
  };

  std::string fresh() {
    for (;;) {
      std::string n = "__t" + std::to_string(counter_++);
      if (names_.insert(n).second) return n;
    }
  }

  Term bind(const Term& e, Prelude& p) {
    std::string t = fresh();
    p.push_back(make_decl_item(lang_, {t}, {e}));
    return lang_.var_ref(t);
  }

  std::vector<Term> items(const std::vector<Term>& in) {
    std::vector<Term> out;
    for (const auto& item : in) {
      for (auto& r : this->item(item)) out.push_back(std::move(r));
    }
    return out;
  }

  // Evaluates the slots of `host` left to right, sharing one prelude. A slot
  // whose value could be changed by a later prelude item is captured first.
  Term seq(Term host, const std::vector<Slot>& slots, Prelude& p) {
    std::vector<Term> results;
    std::vector<std::size_t> pos;
    for (const auto& s : slots) {
      const Term& e = term_at(host, s.path);
      results.push_back(s.mode == Mode::Atom ? to_atom(e, p) : flatten(e, p));
      pos.push_back(p.size());
    }
    for (std::size_t i = slots.size(); i-- > 0;) {
      if (pos[i] == p.size()) continue;
      bool capture = false;
      ExprView v = lang_.expr_view(results[i]);
      if (v.kind == ExprKind::Var) {
        std::set<std::string> later;
        for (std::size_t j = pos[i]; j < p.size(); ++j) assigned_names(p[j], lang_, later);
        capture = later.contains(v.var_name);
      } else if (v.kind != ExprKind::Literal) {
        capture = true;
      }
      if (capture) {
        std::string t = fresh();
        p.insert(p.begin() + static_cast<std::ptrdiff_t>(pos[i]), make_decl_item(lang_, {t}, {results[i]}));
        results[i] = lang_.var_ref(t);
      }
    }
    for (std::size_t i = 0; i < slots.size(); ++i) host = replace_at(host, slots[i].path, results[i]);
    return host;
  }

  Term to_atom(const Term& e, Prelude& p) {
    Term f = flatten(e, p);
    return is_atomic(lang_, f) ? f : bind(f, p);
  }

  // Slots of a generic assignment at `path` in its host: target operands,
  // then the assigned values.
  std::vector<Slot> assign_slots(const Term& host, const Path& path, Mode rhs_mode) const {
    std::vector<Slot> slots;
    const Term& a = term_at(host, path);
    for (const auto& lp : lang_.lhs_exprs(a.child(0))) {
      Path target = concat(concat(path, {0}), lp);
      ExprView v = lang_.expr_view(term_at(host, target));
      for (const auto& o : v.operands) slots.push_back({concat(target, o), Mode::Atom});
    }
    for (const auto& rp : lang_.rhs_exprs(a.child(2))) slots.push_back({concat(concat(path, {2}), rp), rhs_mode});
    return slots;
  }

  Term flatten(const Term& e, Prelude& p) {
    ExprView v = lang_.expr_view(e);
    switch (v.kind) {
      case ExprKind::Strict: {
        std::vector<Slot> slots;
        for (const auto& o : v.operands) slots.push_back({o, Mode::Atom});
        return seq(e, slots, p);
      }
      case ExprKind::ShortCircuit: {
        Term a = flatten(term_at(e, v.operands[0]), p);
        Prelude pb;
        Term b = flatten(term_at(e, v.operands[1]), pb);
        if (pb.empty() && is_atomic(lang_, b)) {
          if (!is_atomic(lang_, a)) a = bind(a, p);
          return replace_at(replace_at(e, v.operands[0], a), v.operands[1], b);
        }
        std::string t = fresh();
        p.push_back(make_decl_item(lang_, {t}, {a}));
        pb.push_back(make_assign_item(lang_, lang_.lhs_of({lang_.var_ref(t)}), lang_.rhs_of({b})));
        Term cond = v.is_and ? lang_.var_ref(t) : lang_.make_not(lang_.var_ref(t));
        p.push_back(lang_.make_if(cond, pb));
        return lang_.var_ref(t);
      }
      case ExprKind::Assign: {
        Term done = seq(e, assign_slots(e, *v.assign, Mode::Atom), p);
        const Term& a = term_at(done, *v.assign);
        p.push_back(inj_f(lang_.injections(), a, BlockItemL()));
        return term_at(a.child(2), lang_.rhs_exprs(a.child(2)).front());
      }
      default: return e;
    }
  }

  bool would_emit(const Term& host, const std::vector<Slot>& slots) const {
    Tac probe = *this;
    Prelude p;
    probe.seq(host, slots, p);
    return !p.empty();
  }

  Term body(const Term& host, const BodyRef& b) {
    const Term& t = term_at(host, b.path);
    if (b.is_block) return replace_at(host, b.path, block(t));
    std::vector<Term> out = items({inj_f(lang_.injections(), t, BlockItemL())});
    if (out.size() == 1) {
      if (auto s = proj_f(lang_.injections(), out.front(), t.sort())) return replace_at(host, b.path, *s);
    }
    return replace_at(host, b.path, lang_.make_block_stmt(out, t.sort()));
  }

  Term bodies(Term host, const StmtView& v) {
    for (const auto& b : v.bodies) host = body(host, b);
    return host;
  }

  std::vector<Term> item(const Term& it) {
    const StmtView v = lang_.stmt_view(it);
    Prelude p;
    switch (v.kind) {
      case StmtKind::Decl: return decl(it, *v.decl);
      case StmtKind::Simple: {
        Term out = it;
        if (v.assign) {
          out = seq(it, assign_slots(it, *v.assign, Mode::Flat), p);
        } else if (v.exprs.size() == 1 && lang_.expr_view(term_at(it, v.exprs[0])).kind == ExprKind::Assign) {
          Path ap = concat(v.exprs[0], *lang_.expr_view(term_at(it, v.exprs[0])).assign);
          out = seq(it, assign_slots(it, ap, Mode::Flat), p);
        } else if (!v.exprs.empty()) {
          std::vector<Slot> slots;
          for (const auto& e : v.exprs) slots.push_back({e, Mode::Flat});
          out = seq(it, slots, p);
          bool dropped = slots.size() == 1 && is_atomic(lang_, term_at(out, v.exprs[0])) &&
                         !is_atomic(lang_, term_at(it, v.exprs[0]));
          if (dropped) return p;
        }
        p.push_back(out);
        return p;
      }
      case StmtKind::Return: {
        std::vector<Slot> slots;
        for (const auto& e : v.exprs) slots.push_back({e, Mode::Flat});
        p.push_back(seq(it, slots, p));
        return p;
      }
      case StmtKind::If: {
        Term out = seq(it, {{*v.cond, Mode::Flat}}, p);
        p.push_back(bodies(out, v));
        return p;
      }
      case StmtKind::Block: return {bodies(it, v)};
      case StmtKind::While:
      case StmtKind::For:
      case StmtKind::NumFor: return loop(it, v);
      default: return {it};
    }
  }

  std::vector<Term> decl(const Term& it, const Path& mpath) {
    const Term& m = term_at(it, mpath);
    const Term& common = m.child(0);
    std::vector<Term> out;
    std::vector<Term> group;
    Prelude pending;
    auto flush = [&] {
      out.insert(out.end(), pending.begin(), pending.end());
      pending.clear();
      if (!group.empty()) {
        out.push_back(inj_f(lang_.injections(), generic::multi_decl(common, group), BlockItemL()));
        group.clear();
      }
    };
    bool changed = false;
    for (const auto& s : generic::decl_singles(m)) {
      auto init = generic::single_init(s);
      if (!init) {
        group.push_back(s);
        continue;
      }
      std::vector<Slot> slots;
      for (const auto& e : lang_.init_exprs(*init)) slots.push_back({e, Mode::Flat});
      Prelude p;
      Term init2 = seq(*init, slots, p);
      if (!p.empty()) {
        changed = true;
        if (!group.empty()) flush();
      }
      pending.insert(pending.end(), p.begin(), p.end());
      std::vector<Term> exprs;
      for (const auto& e : lang_.init_exprs(init2)) exprs.push_back(term_at(init2, e));
      group.push_back(generic::single_decl(s.child(0), s.child(1), lang_.init_of(exprs)));
    }
    if (!changed) return {it};
    flush();
    return out;
  }

  std::vector<Term> loop(const Term& it, const StmtView& v) {
    if (v.kind == StmtKind::For && (v.init || v.step)) {
      std::vector<Slot> init, step, cond;
      if (v.init) init.push_back({*v.init, Mode::Flat});
      if (v.step) step.push_back({*v.step, Mode::Flat});
      if (v.cond) cond.push_back({*v.cond, Mode::Flat});
      if (would_emit(it, init) || would_emit(it, step) || would_emit(it, cond)) {
        Term mini = generic::block({it});
        mini = flow::desugar_for(mini, {0, 0}, lang_);
        return items(generic::block_items(mini));
      }
    }
    Term out = bodies(it, v);
    Prelude p;
    if (v.kind == StmtKind::NumFor) {
      std::vector<Slot> slots;
      for (const auto& e : v.exprs) slots.push_back({e, Mode::Flat});
      p.push_back(seq(out, slots, p));
      return p;
    }
    if (!v.cond) return {out};
    out = seq(out, {{*v.cond, Mode::Flat}}, p);
    if (p.empty()) return {out};
    // The condition's prelude reruns before every evaluation, so its
    // temporaries are declared once ahead of the loop and assigned at each site.
    std::vector<Term> decls;
    Prelude assigns;
    for (const auto& item : p) {
      auto d = as_decl(lang_, item);
      if (!d) {
        assigns.push_back(item);
        continue;
      }
      for (const auto& s : generic::decl_singles(*d)) {
        decls.push_back(make_decl_item(lang_, lang_.binder_names(s.child(1)), {}));
        if (auto init = generic::single_init(s)) {
          assigns.push_back(make_assign_item(lang_, var_decl_binder_to_lhs(lang_, s.child(1)),
                                             var_init_to_rhs(lang_, d->child(0), s.child(0), *init)));
        }
      }
    }
    Term mini = generic::block({out});
    mini = flow::insert_at(mini, flow::InsertionPoint::before_loop_condition({0, 0}), assigns, lang_);
    for (auto& i : generic::block_items(mini)) decls.push_back(std::move(i));
    return decls;
  }

  const LanguageDef& lang_;
  std::set<std::string> names_;
  int counter_ = 0;
};

bool operator_ok(const LanguageDef& lang, const Term& e, std::string& why) {
  ExprView v = lang.expr_view(e);
  if (v.kind != ExprKind::Strict && v.kind != ExprKind::ShortCircuit) return true;
  for (const auto& o : v.operands) {
    const Term& op = term_at(e, o);
    if (!is_atomic(lang, op)) {
      why = e.name() + " has compound operand " + op.name();
      return false;
    }
  }
  return true;
}

void scan_operators(const LanguageDef& lang, const Term& t, std::vector<std::string>& out) {
  if (t.sort() == lang.expr_sort()) {
    std::string why;
    if (!operator_ok(lang, t, why)) out.push_back(why);
  }
  for (const auto& c : t.children()) scan_operators(lang, c, out);
}

}  // namespace

Term tac(const Term& program, const LanguageDef& lang) {
  check_requirements(lang, tac_requirements(), "tac");
  const std::set<std::string> names = identifier_names(program);
  Term out = program;
  for (const auto& path : lang.function_bodies(program)) {
    Tac t(lang, names);
    out = replace_at(out, path, t.block(term_at(out, path)));
  }
  return out;
}

std::vector<std::string> tac_violations(const Term& program, const LanguageDef& lang) {
  std::vector<std::string> out;
  scan_operators(lang, program, out);
  return out;
}

// ---------------------------------------------------------------------------
// Registry

std::vector<std::string> pass_names() { return {"ident", "ehoist", "hoist", "testcov", "tac"}; }

Term apply_pass(std::string_view pass, const Term& program, const LanguageDef& lang) {
  if (pass == "ident") return program;
  if (pass == "ehoist") return elementary_hoist(program, lang);
  if (pass == "hoist") return hoist(program, lang);
  if (pass == "testcov") return testcov(program, lang).term;
  if (pass == "tac") return tac(program, lang);
  throw Error(ErrorCode::UnknownPass, "no pass named " + std::string(pass));
}

}  // namespace ipsx::transforms
