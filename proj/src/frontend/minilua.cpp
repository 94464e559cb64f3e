#include "base.hpp"
#include "ipsx/frontend/syntax.hpp"
#include "languages.hpp"

namespace ipsx::frontend {

namespace {

using namespace generic::sorts;

// Lua binds and assigns whole lists, so the generic binder, initializer and
// both assignment sides inject from list sorts rather than single terms.
class MiniLua final : public BasicLanguage {
 public:
  MiniLua() : BasicLanguage("minilua", ".mlua", minilua_schema_text()) {
    const Sort exprs = Sort::list_of(expr_sort_);
    identK_ = inject_kind("IdentIsMiniLuaIdent", IdentL(), lsort("Ident"));
    blockK_ = inject_kind("BlockIsMiniLuaBlock", BlockL(), lsort("Block"));
    stmtItemK_ = inject_kind("StmtIsBlockItem", stmt_sort_, BlockItemL());
    declStmtK_ = inject_kind("MultiLocalVarDeclIsStmt", MultiLocalVarDeclL(), stmt_sort_);
    assignStmtK_ = inject_kind("AssignIsStmt", AssignL(), stmt_sort_);
    lhsK_ = inject_kind("ExprsIsLhs", exprs, LhsL());
    rhsK_ = inject_kind("ExprsIsRhs", exprs, RhsL());
    initK_ = inject_kind("ExprsIsLocalVarInit", exprs, LocalVarInitL());
    binderK_ = inject_kind("IdentsIsVarDeclBinder", Sort::list_of(IdentL()), VarDeclBinderL());

    for (const KindRef& k : {identK_, blockK_, stmtItemK_, declStmtK_, assignStmtK_, lhsK_, rhsK_, initK_, binderK_,
                             lkind("Do"), lkind("Var")}) {
      table_.declare({k->child_sorts[0], k->produced, {step(k)}});
    }
    table_.compose(MultiLocalVarDeclL(), stmt_sort_, BlockItemL());
    table_.compose(AssignL(), stmt_sort_, BlockItemL());
    table_.compose(IdentL(), lsort("Ident"), expr_sort_);
    table_.compose(BlockL(), lsort("Block"), stmt_sort_);

    finish({"Ident", "Block", "Local", "AssignStmt"}, generic::all_kinds());
  }

  ScopeRule scope_rule() const override { return ScopeRule::Block; }
  bool untyped_declarations() const override { return true; }

  GenericValue parse(std::string_view text) const override { return parse_minilua(text); }
  std::string pretty(const GenericValue& ast) const override { return pretty_minilua(ast); }

  Term trans_ips(const Term& t) const override {
    auto rec = [this](const Term& c) { return trans_ips(c); };
    if (is_l(t, "Ident")) return inj(identK_, generic::ident(t.str_payload(0)));
    if (is_l(t, "Block")) {
      std::vector<Term> items;
      for (const auto& s : extract_list(t.child(0))) items.push_back(inj(stmtItemK_, trans_ips(s)));
      return inj(blockK_, generic::block(items));
    }
    if (is_l(t, "Local")) {
      std::vector<std::string> names;
      for (const auto& n : extract_list(t.child(0))) names.push_back(n.str_payload(0));
      std::optional<Term> init;
      if (auto es = extract_option(t.child(1))) init = inj(initK_, trans_list(*es));
      Term single = generic::single_decl(generic::empty_decl_attrs(), binder_of(names), init);
      return inj(declStmtK_, generic::multi_decl(generic::empty_common_attrs(), {single}));
    }
    if (is_l(t, "AssignStmt")) {
      return inj(assignStmtK_,
                 generic::assign(inj(lhsK_, trans_list(t.child(0))), inj(rhsK_, trans_list(t.child(1)))));
    }
    return keep(t, rec, false);
  }

  Term untrans_ips(const Term& t) const override {
    auto rec = [this](const Term& c) { return untrans_ips(c); };
    const NodeKind& k = t.kind();
    if (same_kind(k, *identK_)) return lident(ident_name(t.child(0)));
    if (same_kind(k, *blockK_)) {
      const Term& b = t.child(0);
      if (!b.child(1).is("EmptyBlockEnd")) unrepresentable(b.child(1), "as a block end");
      std::vector<Term> stmts;
      for (const auto& item : generic::block_items(b)) {
        if (!same_kind(item.kind(), *stmtItemK_)) unrepresentable(item, "as a block item");
        stmts.push_back(untrans_ips(item.child(0)));
      }
      return lmake("Block", {build_list(stmt_sort_, stmts)});
    }
    if (same_kind(k, *declStmtK_)) {
      const Term& m = t.child(0);
      if (!m.child(0).is("EmptyCommonAttrs")) unrepresentable(m.child(0), "as declaration attributes");
      std::vector<Term> singles = generic::decl_singles(m);
      if (singles.size() != 1) unrepresentable(m, "with other than one declarator group");
      const Term& s = singles.front();
      if (!s.child(0).is("EmptyDeclAttrs")) unrepresentable(s.child(0), "as declarator attributes");
      std::vector<Term> names;
      for (const auto& n : binder_names(s.child(1))) names.push_back(lident(n));
      std::optional<Term> init;
      if (auto i = generic::single_init(s)) {
        if (!same_kind(i->kind(), *initK_)) unrepresentable(*i, "as an initializer");
        init = untrans_list(i->child(0));
      }
      return lmake("Local", {build_list(lsort("Ident"), names), make_option(Sort::list_of(expr_sort_), init)});
    }
    if (same_kind(k, *assignStmtK_)) {
      const Term& a = t.child(0);
      if (!same_kind(a.child(0).kind(), *lhsK_)) unrepresentable(a.child(0), "as an assignment target");
      if (!same_kind(a.child(2).kind(), *rhsK_)) unrepresentable(a.child(2), "as an assigned value");
      return lmake("AssignStmt", {untrans_list(a.child(0).child(0)), untrans_list(a.child(2).child(0))});
    }
    return keep(t, rec, true);
  }

  std::vector<Path> function_bodies(const Term& program) const override {
    std::vector<Path> out;
    for (const auto& p : list_paths(program.child(0), {0})) out.push_back(concat(p, {2, 0}));
    return out;
  }

  StmtView stmt_view(const Term& t) const override {
    StmtView v;
    const NodeKind& k = t.kind();
    if (same_kind(k, *stmtItemK_)) return prefixed(stmt_view(t.child(0)), {0});
    if (same_kind(k, *declStmtK_)) {
      v.kind = StmtKind::Decl;
      v.decl = Path{0};
    } else if (same_kind(k, *assignStmtK_)) {
      v.assign = Path{0};
    } else if (is_l(t, "CallStmt")) {
      v.exprs = {{0}};
    } else if (is_l(t, "Do")) {
      v.kind = StmtKind::Block;
      v.bodies = {{{0, 0}, true}};
    } else if (is_l(t, "If")) {
      v.kind = StmtKind::If;
      v.cond = Path{0};
      v.bodies = {{{1, 0}, true}};
      if (t.child(2).is(builtin::kJust)) v.bodies.push_back({{2, 0, 0}, true});
    } else if (is_l(t, "While")) {
      v.kind = StmtKind::While;
      v.cond = Path{0};
      v.bodies = {{{1, 0}, true}};
    } else if (is_l(t, "NumFor")) {
      v.kind = StmtKind::NumFor;
      v.exprs = {{1}, {2}};
      if (t.child(3).is(builtin::kJust)) v.exprs.push_back({3, 0});
      v.bodies = {{{4, 0}, true}};
    } else if (is_l(t, "Return")) {
      v.kind = StmtKind::Return;
      v.expr_slot = Path{0};
      if (t.child(0).is(builtin::kJust)) v.exprs = {{0, 0}};
    } else if (is_l(t, "Break")) {
      v.kind = StmtKind::Break;
    } else {
      throw Error(ErrorCode::SortMismatch, "not a statement: " + t.name());
    }
    return v;
  }

  ExprView expr_view(const Term& t) const override {
    ExprView v;
    if (is_l(t, "Nil") || is_l(t, "IntLit") || is_l(t, "BoolLit") || is_l(t, "StrLit")) {
      v.kind = ExprKind::Literal;
    } else if (is_l(t, "Var")) {
      v.kind = ExprKind::Var;
      v.var_name = ident_name(t.child(0).child(0));
    } else if (is_l(t, "Index")) {
      v.kind = ExprKind::Strict;
      v.operands = {{0}, {1}};
    } else if (is_l(t, "Member") || is_l(t, "Unary")) {
      v.kind = ExprKind::Strict;
      v.operands = {{0}};
    } else if (is_l(t, "Call")) {
      v.kind = ExprKind::Strict;
      v.operands = list_paths(t.child(1), {1});
    } else if (is_l(t, "TableLit")) {
      v.kind = ExprKind::Strict;
      v.operands = list_paths(t.child(0), {0});
    } else if (is_l(t, "Binary")) {
      const std::string& op = t.str_payload(0);
      v.kind = op == "and" || op == "or" ? ExprKind::ShortCircuit : ExprKind::Strict;
      v.is_and = op == "and";
      v.operands = {{0}, {1}};
    }
    return v;
  }

  std::vector<Path> lhs_exprs(const Term& lhs) const override { return list_child(lhs, *lhsK_); }
  std::vector<Path> rhs_exprs(const Term& rhs) const override { return list_child(rhs, *rhsK_); }
  std::vector<Path> init_exprs(const Term& init) const override { return list_child(init, *initK_); }

  std::vector<std::string> binder_names(const Term& binder) const override {
    if (!same_kind(binder.kind(), *binderK_)) unrepresentable(binder, "as a binder");
    std::vector<std::string> out;
    for (const auto& id : extract_list(binder.child(0))) out.push_back(ident_name(id));
    return out;
  }

  Term make_not(const Term& e) const override { return lmake("Unary", {std::string("not")}, {e}); }

  Term make_if(const Term& cond, const std::vector<Term>& items) const override {
    Term s = lmake("If", {cond, inj(blockK_, generic::block(items)), make_option(lsort("Block"), std::nullopt)});
    return inj(stmtItemK_, s);
  }

  Term binder_of(const std::vector<std::string>& names) const override {
    std::vector<Term> ids;
    for (const auto& n : names) ids.push_back(generic::ident(n));
    return inj(binderK_, build_list(IdentL(), ids));
  }
  Term init_of(const std::vector<Term>& es) const override { return inj(initK_, build_list(expr_sort_, es)); }
  Term lhs_of(const std::vector<Term>& es) const override { return inj(lhsK_, build_list(expr_sort_, es)); }
  Term rhs_of(const std::vector<Term>& es) const override { return inj(rhsK_, build_list(expr_sort_, es)); }
  Term common_attrs_default() const override { return generic::empty_common_attrs(); }

  Term coverage_lhs(std::int64_t i) const override {
    Term cov = lmake("Member", {var_ref("TC"), inj(identK_, generic::ident("cov"))});
    return lhs_of({lmake("Index", {cov, lmake("IntLit", {i}, {})})});
  }

  Term var_init_to_rhs(const Term&, const Term&, const Term& init) const override {
    if (!same_kind(init.kind(), *initK_)) {
      throw Error(ErrorCode::UnconvertibleInit, init.name() + " has no expression form");
    }
    return inj(rhsK_, init.child(0));
  }

  Term var_decl_binder_to_lhs(const Term& binder) const override {
    std::vector<Term> vars;
    for (const auto& n : binder_names(binder)) vars.push_back(var_ref(n));
    return lhs_of(vars);
  }

 private:
  Term lident(const std::string& name) const { return lmake("Ident", {name}, {}); }

  Term trans_list(const Term& list) const {
    std::vector<Term> out;
    for (const auto& e : extract_list(list)) out.push_back(trans_ips(e));
    return build_list(expr_sort_, out);
  }

  Term untrans_list(const Term& list) const {
    std::vector<Term> out;
    for (const auto& e : extract_list(list)) out.push_back(untrans_ips(e));
    return build_list(expr_sort_, out);
  }

  std::vector<Path> list_child(const Term& t, const NodeKind& expected) const {
    if (!same_kind(t.kind(), expected)) unrepresentable(t, "where " + expected.name + " was expected");
    return list_paths(t.child(0), {0});
  }

  KindRef identK_, blockK_, stmtItemK_, declStmtK_, assignStmtK_, lhsK_, rhsK_, initK_, binderK_;
};

}  // namespace

std::unique_ptr<LanguageDef> make_minilua() { return std::make_unique<MiniLua>(); }

}  // namespace ipsx::frontend
