#include "base.hpp"
#include "ipsx/frontend/syntax.hpp"
#include "languages.hpp"

namespace ipsx::frontend {

namespace {

using namespace generic::sorts;

class MiniJS final : public BasicLanguage {
 public:
  MiniJS() : BasicLanguage("minijs", ".mjs", minijs_schema_text()) {
    identK_ = inject_kind("IdentIsMiniJSIdent", IdentL(), lsort("Ident"));
    dirBlockK_ = make_kind("DirectiveBlock", {}, {Sort::list_of(builtin::boxed_sort(PrimType::String)), BlockL()},
                           lsort("Block"));
    added_.push_back(dirBlockK_);
    stmtItemK_ = inject_kind("StmtIsBlockItem", stmt_sort_, BlockItemL());
    declStmtK_ = inject_kind("MultiLocalVarDeclIsStmt", MultiLocalVarDeclL(), stmt_sort_);
    exprInitK_ = inject_kind("ExprIsLocalVarInit", expr_sort_, LocalVarInitL());
    binderK_ = inject_kind("IdentIsVarDeclBinder", IdentL(), VarDeclBinderL());
    assignExprK_ = inject_kind("AssignIsExpr", AssignL(), expr_sort_);
    lhsK_ = inject_kind("ExprIsLhs", expr_sort_, LhsL());
    rhsK_ = inject_kind("ExprIsRhs", expr_sort_, RhsL());

    for (const KindRef& k : {identK_, stmtItemK_, declStmtK_, exprInitK_, binderK_, assignExprK_, lhsK_, rhsK_,
                             lkind("ExprStmt"), lkind("BlockStmt"), lkind("Var")}) {
      table_.declare({k->child_sorts[0], k->produced, {step(k)}});
    }
    InjectionStep dirs = step(dirBlockK_, 1);
    dirs.fill[0] = build_list(builtin::boxed_sort(PrimType::String), {});
    table_.declare({BlockL(), lsort("Block"), {dirs}});
    table_.compose(MultiLocalVarDeclL(), stmt_sort_, BlockItemL());
    table_.compose(expr_sort_, stmt_sort_, BlockItemL());
    table_.compose(AssignL(), expr_sort_, BlockItemL());
    table_.compose(IdentL(), lsort("Ident"), expr_sort_);
    table_.compose(BlockL(), lsort("Block"), stmt_sort_);

    finish({"Ident", "Block", "VarDecl", "VarDeclarator", "AssignExpr"}, generic::all_kinds());
  }

  ScopeRule scope_rule() const override { return ScopeRule::Function; }
  bool untyped_declarations() const override { return true; }

  GenericValue parse(std::string_view text) const override { return parse_minijs(text); }
  std::string pretty(const GenericValue& ast) const override { return pretty_minijs(ast); }

  Term trans_ips(const Term& t) const override {
    auto rec = [this](const Term& c) { return trans_ips(c); };
    if (is_l(t, "Ident")) return inj(identK_, generic::ident(t.str_payload(0)));
    if (is_l(t, "Block")) {
      std::vector<Term> items;
      for (const auto& s : extract_list(t.child(1))) items.push_back(inj(stmtItemK_, trans_ips(s)));
      return mk_term(dirBlockK_, {}, {t.child(0), generic::block(items)});
    }
    if (is_l(t, "VarDecl")) {
      std::vector<Term> singles;
      for (const auto& d : extract_list(t.child(0))) {
        std::optional<Term> init;
        if (auto e = extract_option(d.child(1))) init = inj(exprInitK_, trans_ips(*e));
        singles.push_back(generic::single_decl(generic::empty_decl_attrs(),
                                               inj(binderK_, generic::ident(d.child(0).str_payload(0))), init));
      }
      return inj(declStmtK_, generic::multi_decl(generic::empty_common_attrs(), singles));
    }
    if (is_l(t, "AssignExpr")) {
      return inj(assignExprK_,
                 generic::assign(inj(lhsK_, trans_ips(t.child(0))), inj(rhsK_, trans_ips(t.child(1)))));
    }
    return keep(t, rec, false);
  }

  Term untrans_ips(const Term& t) const override {
    auto rec = [this](const Term& c) { return untrans_ips(c); };
    const NodeKind& k = t.kind();
    if (same_kind(k, *identK_)) return lmake("Ident", {ident_name(t.child(0))}, {});
    if (same_kind(k, *dirBlockK_)) {
      const Term& b = t.child(1);
      if (!b.child(1).is("EmptyBlockEnd")) unrepresentable(b.child(1), "as a block end");
      std::vector<Term> stmts;
      for (const auto& item : generic::block_items(b)) {
        if (!same_kind(item.kind(), *stmtItemK_)) unrepresentable(item, "as a block item");
        stmts.push_back(untrans_ips(item.child(0)));
      }
      return lmake("Block", {t.child(0), build_list(stmt_sort_, stmts)});
    }
    if (same_kind(k, *declStmtK_)) {
      const Term& m = t.child(0);
      if (!m.child(0).is("EmptyCommonAttrs")) unrepresentable(m.child(0), "as declaration attributes");
      std::vector<Term> ds;
      for (const auto& s : generic::decl_singles(m)) {
        if (!s.child(0).is("EmptyDeclAttrs")) unrepresentable(s.child(0), "as declarator attributes");
        const Term& binder = s.child(1);
        if (!same_kind(binder.kind(), *binderK_)) unrepresentable(binder, "as a binder");
        std::optional<Term> init;
        if (auto i = generic::single_init(s)) {
          if (!same_kind(i->kind(), *exprInitK_)) unrepresentable(*i, "as an initializer");
          init = untrans_ips(i->child(0));
        }
        ds.push_back(lmake("VarDeclarator", {lmake("Ident", {ident_name(binder.child(0))}, {}),
                                             make_option(expr_sort_, init)}));
      }
      return lmake("VarDecl", {build_list(lsort("VarDeclarator"), ds)});
    }
    if (same_kind(k, *assignExprK_)) {
      const Term& a = t.child(0);
      if (!same_kind(a.child(0).kind(), *lhsK_)) unrepresentable(a.child(0), "as an assignment target");
      if (!same_kind(a.child(2).kind(), *rhsK_)) unrepresentable(a.child(2), "as an assigned value");
      return lmake("AssignExpr", {untrans_ips(a.child(0).child(0)), untrans_ips(a.child(2).child(0))});
    }
    return keep(t, rec, true);
  }

  std::vector<Path> function_bodies(const Term& program) const override {
    std::vector<Path> out;
    for (const auto& p : list_paths(program.child(0), {0})) out.push_back(concat(p, {2, 1}));
    return out;
  }

  StmtView stmt_view(const Term& t) const override {
    StmtView v;
    const NodeKind& k = t.kind();
    if (same_kind(k, *stmtItemK_)) return prefixed(stmt_view(t.child(0)), {0});
    if (same_kind(k, *declStmtK_)) {
      v.kind = StmtKind::Decl;
      v.decl = Path{0};
    } else if (is_l(t, "ExprStmt")) {
      v.exprs = {{0}};
    } else if (is_l(t, "BlockStmt")) {
      v.kind = StmtKind::Block;
      v.bodies = {{{0, 1}, true}};
    } else if (is_l(t, "If")) {
      v.kind = StmtKind::If;
      v.cond = Path{0};
      v.bodies = {body_at(t, {1})};
      if (t.child(2).is(builtin::kJust)) v.bodies.push_back(body_at(t, {2, 0}));
    } else if (is_l(t, "While")) {
      v.kind = StmtKind::While;
      v.cond = Path{0};
      v.bodies = {body_at(t, {1})};
    } else if (is_l(t, "For")) {
      v.kind = StmtKind::For;
      if (t.child(0).is(builtin::kJust)) v.init = Path{0, 0};
      if (t.child(1).is(builtin::kJust)) v.cond = Path{1, 0};
      if (t.child(2).is(builtin::kJust)) v.step = Path{2, 0};
      v.bodies = {body_at(t, {3})};
    } else if (is_l(t, "Return")) {
      v.kind = StmtKind::Return;
      v.expr_slot = Path{0};
      if (t.child(0).is(builtin::kJust)) v.exprs = {{0, 0}};
    } else if (is_l(t, "Break")) {
      v.kind = StmtKind::Break;
    } else if (is_l(t, "Continue")) {
      v.kind = StmtKind::Continue;
    } else if (is_l(t, "EmptyStmt")) {
      v.kind = StmtKind::Empty;
    } else {
      throw Error(ErrorCode::SortMismatch, "not a statement: " + t.name());
    }
    return v;
  }

  ExprView expr_view(const Term& t) const override {
    ExprView v;
    if (is_l(t, "IntLit") || is_l(t, "BoolLit") || is_l(t, "StrLit") || is_l(t, "UndefinedLit")) {
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
    } else if (is_l(t, "ArrayLit")) {
      v.kind = ExprKind::Strict;
      v.operands = list_paths(t.child(0), {0});
    } else if (is_l(t, "Binary")) {
      const std::string& op = t.str_payload(0);
      v.kind = op == "&&" || op == "||" ? ExprKind::ShortCircuit : ExprKind::Strict;
      v.is_and = op == "&&";
      v.operands = {{0}, {1}};
    } else if (same_kind(t.kind(), *assignExprK_)) {
      v.kind = ExprKind::Assign;
      v.assign = Path{0};
    }
    return v;
  }

  std::vector<Path> lhs_exprs(const Term& lhs) const override { return single_child(lhs, *lhsK_); }
  std::vector<Path> rhs_exprs(const Term& rhs) const override { return single_child(rhs, *rhsK_); }
  std::vector<Path> init_exprs(const Term& init) const override { return single_child(init, *exprInitK_); }

  std::vector<std::string> binder_names(const Term& binder) const override {
    if (!same_kind(binder.kind(), *binderK_)) unrepresentable(binder, "as a binder");
    return {ident_name(binder.child(0))};
  }

  Term make_not(const Term& e) const override { return lmake("Unary", {std::string("!")}, {e}); }

  Term make_if(const Term& cond, const std::vector<Term>& items) const override {
    Term s = lmake("If", {cond, make_block_stmt(items, stmt_sort_), make_option(stmt_sort_, std::nullopt)});
    return inj_f(table_, s, BlockItemL());
  }

  Term binder_of(const std::vector<std::string>& names) const override {
    return inj(binderK_, generic::ident(only(names)));
  }
  Term init_of(const std::vector<Term>& exprs) const override { return inj(exprInitK_, only(exprs)); }
  Term lhs_of(const std::vector<Term>& exprs) const override { return inj(lhsK_, only(exprs)); }
  Term rhs_of(const std::vector<Term>& exprs) const override { return inj(rhsK_, only(exprs)); }
  Term common_attrs_default() const override { return generic::empty_common_attrs(); }

  Term coverage_lhs(std::int64_t i) const override {
    Term cov = lmake("Member", {var_ref("TC"), inj(identK_, generic::ident("cov"))});
    return inj(lhsK_, lmake("Index", {cov, lmake("IntLit", {i}, {})}));
  }

  Term var_init_to_rhs(const Term&, const Term&, const Term& init) const override {
    if (!same_kind(init.kind(), *exprInitK_)) {
      throw Error(ErrorCode::UnconvertibleInit, init.name() + " has no expression form");
    }
    return inj(rhsK_, init.child(0));
  }

  Term var_decl_binder_to_lhs(const Term& binder) const override {
    return inj(lhsK_, var_ref(binder_names(binder).front()));
  }

 private:
  // A braced body is reported as its block so insertions land inside it.
  BodyRef body_at(const Term& s, const Path& p) const {
    if (is_l(term_at(s, p), "BlockStmt")) return {concat(p, {0, 1}), true};
    return {p, false};
  }

  template <typename T>
  static const T& only(const std::vector<T>& xs) {
    if (xs.size() != 1) throw Error(ErrorCode::ArityMismatch, "MiniJS binds exactly one name per declarator");
    return xs.front();
  }

  std::vector<Path> single_child(const Term& t, const NodeKind& expected) const {
    if (!same_kind(t.kind(), expected)) unrepresentable(t, "where " + expected.name + " was expected");
    return {{0}};
  }

  KindRef identK_, dirBlockK_, stmtItemK_, declStmtK_, exprInitK_, binderK_, assignExprK_, lhsK_, rhsK_;
};

}  // namespace

std::unique_ptr<LanguageDef> make_minijs() { return std::make_unique<MiniJS>(); }

}  // namespace ipsx::frontend
