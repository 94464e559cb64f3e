#include "base.hpp"

namespace ipsx::frontend {

BasicLanguage::BasicLanguage(std::string name, std::string ext, const char* schema_text)
    : name_(std::move(name)), ext_(std::move(ext)), modular_(modularize_schema(parse_schema(schema_text))) {
  expr_sort_ = lsort("Expr");
  stmt_sort_ = lsort("Stmt");
}

const KindRef& BasicLanguage::lkind(const std::string& ctor) const {
  return modular_.ctor_info(ctor).kind;
}

Term BasicLanguage::lmake(const std::string& ctor, std::vector<Payload> payloads, std::vector<Term> children) const {
  return mk_term(lkind(ctor), std::move(payloads), std::move(children));
}

bool BasicLanguage::is_l(const Term& t, const std::string& ctor) const {
  return same_kind(t.kind(), *lkind(ctor));
}

KindRef BasicLanguage::inject_kind(const std::string& name, const Sort& from, const Sort& to) {
  KindRef k = make_kind(name, {}, {from}, to);
  added_.push_back(k);
  return k;
}

void BasicLanguage::finish(const std::vector<std::string>& removed, const std::vector<KindRef>& generic_used) {
  std::vector<std::string> minus;
  minus.reserve(removed.size());
  for (const auto& r : removed) minus.push_back(kind_name_for(modular_.schema(), r));
  ips_ = sum_signatures(name_ + ".IPS", {modular_.signature(), Signature("Generic", generic_used)}, minus, added_);
  check_registration(*this);
}

void BasicLanguage::unrepresentable(const Term& t, const std::string& where) {
  throw Error(ErrorCode::UnrepresentableTerm, t.name() + " (sort " + t.sort().key() + ") " + where);
}

Term BasicLanguage::keep(const Term& t, const std::function<Term(const Term&)>& rec, bool untrans) const {
  const Signature& home = untrans ? modular_.signature() : ips_;
  if (!home.contains(t.kind())) unrepresentable(t, "has no counterpart here");
  return map_children(t, rec);
}

Term BasicLanguage::make_block_stmt(const std::vector<Term>& items, const Sort& stmt_sort) const {
  return inj_f(table_, generic::block(items), stmt_sort);
}

Term BasicLanguage::var_ref(const std::string& name) const {
  return inj_f(table_, generic::ident(name), expr_sort_);
}

Term BasicLanguage::true_rhs() const {
  std::vector<Term> one{lmake("BoolLit", {true}, {})};
  return rhs_of(one);
}

const std::string& ident_name(const Term& generic_ident) {
  if (!generic_ident.is("Ident")) {
    throw Error(ErrorCode::SortMismatch, "expected a generic Ident, got " + generic_ident.name());
  }
  return generic_ident.str_payload(0);
}

StmtView prefixed(StmtView v, const Path& p) {
  auto fix = [&](Path& q) { q.insert(q.begin(), p.begin(), p.end()); };
  for (auto& b : v.bodies) fix(b.path);
  for (auto* o : {&v.cond, &v.init, &v.step, &v.assign, &v.decl, &v.expr_slot}) {
    if (*o) fix(**o);
  }
  for (auto& e : v.exprs) fix(e);
  return v;
}

std::vector<Path> list_paths(const Term& list, const Path& base) {
  std::vector<Path> out;
  std::size_t n = extract_list(list).size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(concat(base, generic::list_item_path(i)));
  return out;
}

}  // namespace ipsx::frontend
