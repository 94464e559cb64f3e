#include "ipsx/language.hpp"

#include <algorithm>

#include "frontend/languages.hpp"

namespace ipsx {

namespace {

const std::vector<const LanguageDef*>& registry() {
  static const std::vector<std::unique_ptr<LanguageDef>> owned = [] {
    std::vector<std::unique_ptr<LanguageDef>> v;
    v.push_back(frontend::make_minic());
    v.push_back(frontend::make_minijs());
    v.push_back(frontend::make_minilua());
    return v;
  }();
  static const std::vector<const LanguageDef*> view = [] {
    std::vector<const LanguageDef*> v;
    for (const auto& l : owned) v.push_back(l.get());
    return v;
  }();
  return view;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

const LanguageDef& language(std::string_view name) {
  for (const auto* l : registry()) {
    if (l->name() == name) return *l;
  }
  throw Error(ErrorCode::UnknownLanguage, "no language named " + std::string(name));
}

std::vector<std::string> language_names() {
  std::vector<std::string> out;
  for (const auto* l : registry()) out.push_back(l->name());
  return out;
}

const LanguageDef* language_for_path(std::string_view path) {
  for (const auto* l : registry()) {
    if (ends_with(path, l->extension())) return l;
  }
  return nullptr;
}

void check_registration(const LanguageDef& lang) {
  for (const auto& s : lang.modular().signature().produced_sorts()) {
    if (generic::is_reserved_sort(s)) {
      throw Error(ErrorCode::InvalidSchema, lang.name() + " produces reserved sort " + s.key());
    }
  }
  const Signature& ips = lang.ips_signature();
  if (!ips.frontier().empty()) {
    throw Error(ErrorCode::InvalidSchema,
                lang.name() + ": no kind produces sort " + ips.frontier().begin()->key());
  }
  for (const auto& [pair, decl] : lang.injections().edges()) {
    for (const auto& st : decl.path) {
      if (!ips.contains(*st.kind)) {
        throw Error(ErrorCode::UnknownKind,
                    lang.name() + ": injection " + pair.first.key() + " -> " + pair.second.key() + " uses " +
                        st.kind->name + " outside the signature");
      }
    }
  }
}

Term make_assign_item(const LanguageDef& lang, const Term& lhs, const Term& rhs) {
  return inj_f(lang.injections(), generic::assign(lhs, rhs), generic::sorts::BlockItemL());
}

Term make_decl_item(const LanguageDef& lang, const std::vector<std::string>& names,
                    const std::vector<Term>& inits) {
  std::optional<Term> init;
  if (!inits.empty()) init = lang.init_of(inits);
  Term single = generic::single_decl(lang.decl_attrs_default(), lang.binder_of(names), init);
  Term multi = generic::multi_decl(lang.common_attrs_default(), {single});
  return inj_f(lang.injections(), multi, generic::sorts::BlockItemL());
}

std::optional<Term> as_decl(const LanguageDef& lang, const Term& item) {
  return proj_f(lang.injections(), item, generic::sorts::MultiLocalVarDeclL());
}

}  // namespace ipsx
