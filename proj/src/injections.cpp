#include "ipsx/injections.hpp"

#include <sstream>

namespace ipsx {

InjectionStep step(KindRef kind, std::size_t child_index) {
  InjectionStep s;
  s.child_index = child_index;
  s.fill.resize(kind->child_sorts.size());
  s.kind = std::move(kind);
  return s;
}

namespace {

void check_path(const InjectionDecl& decl) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::IllTypedPath, decl.from.key() + " -> " + decl.to.key() + ": " + why);
  };
  if (decl.path.empty()) {
    if (decl.from != decl.to) fail("empty path between distinct sorts");
    return;
  }
  Sort current = decl.from;
  for (const auto& s : decl.path) {
    const NodeKind& k = *s.kind;
    if (s.child_index >= k.child_sorts.size()) fail(k.name + " has no child " + std::to_string(s.child_index));
    if (k.child_sorts[s.child_index] != current) {
      fail(k.name + " expects " + k.child_sorts[s.child_index].key() + " at " + std::to_string(s.child_index) +
           ", chain carries " + current.key());
    }
    if (s.payloads.size() != k.payloads.size()) fail(k.name + " payload defaults have the wrong arity");
    if (s.fill.size() != k.child_sorts.size()) fail(k.name + " fill has the wrong arity");
    for (std::size_t i = 0; i < k.child_sorts.size(); ++i) {
      if (i == s.child_index) continue;
      if (!s.fill[i]) fail(k.name + " is missing a default for child " + std::to_string(i));
      if (s.fill[i]->sort() != k.child_sorts[i]) fail(k.name + " default for child " + std::to_string(i) + " is ill-sorted");
    }
    current = k.produced;
  }
  if (current != decl.to) fail("chain ends at " + current.key());
}

bool same_path(const std::vector<InjectionStep>& a, const std::vector<InjectionStep>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_kind(*a[i].kind, *b[i].kind) || a[i].child_index != b[i].child_index ||
        a[i].payloads != b[i].payloads || a[i].fill != b[i].fill) {
      return false;
    }
  }
  return true;
}

std::string describe_path(const std::vector<InjectionStep>& path) {
  if (path.empty()) return "(identity)";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " . ";
    out += path[i].kind->name;
    if (path[i].kind->child_sorts.size() > 1) out += "#" + std::to_string(path[i].child_index);
  }
  return out;
}

}  // namespace

InjectionTable& InjectionTable::declare(InjectionDecl decl) {
  check_path(decl);
  auto key = std::make_pair(decl.from, decl.to);
  auto it = edges_.find(key);
  if (it != edges_.end()) {
    if (!it->second.derived) throw Error(ErrorCode::DuplicateInjection, decl.from.key() + " -> " + decl.to.key());
    it->second = std::move(decl);
    it->second.derived = false;
    return *this;
  }
  decl.derived = false;
  edges_.emplace(std::move(key), std::move(decl));
  return *this;
}

InjectionTable& InjectionTable::compose(const Sort& a, const Sort& b, const Sort& c) {
  const InjectionDecl* ab = find(a, b);
  const InjectionDecl* bc = find(b, c);
  if (!ab) throw Error(ErrorCode::MissingEdge, a.key() + " -> " + b.key());
  if (!bc) throw Error(ErrorCode::MissingEdge, b.key() + " -> " + c.key());
  InjectionDecl derived{a, c, ab->path, true};
  derived.path.insert(derived.path.end(), bc->path.begin(), bc->path.end());
  auto key = std::make_pair(a, c);
  auto it = edges_.find(key);
  if (it == edges_.end()) {
    edges_.emplace(std::move(key), std::move(derived));
  } else if (it->second.derived && !same_path(it->second.path, derived.path)) {
    throw Error(ErrorCode::AmbiguousInjection, a.key() + " -> " + c.key() + ": " + describe_path(it->second.path) +
                                                   " vs " + describe_path(derived.path));
  }
  return *this;
}

const InjectionDecl* InjectionTable::find(const Sort& from, const Sort& to) const {
  auto it = edges_.find(std::make_pair(from, to));
  return it == edges_.end() ? nullptr : &it->second;
}

std::string InjectionTable::dump() const {
  std::ostringstream out;
  for (const auto& [key, decl] : edges_) {
    out << key.first.key() << " -> " << key.second.key() << " : " << describe_path(decl.path)
        << (decl.derived ? " [derived]" : "") << "\n";
  }
  return out.str();
}

InjectionTable declare_injection(InjectionTable table, InjectionDecl decl) {
  table.declare(std::move(decl));
  return table;
}

InjectionTable compose_injections(InjectionTable table, const Sort& a, const Sort& b, const Sort& c) {
  table.compose(a, b, c);
  return table;
}

Term inj_f(const InjectionTable& table, const Term& term, const Sort& target) {
  const InjectionDecl* decl = table.find(term.sort(), target);
  if (!decl) {
    if (term.sort() == target) return term;
    throw Error(ErrorCode::NoInjection, term.sort().key() + " -> " + target.key());
  }
  Term acc = term;
  for (const auto& s : decl->path) {
    std::vector<Term> children;
    children.reserve(s.fill.size());
    for (std::size_t i = 0; i < s.fill.size(); ++i) children.push_back(i == s.child_index ? acc : *s.fill[i]);
    acc = mk_term(s.kind, s.payloads, std::move(children));
  }
  return acc;
}

std::optional<Term> proj_f(const InjectionTable& table, const Term& term, const Sort& source) {
  const InjectionDecl* decl = table.find(source, term.sort());
  if (!decl) {
    if (term.sort() == source) return term;
    throw Error(ErrorCode::NoInjection, source.key() + " -> " + term.sort().key());
  }
  const Term* cur = &term;
  for (auto it = decl->path.rbegin(); it != decl->path.rend(); ++it) {
    if (!same_kind(cur->kind(), *it->kind) || cur->payloads() != it->payloads) return std::nullopt;
    for (std::size_t i = 0; i < it->fill.size(); ++i) {
      if (i != it->child_index && !(cur->child(i) == *it->fill[i])) return std::nullopt;
    }
    cur = &cur->child(it->child_index);
  }
  return *cur;
}

}  // namespace ipsx
