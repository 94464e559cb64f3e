#include "ipsx/traversal.hpp"

namespace ipsx {

std::optional<Term> apply_checked(const Rewrite& r, const Term& t) {
  std::optional<Term> out = r(t);
  if (out && out->sort() != t.sort()) {
    throw Error(ErrorCode::SortViolation,
                "rewrite at " + t.name() + " changed sort " + t.sort().key() + " to " + out->sort().key());
  }
  return out;
}

Term transform_bottom_up(const Rewrite& r, const Term& t) {
  Term rebuilt = map_children(t, [&](const Term& c) { return transform_bottom_up(r, c); });
  if (auto fired = apply_checked(r, rebuilt)) return *fired;
  return rebuilt;
}

Rewrite identity() {
  return [](const Term& t) -> std::optional<Term> { return t; };
}

Rewrite fail() {
  return [](const Term&) -> std::optional<Term> { return std::nullopt; };
}

Rewrite try_(Rewrite r) {
  return [r = std::move(r)](const Term& t) -> std::optional<Term> {
    if (auto out = apply_checked(r, t)) return out;
    return t;
  };
}

Rewrite seq(Rewrite first, Rewrite second) {
  return [first = std::move(first), second = std::move(second)](const Term& t) -> std::optional<Term> {
    auto mid = apply_checked(first, t);
    if (!mid) return std::nullopt;
    return apply_checked(second, *mid);
  };
}

namespace {

std::optional<Term> once_rec(const Rewrite& r, const Term& t) {
  if (auto here = apply_checked(r, t)) return here;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (auto sub = once_rec(r, t.child(i))) {
      std::size_t target = i;
      return map_children(t, [&, idx = std::size_t{0}](const Term& c) mutable {
        return idx++ == target ? *sub : c;
      });
    }
  }
  return std::nullopt;
}

}  // namespace

Rewrite once_top_down(Rewrite r) {
  return [r = std::move(r)](const Term& t) { return once_rec(r, t); };
}

Rewrite all_children(Rewrite r) {
  return [r = std::move(r)](const Term& t) -> std::optional<Term> {
    std::vector<Term> out;
    out.reserve(t.arity());
    for (const auto& c : t.children()) {
      auto fired = apply_checked(r, c);
      if (!fired) return std::nullopt;
      out.push_back(std::move(*fired));
    }
    if (out.empty()) return t;
    std::size_t idx = 0;
    return map_children(t, [&](const Term&) { return out[idx++]; });
  };
}

}  // namespace ipsx
