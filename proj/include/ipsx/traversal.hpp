#pragma once

// Strategy combinators over sorted terms. A Rewrite either fires (returns a
// term of the same sort) or declines (returns nullopt).

#include <functional>
#include <optional>
#include <vector>

#include "ipsx/term.hpp"

namespace ipsx {

using Rewrite = std::function<std::optional<Term>(const Term&)>;

/// Applies `r` and checks the sort contract.
std::optional<Term> apply_checked(const Rewrite& r, const Term& t);

/// Children first, then the node itself; nodes where `r` declines pass through.
Term transform_bottom_up(const Rewrite& r, const Term& t);

Rewrite identity();
Rewrite fail();
Rewrite try_(Rewrite r);
Rewrite seq(Rewrite first, Rewrite second);
/// Fires at the first pre-order node where `r` fires, and nowhere else.
Rewrite once_top_down(Rewrite r);
/// Applies `r` to each immediate child; fails if it declines on any child.
Rewrite all_children(Rewrite r);

template <typename T>
using Query = std::function<std::vector<T>(const Term&)>;

template <typename T>
void query_into(const Query<T>& q, const Term& t, std::vector<T>& out) {
  auto here = q(t);
  out.insert(out.end(), std::make_move_iterator(here.begin()), std::make_move_iterator(here.end()));
  for (const auto& c : t.children()) query_into(q, c, out);
}

/// Pre-order concatenation of `q` over every node.
template <typename T>
std::vector<T> query_collect(const Query<T>& q, const Term& t) {
  std::vector<T> out;
  query_into(q, t, out);
  return out;
}

}  // namespace ipsx
