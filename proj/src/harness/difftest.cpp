#include <algorithm>
#include <sstream>

#include "ipsx/harness.hpp"
#include "ipsx/transforms.hpp"

namespace ipsx::harness {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::TraceDiverged: return "TraceDiverged";
    case Verdict::TransformError: return "TransformError";
    case Verdict::ParseError: return "ParseError";
  }
  return "?";
}

std::size_t DiffReport::passed() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.verdict == Verdict::Equal;
  return n;
}

double DiffReport::pass_rate() const {
  return entries.empty() ? 1.0 : static_cast<double>(passed()) / static_cast<double>(entries.size());
}

std::string DiffReport::text() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    out << k << '\t' << to_string(entries[k].verdict) << '\t' << entries[k].detail << '\n';
  }
  out << "PASS " << passed() << '/' << entries.size() << '\n';
  return out.str();
}

namespace {

std::string event_or_end(const Trace& t, std::size_t k) {
  return k < t.size() ? to_string(t[k]) : "<end>";
}

DiffEntry compare(const Trace& want, const Trace& got) {
  std::size_t k = 0;
  while (k < want.size() && k < got.size() && want[k] == got[k]) ++k;
  if (k == want.size() && k == got.size()) return {Verdict::Equal, std::to_string(want.size()) + " events"};
  return {Verdict::TraceDiverged,
          "step " + std::to_string(k) + ": expected " + event_or_end(want, k) + ", got " + event_or_end(got, k)};
}

struct Transformed {
  Term term;
  int coverage_slots = 0;
};

DiffEntry run_one(const LanguageDef& lang, const std::function<Transformed(const Term&)>& pass,
                  const std::string& source, bool erase, const RunConfig& run) {
  GenericValue original;
  try {
    original = lang.parse(source);
  } catch (const std::exception& e) {
    return {Verdict::ParseError, std::string("original: ") + e.what()};
  }
  std::string output;
  int slots = 0;
  try {
    Transformed t = pass(lang.decompose(original));
    slots = t.coverage_slots;
    output = lang.pretty(lang.recompose(t.term));
  } catch (const std::exception& e) {
    return {Verdict::TransformError, e.what()};
  }
  GenericValue reparsed;
  try {
    reparsed = lang.parse(output);
  } catch (const std::exception& e) {
    return {Verdict::ParseError, std::string("transformed: ") + e.what()};
  }
  RunConfig cfg = run;
  cfg.coverage_slots = std::max(cfg.coverage_slots, slots);
  Trace want = interpret(lang, original, cfg);
  Trace got = interpret(lang, reparsed, cfg);
  if (erase) {
    want = erase_markers(want);
    got = erase_markers(got);
  }
  return compare(want, got);
}

DiffReport run_all(const LanguageDef& lang, const std::function<Transformed(const Term&)>& pass,
                   const std::vector<std::string>& corpus, bool erase, const RunConfig& run) {
  DiffReport report;
  report.entries.reserve(corpus.size());
  for (const auto& src : corpus) report.entries.push_back(run_one(lang, pass, src, erase, run));
  return report;
}

}  // namespace

DiffReport diff_test(const LanguageDef& lang, std::string_view pass, const std::vector<std::string>& corpus,
                     bool erase_marker_events, const RunConfig& run) {
  std::string name(pass);
  auto known = transforms::pass_names();
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    throw Error(ErrorCode::UnknownPass, name);
  }
  auto fn = [&](const Term& t) -> Transformed {
    if (name == "testcov") {
      transforms::Coverage c = transforms::testcov(t, lang);
      return {std::move(c.term), c.block_count};
    }
    return {transforms::apply_pass(name, t, lang), 0};
  };
  return run_all(lang, fn, corpus, erase_marker_events, run);
}

DiffReport diff_test(const LanguageDef& lang, const PassFn& pass, const std::vector<std::string>& corpus,
                     bool erase_marker_events, const RunConfig& run) {
  auto fn = [&](const Term& t) -> Transformed { return {pass(t, lang), 0}; };
  return run_all(lang, fn, corpus, erase_marker_events, run);
}

}  // namespace ipsx::harness
