#pragma once

// Reference interpreters, a random program generator and differential
// testing of transformations.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ipsx/flow.hpp"
#include "ipsx/language.hpp"

namespace ipsx::harness {

struct Event {
  enum class Kind { Print, Call, Return, Trap, Mark };
  Kind kind;
  std::string text;

  friend bool operator==(const Event&, const Event&) = default;
};

using Trace = std::vector<Event>;

std::string to_string(const Event& e);
std::string to_string(const Trace& t);
Trace erase_markers(const Trace& t);

struct RunConfig {
  std::int64_t fuel = 100000;  // loop iterations plus calls
  std::uint64_t input_seed = 0;
  /// Entries of the coverage array allocated before the run.
  int coverage_slots = 0;
  /// Run only this function with these integer arguments.
  std::optional<std::string> entry;
  std::vector<std::int64_t> args;
};

/// Runs every function of the program in order, each with arguments derived
/// from the input seed, or only `entry` when set. Traps end the run.
Trace interpret(const LanguageDef& lang, const GenericValue& program, const RunConfig& cfg = {});

struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 6;
  int max_stmts = 5;
  bool loops = true;
  bool short_circuit = true;
  bool shadowing = true;
  bool parallel_assign = true;
  /// Calls from one generated function to an earlier one.
  bool user_calls = true;
  /// Calls to the trapping external inside short-circuit right operands.
  bool trapping_calls = false;
};

GenericValue gen_ast(const LanguageDef& lang, const GenConfig& cfg);
std::string gen_program(const LanguageDef& lang, const GenConfig& cfg);

enum class Verdict { Equal, TraceDiverged, TransformError, ParseError };

std::string_view to_string(Verdict v);

struct DiffEntry {
  Verdict verdict;
  std::string detail;
};

struct DiffReport {
  std::vector<DiffEntry> entries;

  std::size_t passed() const;
  double pass_rate() const;
  /// One `<index>\t<verdict>\t<detail>` line per program, then `PASS k/n`.
  std::string text() const;
};

using PassFn = std::function<Term(const Term&, const LanguageDef&)>;

DiffReport diff_test(const LanguageDef& lang, std::string_view pass, const std::vector<std::string>& corpus,
                     bool erase_marker_events, const RunConfig& run = {});
DiffReport diff_test(const LanguageDef& lang, const PassFn& pass, const std::vector<std::string>& corpus,
                     bool erase_marker_events, const RunConfig& run = {});

/// Checks that the markers of each top-level function run spell a walk
/// through the basic blocks of `cfg` (built on the uninstrumented program):
/// the first block follows entry, each block follows the previous one, and
/// the last reaches exit unless the run trapped. Returns the first problem.
std::optional<std::string> check_marker_walk(const flow::Cfg& cfg, const Trace& trace);

std::vector<std::string> gen_corpus(const LanguageDef& lang, std::size_t count, std::uint64_t seed,
                                    GenConfig base = {});

}  // namespace ipsx::harness
