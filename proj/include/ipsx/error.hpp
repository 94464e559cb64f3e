#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ipsx {

enum class ErrorCode {
  // term-core
  ArityMismatch,
  SortMismatch,
  UnknownKind,
  NotAListTerm,
  InvalidPath,
  // modularizer
  InvalidSchema,
  SchemaSyntax,
  NonConformingValue,
  ForeignKind,
  DuplicateKind,
  RemovedKindNotPresent,
  // injections
  IllTypedPath,
  DuplicateInjection,
  NoInjection,
  MissingEdge,
  AmbiguousInjection,
  // fragments / frontends
  UnconvertibleInit,
  UnrepresentableTerm,
  ParseError,
  // traversal / flow / transforms
  SortViolation,
  UnstructuredConstruct,
  RequirementMissing,
  LocalLimit,
  UnknownLanguage,
  UnknownPass,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& expected)
      : Error(ErrorCode::ParseError,
              std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected),
        line_(line),
        col_(col),
        expected_(expected) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

}  // namespace ipsx
