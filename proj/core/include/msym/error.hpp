#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msym {

enum class ErrorKind {
  IsolatedVertex,
  UnknownEndpoint,
  UnknownVertex,
  EmptyEdgeList,
  DuplicateVertex,
  InvalidVertexId,
  SearchBudgetExceeded,
  MixedAmbient,
  ParseError,
  DimensionMismatch,
  IncompatibleModels,
  UnsupportedUnderlyingGraph,
  NotAPermutation,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace msym
