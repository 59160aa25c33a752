#pragma once

#include <stdexcept>
#include <string>

namespace lightspan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph or cycle: self-loop, bad id, non-closed walk, repeated node.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  ConnectivityError(const std::string& what, std::size_t stranded_node)
      : Error(what), stranded_node_(stranded_node) {}
  std::size_t stranded_node() const noexcept { return stranded_node_; }

 private:
  std::size_t stranded_node_;
};

/// An edge of the supposed subgraph has no counterpart in the host graph.
class SubgraphError : public Error {
 public:
  using Error::Error;
};

/// An enumeration was asked to exceed its configured cost cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace lightspan
