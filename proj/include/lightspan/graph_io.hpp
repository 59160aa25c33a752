#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lightspan/graph.hpp"

namespace lightspan {

/// Plain-text edge list:
///
///   n m
///   u v w_num w_den     (m lines, 0-indexed nodes, sorted by edge id)
///
/// Blank lines and lines starting with '#' are skipped on input.
void write_graph(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& in, ParallelEdges parallel = ParallelEdges::allow);

void save_graph(const std::filesystem::path& path, const WeightedGraph& g);
WeightedGraph load_graph(const std::filesystem::path& path,
                         ParallelEdges parallel = ParallelEdges::allow);

/// Parse failures carry the offending line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lightspan
