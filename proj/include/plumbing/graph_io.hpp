#pragma once

#include "plumbing/graph.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace plumbing {

/// Parse failure tagged with a 1-based line and column.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Reads the line format
///   V <id> <euler:int> <genus:uint>
///   E <id> <id>
///   A <id> <branch:uint>
/// with '#' starting a comment. Vertices may be declared after use.
PlumbingGraph parse_graph(std::string_view text);
PlumbingGraph read_graph_file(const std::string& path);

/// Canonical form: vertices by natural id order, edges with ordered
/// endpoints sorted lexicographically, arrows by (vertex, branch).
std::string serialize_graph(const PlumbingGraph& g);

}  // namespace plumbing
