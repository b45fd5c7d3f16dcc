#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "faircut/graph.hpp"

namespace faircut {

enum class ParseErrorKind {
  MissingProblemLine,
  DuplicateProblemLine,
  DuplicateSource,
  DuplicateSink,
  MissingSource,
  MissingSink,
  SourceIsSink,
  OutOfRange,
  NonPositiveCapacity,
  CapacityTooLarge,
  SelfLoop,
  Malformed,
};

const char* parse_error_name(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }  // 1-based; 0 when the input ended early

 private:
  ParseErrorKind kind_;
  int line_;
};

struct DimacsArc {
  Vertex u, v;  // 0-based
  Capacity capacity;
};

struct DimacsInstance {
  Vertex vertex_count = 0;
  std::int64_t declared_arcs = 0;
  Vertex source = 0;  // 0-based
  Vertex sink = 0;
  std::vector<DimacsArc> arcs;

  // Undirected graph: (u,v) and (v,u) arcs merge into one edge whose capacity
  // is their sum.
  CapacitatedGraph graph() const;
};

// "p max <n> <m>", "n <id> s", "n <id> t", "a <u> <v> <cap>", comments "c ...".
// Ids are 1-based in the file.
DimacsInstance parse_dimacs(std::istream& in);
DimacsInstance parse_dimacs_file(const std::string& path);

// One "a" line per undirected edge, in edge order.
std::string write_dimacs(const CapacitatedGraph& g, Vertex s, Vertex t);

}  // namespace faircut
