#include "faircut/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace faircut {

const char* parse_error_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MissingProblemLine:
      return "missing problem line";
    case ParseErrorKind::DuplicateProblemLine:
      return "duplicate problem line";
    case ParseErrorKind::DuplicateSource:
      return "duplicate source";
    case ParseErrorKind::DuplicateSink:
      return "duplicate sink";
    case ParseErrorKind::MissingSource:
      return "missing source";
    case ParseErrorKind::MissingSink:
      return "missing sink";
    case ParseErrorKind::SourceIsSink:
      return "source equals sink";
    case ParseErrorKind::OutOfRange:
      return "vertex id out of range";
    case ParseErrorKind::NonPositiveCapacity:
      return "non-positive capacity";
    case ParseErrorKind::CapacityTooLarge:
      return "capacity too large";
    case ParseErrorKind::SelfLoop:
      return "self-loop";
    case ParseErrorKind::Malformed:
      return "malformed line";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + parse_error_name(kind) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

CapacitatedGraph DimacsInstance::graph() const {
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const DimacsArc& a : arcs) edges.push_back({a.u, a.v, a.capacity});
  return CapacitatedGraph(vertex_count, edges);
}

DimacsInstance parse_dimacs(std::istream& in) {
  DimacsInstance inst;
  bool have_problem = false;
  bool have_source = false;
  bool have_sink = false;
  int designation_line = 0;
  std::string line;
  int number = 0;

  auto vertex = [&](std::int64_t id) {
    if (id < 1 || id > inst.vertex_count) {
      throw ParseError(ParseErrorKind::OutOfRange, number, "id " + std::to_string(id));
    }
    return static_cast<Vertex>(id - 1);
  };

  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == 'c') continue;
    std::string rest;

    if (tag == "p") {
      if (have_problem) throw ParseError(ParseErrorKind::DuplicateProblemLine, number, "");
      std::string kind;
      std::int64_t n = 0;
      std::int64_t m = 0;
      if (!(fields >> kind >> n >> m) || kind != "max" || n < 2 || m < 0 || n > (1 << 30) ||
          (fields >> rest)) {
        throw ParseError(ParseErrorKind::Malformed, number, "expected 'p max <n> <m>' with n >= 2");
      }
      inst.vertex_count = static_cast<Vertex>(n);
      inst.declared_arcs = m;
      have_problem = true;
      continue;
    }
    if (!have_problem) throw ParseError(ParseErrorKind::MissingProblemLine, number, "");

    if (tag == "n") {
      std::int64_t id = 0;
      std::string role;
      if (!(fields >> id >> role) || (fields >> rest) || (role != "s" && role != "t")) {
        throw ParseError(ParseErrorKind::Malformed, number, "expected 'n <id> s|t'");
      }
      const Vertex v = vertex(id);
      if (role == "s") {
        if (have_source) throw ParseError(ParseErrorKind::DuplicateSource, number, "");
        inst.source = v;
        have_source = true;
      } else {
        if (have_sink) throw ParseError(ParseErrorKind::DuplicateSink, number, "");
        inst.sink = v;
        have_sink = true;
      }
      designation_line = number;
      if (have_source && have_sink && inst.source == inst.sink) {
        throw ParseError(ParseErrorKind::SourceIsSink, number, "");
      }
    } else if (tag == "a") {
      std::int64_t u = 0;
      std::int64_t v = 0;
      std::string cap_text;
      if (!(fields >> u >> v >> cap_text) || (fields >> rest)) {
        throw ParseError(ParseErrorKind::Malformed, number, "expected 'a <u> <v> <cap>'");
      }
      std::int64_t cap = 0;
      const char* end = cap_text.data() + cap_text.size();
      const auto [stop, status] = std::from_chars(cap_text.data(), end, cap);
      if (stop != end || (status != std::errc() && status != std::errc::result_out_of_range)) {
        throw ParseError(ParseErrorKind::Malformed, number, "capacity '" + cap_text + "' is not an integer");
      }
      if (status == std::errc::result_out_of_range) {
        const bool negative = cap_text[0] == '-';
        throw ParseError(negative ? ParseErrorKind::NonPositiveCapacity : ParseErrorKind::CapacityTooLarge,
                         number, cap_text);
      }
      const Vertex tail = vertex(u);
      const Vertex head = vertex(v);
      if (cap < 1) throw ParseError(ParseErrorKind::NonPositiveCapacity, number, std::to_string(cap));
      if (cap > kDefaultCapacityBound) {
        throw ParseError(ParseErrorKind::CapacityTooLarge, number, std::to_string(cap));
      }
      if (tail == head) throw ParseError(ParseErrorKind::SelfLoop, number, "");
      inst.arcs.push_back({tail, head, cap});
    } else {
      throw ParseError(ParseErrorKind::Malformed, number, "unknown line type '" + tag + "'");
    }
  }

  if (!have_problem) throw ParseError(ParseErrorKind::MissingProblemLine, 0, "");
  if (!have_source) throw ParseError(ParseErrorKind::MissingSource, 0, "");
  if (!have_sink) throw ParseError(ParseErrorKind::MissingSink, 0, "");
  if (inst.source == inst.sink) throw ParseError(ParseErrorKind::SourceIsSink, designation_line, "");
  return inst;
}

DimacsInstance parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

std::string write_dimacs(const CapacitatedGraph& g, Vertex s, Vertex t) {
  std::ostringstream out;
  out << "p max " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  out << "n " << s + 1 << " s\n";
  out << "n " << t + 1 << " t\n";
  for (const Edge& e : g.edges()) out << "a " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.capacity << '\n';
  return out.str();
}

}  // namespace faircut
