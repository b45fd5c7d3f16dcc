#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "faircut/types.hpp"

namespace faircut {

// A data-structure invariant was broken (e.g. a residual capacity went negative).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A routine was called outside its documented precondition.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DisconnectedGraph : public std::invalid_argument {
 public:
  DisconnectedGraph(const std::string& what, std::vector<Vertex> stranded)
      : std::invalid_argument(what), stranded_(std::move(stranded)) {}

  // Vertices not reachable from vertex 0.
  const std::vector<Vertex>& stranded() const { return stranded_; }

 private:
  std::vector<Vertex> stranded_;
};

}  // namespace faircut
