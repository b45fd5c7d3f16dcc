#include "dinic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace faircut::detail {

Dinic::Dinic(int node_count) : first_(node_count, -1) {}

int Dinic::add_arc(int from, int to, double capacity) {
  if (capacity < 0.0) throw std::invalid_argument("negative arc capacity");
  const int id = static_cast<int>(head_.size());
  head_.push_back(to);
  residual_.push_back(capacity);
  original_.push_back(capacity);
  next_.push_back(first_[from]);
  first_[from] = id;

  head_.push_back(from);
  residual_.push_back(0.0);
  original_.push_back(0.0);
  next_.push_back(first_[to]);
  first_[to] = id + 1;
  return id;
}

bool Dinic::build_levels(int source, int sink) {
  level_.assign(first_.size(), -1);
  std::vector<int> queue{source};
  level_[source] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int v = queue[i];
    for (int a = first_[v]; a != -1; a = next_[a]) {
      if (residual_[a] > threshold_ && level_[head_[a]] < 0) {
        level_[head_[a]] = level_[v] + 1;
        queue.push_back(head_[a]);
      }
    }
  }
  return level_[sink] >= 0;
}

double Dinic::push(int v, int sink, double limit) {
  if (v == sink) return limit;
  for (int& a = cursor_[v]; a != -1; a = next_[a]) {
    const int w = head_[a];
    if (residual_[a] <= threshold_ || level_[w] != level_[v] + 1) continue;
    const double pushed = push(w, sink, std::min(limit, residual_[a]));
    if (pushed > 0.0) {
      residual_[a] -= pushed;
      residual_[a ^ 1] += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double Dinic::max_flow(int source, int sink) {
  if (source == sink) throw std::invalid_argument("source equals sink");
  double largest = 0.0;
  for (double c : original_) largest = std::max(largest, c);
  threshold_ = 1e-12 * std::max(1.0, largest);

  double total = 0.0;
  while (build_levels(source, sink)) {
    cursor_ = first_;
    while (true) {
      const double pushed = push(source, sink, std::numeric_limits<double>::infinity());
      if (pushed <= 0.0) break;
      total += pushed;
    }
  }
  return total;
}

std::vector<std::uint8_t> Dinic::reachable(int source) const {
  std::vector<std::uint8_t> seen(first_.size(), 0);
  std::vector<int> stack{source};
  seen[source] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int a = first_[v]; a != -1; a = next_[a]) {
      if (residual_[a] > threshold_ && !seen[head_[a]]) {
        seen[head_[a]] = 1;
        stack.push_back(head_[a]);
      }
    }
  }
  return seen;
}

}  // namespace faircut::detail
