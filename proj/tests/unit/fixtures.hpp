#pragma once

#include <string>
#include <vector>

#include "reebforest/graph.hpp"
#include "reebforest/poset.hpp"
#include "reebforest/reeb.hpp"

namespace fixtures {

using namespace reebforest;

inline Poset poset(std::size_t n, std::vector<OrderPair> pairs, std::vector<std::string> labels = {}) {
  return Poset::from_covers(n, pairs, std::move(labels));
}

// a < b > c
inline Poset vee() { return poset(3, {{0, 1}, {2, 1}}, {"a", "b", "c"}); }

// p < a < b, p < c < b
inline Poset c4() { return poset(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}}, {"p", "a", "b", "c"}); }

inline Poset chain(std::size_t n) {
  std::vector<OrderPair> pairs;
  for (Index i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  return poset(n, pairs);
}

inline MetricGraph unit_cycle() {
  return MetricGraph({"p", "a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}, Index{0});
}

template <typename F>
std::string message_of(F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace fixtures
