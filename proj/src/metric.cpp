#include "reebforest/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace reebforest {

MatrixDeviation max_abs_difference(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) throw InvariantError("matrix sizes differ");
  MatrixDeviation out;
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < a.size(); ++j) {
      const double dev = std::abs(a(i, j) - b(i, j));
      if (dev > out.value) out = {dev, i, j};
    }
  return out;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, DistanceMatrix d,
                                     double tolerance)
    : labels_(std::move(labels)), d_(std::move(d)) {
  const std::size_t n = d_.size();
  if (n == 0) throw InvariantError("metric space must have at least one point");
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != n) throw InvariantError("label count does not match matrix size");
  for (Index x = 0; x < n; ++x) {
    if (d_(x, x) != 0.0) throw InvariantError("nonzero diagonal at " + labels_[x]);
    for (Index y = x + 1; y < n; ++y) {
      if (!std::isfinite(d_(x, y)) || std::abs(d_(x, y) - d_(y, x)) > tolerance)
        throw InvariantError("asymmetric or non-finite distance between " + labels_[x] + " and " +
                             labels_[y]);
      if (d_(x, y) <= 0.0)
        throw InvariantError("nonpositive distance between distinct points " + labels_[x] +
                             " and " + labels_[y]);
      d_(y, x) = d_(x, y);
    }
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z)
        if (d_(x, z) > d_(x, y) + d_(y, z) + tolerance)
          throw InvariantError("triangle inequality violated: d(" + labels_[x] + "," + labels_[z] +
                               ") > d(" + labels_[x] + "," + labels_[y] + ") + d(" + labels_[y] +
                               "," + labels_[z] + ")");
}

Index FiniteMetricSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvariantError("unknown point '" + label + "'");
  return static_cast<Index>(it - labels_.begin());
}

double gromov_product(const DistanceMatrix& d, Index p, Index x, Index y) {
  return (d(p, x) + d(p, y) - d(x, y)) / 2.0;
}

Hyperbolicity hyp_base(const DistanceMatrix& d, Index p) {
  const std::size_t n = d.size();
  DistanceMatrix g(n, 0.0);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) g(x, y) = gromov_product(d, p, x, y);
  return hyperbolicity_of_products(g);
}

FullHyperbolicity hyp_full(const DistanceMatrix& d) {
  FullHyperbolicity best;
  for (Index p = 0; p < d.size(); ++p) {
    const auto h = hyp_base(d, p);
    if (h.value > best.value) best = {h.value, p, h};
  }
  return best;
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REEB_FOREST_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

namespace {

double four_point_rows(const DistanceMatrix& d, Index row_begin, Index row_end) {
  const std::size_t n = d.size();
  double best = 0.0;
  for (Index i = row_begin; i < row_end; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k)
        for (Index l = k + 1; l < n; ++l) {
          double s1 = d(i, j) + d(k, l);
          double s2 = d(i, k) + d(j, l);
          double s3 = d(i, l) + d(j, k);
          if (s1 < s2) std::swap(s1, s2);
          if (s2 < s3) std::swap(s2, s3);
          if (s1 < s2) std::swap(s1, s2);
          best = std::max(best, (s1 - s2) / 2.0);
        }
  return best;
}

}  // namespace

double hyp_four_point(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 4) return 0.0;
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n / 8 + 1));
  if (workers <= 1) return four_point_rows(d, 0, n);
  // Rows are dealt round-robin so that the triangular workload balances.
  std::vector<double> partial(workers, 0.0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      double best = 0.0;
      for (Index i = w; i < n; i += workers) best = std::max(best, four_point_rows(d, i, i + 1));
      partial[w] = best;
    });
  for (auto& t : pool) t.join();
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace reebforest
