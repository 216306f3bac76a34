#pragma once

#include <string>
#include <vector>

#include "reebforest/common.hpp"
#include "reebforest/reeb.hpp"

namespace reebforest {

/// Labeled finite metric space. Construction checks zero diagonal,
/// symmetry, positivity off the diagonal and the triangle inequality.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, DistanceMatrix d,
                    double tolerance = kDefaultTolerance);

  std::size_t size() const noexcept { return d_.size(); }
  const DistanceMatrix& distances() const noexcept { return d_; }
  double operator()(Index x, Index y) const { return d_(x, y); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index x) const { return labels_[x]; }
  Index index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  DistanceMatrix d_;
};

/// g_p(x, y) = (d(p, x) + d(p, y) - d(x, y)) / 2.
double gromov_product(const DistanceMatrix& d, Index p, Index x, Index y);

/// hyp_p by exhaustive triple scan over Gromov products based at p.
Hyperbolicity hyp_base(const DistanceMatrix& d, Index p);

struct FullHyperbolicity {
  double value = 0.0;
  Index base = 0;
  Hyperbolicity witness;
};

/// hyp = max over bases of hyp_p, by definition (n triple scans).
FullHyperbolicity hyp_full(const DistanceMatrix& d);

/// hyp via the four-point form: max over quadruples of half the gap between
/// the two largest of the three pair sums. Equal to hyp_full, but scans
/// each unordered quadruple once and splits work across threads.
double hyp_four_point(const DistanceMatrix& d);

/// Worker count: REEB_FOREST_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace reebforest
