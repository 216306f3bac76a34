#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace reebforest {

using Index = std::size_t;

/// Absolute tolerance used for floating-point equality tests throughout.
inline constexpr double kDefaultTolerance = 1e-9;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"
                   : what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A value violates a structural invariant (not a partial order, triangle
/// inequality broken, graph not p-regular, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The exact maximal-fence search ran past its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Dense row-major n x n matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using DistanceMatrix = SquareMatrix<double>;

/// Largest |a(i,j) - b(i,j)| over all entries, with the maximizing pair.
struct MatrixDeviation {
  double value = 0.0;
  Index i = 0;
  Index j = 0;
};

MatrixDeviation max_abs_difference(const DistanceMatrix& a, const DistanceMatrix& b);

}  // namespace reebforest
