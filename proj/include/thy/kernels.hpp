#pragma once

// Dense integer matrix kernels behind the implication-graph algorithms.
// thy::kernels holds the OpenMP versions; thy::kernels::reference keeps the
// plain serial loops they are tested and benchmarked against.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace thy {

/// Square row-major matrix of non-negative path counts. Arithmetic saturates
/// at Matrix::kSaturated, so binarization stays exact for any graph size.
class Matrix {
 public:
  using value_type = std::int64_t;
  static constexpr value_type kSaturated = INT64_MAX;

  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0) {}
  Matrix(std::size_t dim, std::vector<value_type> row_major);

  static Matrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  value_type operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  const std::vector<value_type>& data() const { return data_; }

  /// 1 where the entry is positive, 0 elsewhere.
  Matrix binarized() const;
  bool is_binary() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<value_type> data_;
};

/// Row-major plain text, one row per line, entries separated by a space.
std::string to_text(const Matrix& m);
std::ostream& operator<<(std::ostream& os, const Matrix& m);

namespace kernels {

Matrix::value_type saturating_add(Matrix::value_type a, Matrix::value_type b);
Matrix::value_type saturating_mul(Matrix::value_type a, Matrix::value_type b);

Matrix multiply(const Matrix& a, const Matrix& b);
/// a - b, entrywise (may be negative; not saturated).
Matrix subtract(const Matrix& a, const Matrix& b);
/// B = sum_{k=1}^{max_power} A^k.
Matrix power_sum(const Matrix& a, std::size_t max_power);
/// Boolean reachability by Floyd-Warshall: entry (i, j) is 1 iff a path of
/// length >= 1 leads from i to j.
Matrix floyd_warshall(const Matrix& adjacency);

namespace reference {

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix power_sum(const Matrix& a, std::size_t max_power);
Matrix floyd_warshall(const Matrix& adjacency);

}  // namespace reference

/// Number of threads the OpenMP kernels use (1 without OpenMP).
int thread_count();

}  // namespace kernels
}  // namespace thy
