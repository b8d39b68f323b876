#include "thy/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace thy {

Matrix::Matrix(std::size_t dim, std::vector<value_type> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) throw std::invalid_argument("Matrix: data size is not dim*dim");
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::binarized() const {
  Matrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] > 0 ? 1 : 0;
  return out;
}

bool Matrix::is_binary() const {
  return std::all_of(data_.begin(), data_.end(), [](value_type v) { return v == 0 || v == 1; });
}

std::string to_text(const Matrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os;
}

namespace kernels {

Matrix::value_type saturating_add(Matrix::value_type a, Matrix::value_type b) {
  return a > Matrix::kSaturated - b ? Matrix::kSaturated : a + b;
}

Matrix::value_type saturating_mul(Matrix::value_type a, Matrix::value_type b) {
  if (a == 0 || b == 0) return 0;
  return a > Matrix::kSaturated / b ? Matrix::kSaturated : a * b;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const auto n = static_cast<std::int64_t>(a.dim());
  Matrix c(a.dim());
  // i-k-j order: the inner loop streams rows of b and c.
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t k = 0; k < n; ++k) {
      const Matrix::value_type aik = a(i, k);
      if (aik == 0) continue;
      for (std::int64_t j = 0; j < n; ++j) {
        const Matrix::value_type bkj = b(k, j);
        if (bkj != 0) c(i, j) = saturating_add(c(i, j), saturating_mul(aik, bkj));
      }
    }
  }
  return c;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix power_sum(const Matrix& a, std::size_t max_power) {
  const std::size_t n = a.dim();
  Matrix sum(n);
  if (max_power == 0) return sum;
  Matrix power = a;
  for (std::size_t k = 1;; ++k) {
    bool any = false;
    for (std::size_t i = 0; i < n * n; ++i) {
      const auto v = power.data()[i];
      if (v) {
        any = true;
        sum(i / n, i % n) = saturating_add(sum(i / n, i % n), v);
      }
    }
    // A nilpotent tail adds nothing more.
    if (!any || k == max_power) break;
    power = multiply(power, a);
  }
  return sum;
}

Matrix floyd_warshall(const Matrix& adjacency) {
  const auto n = static_cast<std::int64_t>(adjacency.dim());
  Matrix r = adjacency.binarized();
  for (std::int64_t k = 0; k < n; ++k) {
    // Row k does not change during pass k, so rows update independently.
#pragma omp parallel for schedule(static) if (n >= 64)
    for (std::int64_t i = 0; i < n; ++i) {
      if (!r(i, k)) continue;
      for (std::int64_t j = 0; j < n; ++j)
        if (r(k, j)) r(i, j) = 1;
    }
  }
  return r;
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels
}  // namespace thy
