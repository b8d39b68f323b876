// Serial reference kernels. Keep these loops obvious: they are the yardstick
// for the parallel versions in kernels.cpp.

#include "thy/kernels.hpp"

namespace thy::kernels::reference {

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix::value_type sum = 0;
      for (std::size_t k = 0; k < n; ++k) sum = saturating_add(sum, saturating_mul(a(i, k), b(k, j)));
      c(i, j) = sum;
    }
  return c;
}

Matrix power_sum(const Matrix& a, std::size_t max_power) {
  const std::size_t n = a.dim();
  Matrix sum(n);
  Matrix power = Matrix::identity(n);
  for (std::size_t k = 1; k <= max_power; ++k) {
    power = multiply(power, a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) = saturating_add(sum(i, j), power(i, j));
  }
  return sum;
}

Matrix floyd_warshall(const Matrix& adjacency) {
  const std::size_t n = adjacency.dim();
  Matrix r = adjacency.binarized();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r(i, k) && r(k, j)) r(i, j) = 1;
  return r;
}

}  // namespace thy::kernels::reference
