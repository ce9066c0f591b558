#ifndef ERISK_LINSOLVE_HPP_
#define ERISK_LINSOLVE_HPP_

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace erisk {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest entry bit size seen during an elimination.
struct EliminationStats {
  std::uint64_t max_bits = 0;
};

// Solves A X = B exactly by fraction-free (Bareiss) elimination followed by
// back substitution. Scalar must be an exact field with an ADL-visible
// is_zero and, when stats are requested, bit_size.
template <typename Scalar>
Matrix<Scalar> bareiss_solve(Matrix<Scalar> a, Matrix<Scalar> b, EliminationStats* stats = nullptr) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("bareiss_solve: shape mismatch");
  const Eigen::Index m = b.cols();
  Scalar prev(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    while (pivot < n && is_zero(a(pivot, k))) ++pivot;
    if (pivot == n) throw SingularSystemError("singular linear system");
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      b.row(k).swap(b.row(pivot));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar lead = a(i, k);
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - lead * a(k, j)) / prev;
        if (stats) stats->max_bits = std::max(stats->max_bits, bit_size(a(i, j)));
      }
      for (Eigen::Index j = 0; j < m; ++j) b(i, j) = (a(k, k) * b(i, j) - lead * b(k, j)) / prev;
      a(i, k) = Scalar(0);
    }
    prev = a(k, k);
  }
  Matrix<Scalar> x(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Scalar acc = b(i, j);
      for (Eigen::Index c = i + 1; c < n; ++c) acc -= a(i, c) * x(c, j);
      x(i, j) = acc / a(i, i);
    }
  }
  return x;
}

template <typename Scalar>
Vector<Scalar> bareiss_solve(const Matrix<Scalar>& a, const Vector<Scalar>& b,
                             EliminationStats* stats = nullptr) {
  Matrix<Scalar> rhs = b;
  return bareiss_solve<Scalar>(a, std::move(rhs), stats).col(0);
}

}  // namespace erisk

#endif  // ERISK_LINSOLVE_HPP_
