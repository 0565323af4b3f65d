#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rescon {

using Vector = std::vector<double>;

/// Real dense matrix, row-major.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  double trace() const;
  /// Infinity norm: the largest absolute row sum.
  double max_row_sum() const;
  bool is_symmetric(double tol = 0.0) const;
  bool all_finite() const;

  /// Copy of the rows x cols block at (r0, c0).
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b);

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator-=(const DenseMatrix& o);
  DenseMatrix& operator*=(double s);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

/// Largest absolute entrywise difference; shapes must match.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// LU factorization with partial pivoting.
class LuDecomposition {
public:
  explicit LuDecomposition(const DenseMatrix& a);

  bool singular() const noexcept { return singular_; }
  double determinant() const;
  /// Solves A X = B column by column. Throws PreconditionError when singular.
  DenseMatrix solve(const DenseMatrix& b) const;
  DenseMatrix inverse() const;

private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
};

/// 1-norm (largest absolute column sum).
double one_norm(const DenseMatrix& a);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

}  // namespace rescon
