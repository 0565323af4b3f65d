#include "rescon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

void require_square(const DenseMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

bool spectrum_order(const std::complex<double>& x, const std::complex<double>& y) {
  if (x.real() != y.real()) return x.real() > y.real();
  return x.imag() > y.imag();
}

// Kuhn's augmenting-path bipartite matching restricted to edges allowed[i][j].
bool has_perfect_matching(const std::vector<std::vector<char>>& allowed) {
  const std::size_t n = allowed.size();
  std::vector<long> match_right(n, -1);
  std::vector<char> visited;

  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::size_t v = 0; v < n; ++v) {
      if (!allowed[u][v] || visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 || self(self, static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };

  for (std::size_t u = 0; u < n; ++u) {
    visited.assign(n, 0);
    if (!augment(augment, u)) return false;
  }
  return true;
}

}  // namespace

double Spectrum::abscissa() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& z : values) m = std::max(m, z.real());
  return m;
}

double Spectrum::max_imag() const {
  double m = 0.0;
  for (const auto& z : values) m = std::max(m, std::abs(z.imag()));
  return m;
}

Spectrum make_spectrum(std::vector<std::complex<double>> values) {
  std::sort(values.begin(), values.end(), spectrum_order);
  return Spectrum{std::move(values)};
}

Spectrum eigenvalues(const DenseMatrix& a, Precision precision) {
  require_square(a, "eigenvalues");
  if (a.is_symmetric()) {
    const auto real = symmetric_eigenvalues(a);
    std::vector<std::complex<double>> v(real.begin(), real.end());
    return make_spectrum(std::move(v));
  }
  return make_spectrum(general_eigenvalues(a, precision));
}

double determinant(const DenseMatrix& a) {
  require_square(a, "determinant");
  return LuDecomposition(a).determinant();
}

double default_zero_tolerance(const DenseMatrix& a) { return 1e-9 * std::max(1.0, a.max_row_sum()); }

Inertia inertia(const Spectrum& s, double tol) {
  Inertia in;
  for (const auto& z : s.values) {
    if (z.real() > tol) {
      ++in.positive;
    } else if (z.real() < -tol) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

Inertia inertia(const DenseMatrix& a, double tol) {
  require_square(a, "inertia");
  return inertia(eigenvalues(a), tol);
}

Inertia inertia(const DenseMatrix& a) { return inertia(a, default_zero_tolerance(a)); }

BlockDeterminantCheck block_triangular_det_check(const DenseMatrix& a, const DenseMatrix& b,
                                                 const DenseMatrix& d) {
  require_square(a, "block_triangular_det_check(A)");
  require_square(d, "block_triangular_det_check(D)");
  if (b.rows() != a.rows() || b.cols() != d.rows()) {
    throw DimensionError("block_triangular_det_check: B must be " + std::to_string(a.rows()) + "x" +
                         std::to_string(d.rows()));
  }
  const std::size_t p = a.rows(), q = d.rows();
  DenseMatrix m(p + q, p + q);
  m.set_block(0, 0, a);
  m.set_block(0, p, b);
  m.set_block(p, p, d);

  BlockDeterminantCheck out;
  out.det_m = determinant(m);
  out.det_product = determinant(a) * determinant(d);
  out.residual = std::abs(out.det_m - out.det_product);
  return out;
}

CompanionLinearization companion_linearization(const DenseMatrix& a, const DenseMatrix& b,
                                               const DenseMatrix& c) {
  require_square(a, "quadratic_eigenvalues(A)");
  const std::size_t n = a.rows();
  if (b.rows() != n || b.cols() != n || c.rows() != n || c.cols() != n) {
    throw DimensionError("quadratic_eigenvalues: A, B, C must all be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  const LuDecomposition lu(a);
  if (lu.singular()) throw PreconditionError("quadratic_eigenvalues: leading coefficient A is singular");

  CompanionLinearization out;
  out.condition_estimate = one_norm(a) * one_norm(lu.inverse());
  const DenseMatrix ainv_c = lu.solve(c);
  const DenseMatrix ainv_b = lu.solve(b);

  out.matrix = DenseMatrix(2 * n, 2 * n);
  out.matrix.set_block(0, n, DenseMatrix::identity(n));
  out.matrix.set_block(n, 0, -ainv_c);
  out.matrix.set_block(n, n, -ainv_b);
  return out;
}

Spectrum quadratic_eigenvalues(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                               Precision precision) {
  const auto lin = companion_linearization(a, b, c);
  if (lin.condition_estimate > kIllConditioned) {
    std::clog << "warning: quadratic_eigenvalues: leading coefficient has condition estimate "
              << lin.condition_estimate << '\n';
  }
  return eigenvalues(lin.matrix, precision);
}

QuadraticInertiaCheck quadratic_inertia_check(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                                     double tol) {
  const auto lin = companion_linearization(a, b, c);
  if (!a.is_symmetric(1e-12 * std::max(1.0, a.max_row_sum())) ||
      !c.is_symmetric(1e-12 * std::max(1.0, c.max_row_sum()))) {
    throw PreconditionError("quadratic_inertia_check: A and C must be symmetric");
  }
  const DenseMatrix b_sym = 0.5 * (b + b.transpose());
  const auto b_eigs = symmetric_eigenvalues(b_sym);
  const double b_min = *std::min_element(b_eigs.begin(), b_eigs.end());
  if (!(b_min > default_zero_tolerance(b_sym))) {
    throw PreconditionError("quadratic_inertia_check: B is not positive-definite (smallest eigenvalue of its "
                            "symmetric part is " + std::to_string(b_min) + ")");
  }

  const Inertia in_a = inertia(a);
  const Inertia in_c = inertia(c);

  QuadraticInertiaCheck out;
  out.predicted.positive = in_a.negative + in_c.negative;
  out.predicted.negative = in_a.positive + in_c.positive;
  out.predicted.zero = in_c.zero;

  const double band = tol < 0.0 ? default_zero_tolerance(lin.matrix) : tol;
  out.observed = inertia(eigenvalues(lin.matrix), band);
  return out;
}

double matching_distance(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) {
    throw DimensionError("matching_distance: multisets differ in size (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::abs(a.values[i] - b.values[j]);

  std::vector<double> levels = dist;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<std::vector<char>> allowed(n, std::vector<char>(n));
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) allowed[i][j] = dist[i * n + j] <= levels[mid];
    if (has_perfect_matching(allowed)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return levels[lo];
}

}  // namespace rescon
