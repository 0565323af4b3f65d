#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rescon/dense_matrix.hpp"
#include "rescon/eigen_solver.hpp"

namespace rescon {

/// Eigenvalues with algebraic multiplicity, ordered by descending real
/// part, ties broken by descending imaginary part.
struct Spectrum {
  std::vector<std::complex<double>> values;

  std::size_t size() const noexcept { return values.size(); }
  /// Largest real part (the spectral abscissa).
  double abscissa() const;
  /// Largest |Im| over the spectrum.
  double max_imag() const;
};

Spectrum make_spectrum(std::vector<std::complex<double>> values);

/// Counts of eigenvalues with positive, zero and negative real part.
struct Inertia {
  std::size_t positive = 0;
  std::size_t zero = 0;
  std::size_t negative = 0;

  std::size_t total() const noexcept { return positive + zero + negative; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Full spectrum. Symmetric inputs go through Jacobi and come back exactly
/// real; everything else uses Hessenberg QR at the requested precision.
Spectrum eigenvalues(const DenseMatrix& a, Precision precision = Precision::Double);

double determinant(const DenseMatrix& a);

/// 1e-9 times max(1, largest absolute row sum).
double default_zero_tolerance(const DenseMatrix& a);

/// Real parts inside [-tol, tol] count as zero.
Inertia inertia(const Spectrum& s, double tol);
Inertia inertia(const DenseMatrix& a, double tol);
Inertia inertia(const DenseMatrix& a);

/// Both sides of det([[A, B], [0, D]]) = det(A) det(D).
struct BlockDeterminantCheck {
  double det_m = 0.0;
  double det_product = 0.0;
  /// |det_m - det_product|
  double residual = 0.0;
};

/// Assembles [[A, B], [0, D]] and evaluates both sides. A is p x p, D is
/// q x q, B is p x q.
BlockDeterminantCheck block_triangular_det_check(const DenseMatrix& a, const DenseMatrix& b,
                                                 const DenseMatrix& d);

struct CompanionLinearization {
  /// [[0, I], [-A^-1 C, -A^-1 B]]
  DenseMatrix matrix;
  /// ||A||_1 ||A^-1||_1
  double condition_estimate = 0.0;
};

inline constexpr double kIllConditioned = 1e12;

/// Throws PreconditionError for singular A, DimensionError for shape errors.
CompanionLinearization companion_linearization(const DenseMatrix& a, const DenseMatrix& b,
                                               const DenseMatrix& c);

/// The 2n roots of det(A s^2 + B s + C) via the companion linearization.
/// Prints a warning on std::clog when A's condition estimate exceeds 1e12.
Spectrum quadratic_eigenvalues(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                               Precision precision = Precision::Double);

/// Inertia of Z(s) = A s^2 + B s + C predicted from inertia(A), inertia(C)
/// for positive-definite B, next to the inertia observed from the roots.
struct QuadraticInertiaCheck {
  Inertia predicted;
  Inertia observed;

  bool matches() const noexcept { return predicted == observed; }
};

/// Hypotheses checked up front, each a PreconditionError when violated: A
/// nonsingular, B positive-definite (symmetric part), A and C symmetric.
/// `tol` bands the zero real part of the observed roots; a negative value
/// selects default_zero_tolerance of the companion matrix.
QuadraticInertiaCheck quadratic_inertia_check(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                                     double tol = -1.0);

/// Optimal bottleneck matching between two multisets of equal size: the
/// smallest d such that a bijection exists pairing every element with one
/// at distance <= d. Throws DimensionError on size mismatch.
double matching_distance(const Spectrum& a, const Spectrum& b);

}  // namespace rescon
