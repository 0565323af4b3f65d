#pragma once

#include <complex>
#include <vector>

#include "rescon/dense_matrix.hpp"

namespace rescon {

/// Working precision of the dense eigensolver. `Extended` runs the same
/// algorithm in 128-bit binary floating point (or long double where the
/// compiler lacks __float128) and rounds the result to double. Use it where
/// defective eigenvalues would otherwise lose half or more of the digits.
enum class Precision { Double, Extended };

/// Eigenvalues of a general real square matrix: balancing, Householder
/// reduction to upper Hessenberg form, then Francis double-shift QR.
/// Unordered. Throws Error when QR fails to converge.
std::vector<std::complex<double>> general_eigenvalues(const DenseMatrix& a,
                                                      Precision precision = Precision::Double);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. Only the
/// upper triangle is read. Unordered.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a);

}  // namespace rescon
