/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace qbe {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input: shapes, ranges, preconditions. Maps to CLI exit code 2.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A polynomial could not be certified below the degree cap.
class CertificationError : public Error {
public:
  using Error::Error;
};

/// A parameter schedule could not meet its target within the budget.
/// Maps to CLI exit code 3.
class BudgetError : public Error {
public:
  using Error::Error;
};

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kClampTol = 1e-12;

/// Total Hilbert-space dimension cap; `QBE_DIM_CAP` overrides the default 4096.
std::size_t dimension_cap();
void check_dimension(Eigen::Index dim, const std::string &what);

bool all_finite(const Matrix &m);
double op_norm(const Matrix &m);
double hermiticity_defect(const Matrix &m);
Matrix hermitian_part(const Matrix &m);
Matrix kron(const Matrix &a, const Matrix &b);
int qubits_for(Eigen::Index dim);
bool is_power_of_two(Eigen::Index dim);

/// Square matrix with M ≈ M† within `tolerance · (1 + ‖M‖)`.
class HermitianOperator {
public:
  explicit HermitianOperator(Matrix m, double tolerance = kHermitianTol);

  const Matrix &matrix() const { return m_; }
  double tolerance() const { return tol_; }
  Eigen::Index dim() const { return m_.rows(); }

private:
  Matrix m_;
  double tol_;
};

struct SpectralDecomposition {
  RealVector eigenvalues; // descending
  Matrix eigenvectors;    // columns orthonormal

  Matrix reconstruct() const;
  Matrix apply(const std::function<double(double)> &f) const;
};

SpectralDecomposition spectral_decompose(const HermitianOperator &op);
SpectralDecomposition spectral_decompose(const Matrix &m);

/// Real scalar function with a closed domain; eigenvalues within kClampTol
/// below a zero lower bound are clamped onto it.
struct ScalarFunction {
  std::function<double(double)> f;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

HermitianOperator matrix_function(const HermitianOperator &op,
                                  const ScalarFunction &f);
Matrix matrix_function(const Matrix &m, const ScalarFunction &f);

/// Trace out the second factor of a (keep ⊗ trace) bipartite operator.
Matrix partial_trace(const Matrix &state, Eigen::Index keep_dims,
                     Eigen::Index trace_dims);

/// Trace out the first factor instead.
Matrix partial_trace_first(const Matrix &state, Eigen::Index trace_dims,
                           Eigen::Index keep_dims);

double min_eigenvalue(const Matrix &m);
bool is_psd(const Matrix &m, double rel_tol = kPsdTol);
/// Clamp small negative eigenvalues of a numerically PSD matrix to zero.
Matrix psd_projection(const Matrix &m);
/// Number of eigenvalues with |λ| > delta.
int delta_rank(const Matrix &m, double delta);

enum class Quantity {
  VonNeumann,
  Renyi,
  Tsallis,
  TracePower,
  TraceDistance,
  Fidelity,
  MaxEntropy,
  Rank,
};

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string &s);
bool needs_sigma(Quantity q);

/// Exact value of a quantity through the spectral path.
double exact_quantity(Quantity kind, double alpha, const Matrix &rho,
                      const std::optional<Matrix> &sigma = std::nullopt);

/// tr(M^k) by repeated multiplication (no eigensolver).
double trace_power_raw(const Matrix &m, int k);

// ---------------------------------------------------------------------------
// Random fixtures. Streams derive deterministically from (seed, index).

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
cplx complex_gaussian(Rng &rng);
/// ρ = GG†/tr(GG†) with G an N×r standard complex Gaussian matrix.
Matrix ginibre_state(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);
Matrix haar_unitary(Eigen::Index dim, Rng &rng);
Matrix random_hermitian(Eigen::Index dim, Rng &rng);
Matrix random_contraction(Eigen::Index rows, Eigen::Index cols, Rng &rng);
Vector random_vector(Eigen::Index dim, Rng &rng);

} // namespace qbe
