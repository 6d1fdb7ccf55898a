/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qbe {

std::size_t dimension_cap() {
  if (const char *env = std::getenv("QBE_DIM_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0)
      return static_cast<std::size_t>(v);
  }
  return 4096;
}

void check_dimension(Eigen::Index dim, const std::string &what) {
  if (dim < 1)
    throw ValidationError(what + ": empty dimension");
  if (static_cast<std::size_t>(dim) > dimension_cap())
    throw ValidationError(what + ": dimension " + std::to_string(dim) +
                          " exceeds cap " + std::to_string(dimension_cap()));
}

bool all_finite(const Matrix &m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double op_norm(const Matrix &m) {
  if (m.size() == 0)
    return 0.0;
  if (m.rows() == m.cols() && hermiticity_defect(m) <= 1e-14 * (1.0 + m.norm())) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double hermiticity_defect(const Matrix &m) {
  if (m.rows() != m.cols())
    return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

Matrix hermitian_part(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_power_of_two(Eigen::Index dim) { return dim > 0 && (dim & (dim - 1)) == 0; }

int qubits_for(Eigen::Index dim) {
  int q = 0;
  while ((Eigen::Index(1) << q) < dim)
    ++q;
  return q;
}

HermitianOperator::HermitianOperator(Matrix m, double tolerance)
    : m_(std::move(m)), tol_(tolerance) {
  if (m_.rows() != m_.cols())
    throw ValidationError("HermitianOperator: matrix is not square");
  check_dimension(m_.rows(), "HermitianOperator");
  if (!all_finite(m_))
    throw ValidationError("HermitianOperator: non-finite entries");
  double defect = hermiticity_defect(m_);
  // Frobenius defect against operator norm is conservative for small dims.
  if (defect > tol_ * (1.0 + m_.norm()))
    throw ValidationError("HermitianOperator: matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  m_ = hermitian_part(m_);
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

Matrix SpectralDecomposition::apply(const std::function<double(double)> &f) const {
  RealVector w(eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w(i) = f(eigenvalues(i));
  return eigenvectors * w.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const HermitianOperator &op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix());
  if (es.info() != Eigen::Success)
    throw Error("spectral_decompose: eigensolver failed");
  const Eigen::Index n = op.dim();
  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen sorts ascending; flip to descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

SpectralDecomposition spectral_decompose(const Matrix &m) {
  return spectral_decompose(HermitianOperator(m));
}

static double clamp_into_domain(double x, const ScalarFunction &f) {
  if (x < f.lo && x >= f.lo - kClampTol)
    return f.lo;
  if (x > f.hi && x <= f.hi + kClampTol)
    return f.hi;
  if (x < f.lo || x > f.hi)
    throw ValidationError("matrix_function: eigenvalue " + std::to_string(x) +
                          " outside the function domain");
  return x;
}

HermitianOperator matrix_function(const HermitianOperator &op, const ScalarFunction &f) {
  auto sd = spectral_decompose(op);
  Matrix out = sd.apply([&](double x) { return f.f(clamp_into_domain(x, f)); });
  return HermitianOperator(hermitian_part(out), op.tolerance());
}

Matrix matrix_function(const Matrix &m, const ScalarFunction &f) {
  return matrix_function(HermitianOperator(m), f).matrix();
}

Matrix partial_trace(const Matrix &state, Eigen::Index keep_dims, Eigen::Index trace_dims) {
  if (state.rows() != state.cols() || state.rows() != keep_dims * trace_dims)
    throw ValidationError("partial_trace: dimension mismatch");
  Matrix out = Matrix::Zero(keep_dims, keep_dims);
  for (Eigen::Index i = 0; i < keep_dims; ++i)
    for (Eigen::Index j = 0; j < keep_dims; ++j) {
      cplx s = 0.0;
      for (Eigen::Index k = 0; k < trace_dims; ++k)
        s += state(i * trace_dims + k, j * trace_dims + k);
      out(i, j) = s;
    }
  return out;
}

Matrix partial_trace_first(const Matrix &state, Eigen::Index trace_dims, Eigen::Index keep_dims) {
  if (state.rows() != state.cols() || state.rows() != keep_dims * trace_dims)
    throw ValidationError("partial_trace_first: dimension mismatch");
  Matrix out = Matrix::Zero(keep_dims, keep_dims);
  for (Eigen::Index k = 0; k < trace_dims; ++k)
    out += state.block(k * keep_dims, k * keep_dims, keep_dims, keep_dims);
  return out;
}

double min_eigenvalue(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Matrix &m, double rel_tol) {
  if (m.rows() != m.cols())
    return false;
  if (hermiticity_defect(m) > kHermitianTol * (1.0 + m.norm()))
    return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return es.eigenvalues()(0) >= -rel_tol * std::max(norm, 1e-300);
}

Matrix psd_projection(const Matrix &m) {
  auto sd = spectral_decompose(hermitian_part(m));
  return hermitian_part(sd.apply([](double x) { return x > 0.0 ? x : 0.0; }));
}

int delta_rank(const Matrix &m, double delta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > delta)
      ++count;
  return count;
}

std::string to_string(Quantity q) {
  switch (q) {
  case Quantity::VonNeumann: return "von-neumann";
  case Quantity::Renyi: return "renyi";
  case Quantity::Tsallis: return "tsallis";
  case Quantity::TracePower: return "trace-power";
  case Quantity::TraceDistance: return "trace-distance";
  case Quantity::Fidelity: return "fidelity";
  case Quantity::MaxEntropy: return "max-entropy";
  case Quantity::Rank: return "rank";
  }
  return "unknown";
}

Quantity quantity_from_string(const std::string &s) {
  for (Quantity q : {Quantity::VonNeumann, Quantity::Renyi, Quantity::Tsallis,
                     Quantity::TracePower, Quantity::TraceDistance, Quantity::Fidelity,
                     Quantity::MaxEntropy, Quantity::Rank})
    if (to_string(q) == s)
      return q;
  throw ValidationError("unknown quantity '" + s + "'");
}

bool needs_sigma(Quantity q) {
  return q == Quantity::TraceDistance || q == Quantity::Fidelity;
}

namespace {

RealVector clamped_spectrum(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0 && ev(i) >= -kPsdTol)
      ev(i) = 0.0;
  return ev;
}

void require_density(const Matrix &m, const char *name) {
  if (m.rows() != m.cols())
    throw ValidationError(std::string(name) + " is not square");
  if (!is_psd(m))
    throw ValidationError(std::string(name) + " is not positive semidefinite");
  if (std::abs(m.trace().real() - 1.0) > 1e-8)
    throw ValidationError(std::string(name) + " is not normalized");
}

double trace_power_spectral(const RealVector &ev, double alpha) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0)
      s += std::pow(ev(i), alpha);
  return s;
}

} // namespace

double exact_quantity(Quantity kind, double alpha, const Matrix &rho,
                      const std::optional<Matrix> &sigma) {
  require_density(rho, "rho");
  if (needs_sigma(kind)) {
    if (!sigma)
      throw ValidationError(to_string(kind) + " requires sigma");
    require_density(*sigma, "sigma");
    if (sigma->rows() != rho.rows())
      throw ValidationError("rho and sigma dimensions differ");
  }
  switch (kind) {
  case Quantity::VonNeumann: {
    RealVector ev = clamped_spectrum(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > 0.0)
        s -= ev(i) * std::log(ev(i));
    return s;
  }
  case Quantity::TracePower:
    if (alpha <= 0.0)
      throw ValidationError("trace power requires alpha > 0");
    return trace_power_spectral(clamped_spectrum(rho), alpha);
  case Quantity::Renyi:
    if (alpha == 1.0 || alpha < 0.0)
      throw ValidationError("Renyi entropy requires alpha >= 0, alpha != 1");
    if (alpha == 0.0)
      return std::log(static_cast<double>(delta_rank(rho, 1e-10)));
    return std::log(trace_power_spectral(clamped_spectrum(rho), alpha)) / (1.0 - alpha);
  case Quantity::Tsallis:
    if (alpha == 1.0 || alpha < 0.0)
      throw ValidationError("Tsallis entropy requires alpha >= 0, alpha != 1");
    if (alpha == 0.0)
      return static_cast<double>(delta_rank(rho, 1e-10)) - 1.0;
    return (trace_power_spectral(clamped_spectrum(rho), alpha) - 1.0) / (1.0 - alpha);
  case Quantity::MaxEntropy:
    return std::log(static_cast<double>(delta_rank(rho, 1e-10)));
  case Quantity::Rank:
    return static_cast<double>(delta_rank(rho, 1e-10));
  case Quantity::TraceDistance: {
    if (alpha <= 0.0)
      throw ValidationError("trace distance requires alpha > 0");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(0.5 * (rho - *sigma)),
                                             Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      double a = std::abs(es.eigenvalues()(i));
      if (a > 0.0)
        s += std::pow(a, alpha);
    }
    return s;
  }
  case Quantity::Fidelity: {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ValidationError("fidelity requires alpha in (0, 1)");
    double beta = (1.0 - alpha) / (2.0 * alpha);
    Matrix sb = matrix_function(psd_projection(*sigma),
                                {[beta](double x) { return x > 0.0 ? std::pow(x, beta) : 0.0; }, 0.0});
    Matrix eta = hermitian_part(sb * rho * sb);
    return trace_power_spectral(clamped_spectrum(eta), alpha);
  }
  }
  throw ValidationError("unsupported quantity");
}

double trace_power_raw(const Matrix &m, int k) {
  if (k < 1)
    throw ValidationError("trace_power_raw: k must be >= 1");
  Matrix p = m;
  for (int i = 1; i < k; ++i)
    p = p * m;
  return p.trace().real();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over a mix of the two words
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

cplx complex_gaussian(Rng &rng) {
  // Box-Muller on raw 53-bit uniforms keeps streams identical across libstdc++
  // versions (std::normal_distribution is implementation-defined).
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  double u1 = uniform(), u2 = uniform();
  double rad = std::sqrt(-2.0 * std::log(u1));
  constexpr double two_pi = 6.283185307179586476925;
  return cplx(rad * std::cos(two_pi * u2), rad * std::sin(two_pi * u2)) / std::sqrt(2.0);
}

Matrix ginibre_state(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim)
    throw ValidationError("ginibre_state: rank must lie in [1, dim]");
  check_dimension(dim, "ginibre_state");
  Rng rng(seed);
  Matrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j)
      g(i, j) = complex_gaussian(rng);
  Matrix rho = g * g.adjoint();
  return hermitian_part(rho / rho.trace().real());
}

Matrix haar_unitary(Eigen::Index dim, Rng &rng) {
  Matrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      z(i, j) = complex_gaussian(rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    double a = std::abs(d);
    if (a > 0.0)
      q.col(j) *= d / a;
  }
  return q;
}

Matrix random_hermitian(Eigen::Index dim, Rng &rng) {
  Matrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      z(i, j) = complex_gaussian(rng);
  return hermitian_part(z);
}

Matrix random_contraction(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
  Matrix z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      z(i, j) = complex_gaussian(rng);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  return z * (u(rng) / op_norm(z));
}

Vector random_vector(Eigen::Index dim, Rng &rng) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = complex_gaussian(rng);
  return v;
}

} // namespace qbe
