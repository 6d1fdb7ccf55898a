/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/encodings.hpp"

#include <algorithm>
#include <cmath>

namespace qbe {

namespace {

Eigen::Index pow2(int k) { return Eigen::Index(1) << k; }

int system_qubits_of(Eigen::Index dim, const char *what) {
  if (!is_power_of_two(dim))
    throw ValidationError(std::string(what) + ": dimension " + std::to_string(dim) +
                          " is not a power of two");
  return qubits_for(dim);
}

// Spectral square root of a PSD matrix with eigenvalues clamped at 0.
Matrix psd_sqrt(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Cost gates(const std::string &symbol, double value, double coeff = 1.0) {
  Cost c;
  c.gates = GateExpression::symbol(symbol, value) * coeff;
  return c;
}

} // namespace

// ---------------------------------------------------------------------------

SubnormalizedDensityOperator::SubnormalizedDensityOperator(Matrix m) {
  if (m.rows() != m.cols())
    throw ValidationError("density operator: matrix is not square");
  n_ = system_qubits_of(m.rows(), "density operator");
  check_dimension(m.rows(), "density operator");
  if (!all_finite(m))
    throw ValidationError("density operator: non-finite entries");
  if (!is_psd(m))
    throw ValidationError("density operator: not positive semidefinite");
  m_ = hermitian_part(m);
  if (m_.trace().real() > 1.0 + 1e-9)
    throw ValidationError("density operator: trace exceeds 1");
}

// ---------------------------------------------------------------------------

PurifiedAccessOracle::PurifiedAccessOracle(Vector state, int system_qubits, int block_ancillas,
                                           int purifying_ancillas, CostTree cost,
                                           Provenance provenance)
    : state_(std::move(state)), n_(system_qubits), a_(block_ancillas), b_(purifying_ancillas),
      declared_a_(block_ancillas), declared_b_(purifying_ancillas), cost_(std::move(cost)),
      provenance_(std::move(provenance)) {
  if (n_ < 0 || a_ < 0 || b_ < 0)
    throw ValidationError("oracle: negative register size");
  if (state_.size() != pow2(n_ + a_ + b_))
    throw ValidationError("oracle: state size does not match registers");
  check_dimension(state_.size(), "oracle");
  if (std::abs(state_.norm() - 1.0) > 1e-9)
    throw ValidationError("oracle: prepared state is not normalized");
  if (!cost_)
    cost_ = empty_cost();
}

PurifiedAccessOracle &PurifiedAccessOracle::declare(int block_ancillas, int purifying_ancillas) {
  declared_a_ = block_ancillas;
  declared_b_ = purifying_ancillas;
  return *this;
}

PurifiedAccessOracle &PurifiedAccessOracle::with_target(Matrix target, double declared_error) {
  target_ = std::move(target);
  declared_error_ = declared_error;
  return *this;
}

Matrix PurifiedAccessOracle::unitary() const { return unitary_with_first_column(state_); }

Matrix PurifiedAccessOracle::reduced_state() const {
  const Eigen::Index B = pow2(b_), D = pow2(n_ + a_);
  Eigen::Map<const Matrix> x(state_.data(), B, D);
  return x.transpose() * x.conjugate();
}

Matrix PurifiedAccessOracle::encoded() const {
  const Eigen::Index N = system_dim(), A = pow2(a_), B = pow2(b_);
  Matrix psi(N, B);
  for (Eigen::Index s = 0; s < N; ++s)
    for (Eigen::Index j = 0; j < B; ++j)
      psi(s, j) = state_((s * A) * B + j);
  return hermitian_part(psi * psi.adjoint());
}

double PurifiedAccessOracle::amplitude() const {
  const Eigen::Index N = system_dim(), A = pow2(a_), B = pow2(b_);
  double p = 0.0;
  for (Eigen::Index s = 0; s < N; ++s)
    for (Eigen::Index j = 0; j < B; ++j)
      p += std::norm(state_((s * A) * B + j));
  return p;
}

PurifiedAccessOracle PurifiedAccessOracle::compacted() const {
  Matrix enc = psd_projection(encoded());
  double tr = enc.trace().real();
  if (tr > 1.0)
    enc /= tr;
  PurifiedAccessOracle out = purification_of(SubnormalizedDensityOperator(enc));
  out.declared_a_ = declared_a_;
  out.declared_b_ = declared_b_;
  out.declared_error_ = declared_error_;
  out.target_ = target_;
  out.cost_ = cost_;
  out.provenance_ = provenance_;
  return out;
}

std::optional<double> PurifiedAccessOracle::contract_defect() const {
  if (!target_)
    return std::nullopt;
  return op_norm(encoded() - *target_);
}

// ---------------------------------------------------------------------------

UnitaryBlockEncoding::UnitaryBlockEncoding(Matrix unitary, int system_qubits, int ancillas,
                                           double scale, double declared_error, CostTree cost,
                                           Provenance provenance)
    : u_(std::move(unitary)), n_(system_qubits), a_(ancillas), declared_a_(ancillas),
      scale_(scale), declared_error_(declared_error), cost_(std::move(cost)),
      provenance_(std::move(provenance)) {
  if (n_ < 0 || a_ < 0)
    throw ValidationError("block-encoding: negative register size");
  if (u_.rows() != u_.cols() || u_.rows() != pow2(n_ + a_))
    throw ValidationError("block-encoding: unitary size does not match registers");
  check_dimension(u_.rows(), "block-encoding");
  if (scale_ < 0.0 || declared_error_ < 0.0)
    throw ValidationError("block-encoding: negative scale or error");
  if (!cost_)
    cost_ = empty_cost();
}

UnitaryBlockEncoding &UnitaryBlockEncoding::declare(int ancillas) {
  declared_a_ = ancillas;
  return *this;
}

UnitaryBlockEncoding &UnitaryBlockEncoding::with_target(Matrix target, std::string description) {
  if (target.rows() != system_dim() || target.cols() != system_dim())
    throw ValidationError("block-encoding: target has the wrong shape");
  target_ = std::move(target);
  description_ = std::move(description);
  return *this;
}

Matrix UnitaryBlockEncoding::block() const {
  const Eigen::Index N = system_dim(), A = pow2(a_);
  Matrix out(N, N);
  for (Eigen::Index s = 0; s < N; ++s)
    for (Eigen::Index t = 0; t < N; ++t)
      out(s, t) = u_(s * A, t * A);
  return out;
}

Matrix UnitaryBlockEncoding::input_columns() const {
  const Eigen::Index N = system_dim(), A = pow2(a_);
  Matrix out(u_.rows(), N);
  for (Eigen::Index t = 0; t < N; ++t)
    out.col(t) = u_.col(t * A);
  return out;
}

std::optional<double> UnitaryBlockEncoding::contract_defect() const {
  if (!target_)
    return std::nullopt;
  return op_norm(scale_ * block() - *target_);
}

void UnitaryBlockEncoding::check_contract(double slack) const {
  auto d = contract_defect();
  if (d && *d > declared_error_ + slack)
    throw ValidationError("block-encoding contract violated: defect " + std::to_string(*d) +
                          " > declared " + std::to_string(declared_error_));
}

UnitaryBlockEncoding UnitaryBlockEncoding::compacted() const {
  UnitaryBlockEncoding out = dilate(block());
  out.scale_ = scale_;
  out.declared_error_ = declared_error_;
  out.declared_a_ = declared_a_;
  out.target_ = target_;
  out.description_ = description_;
  out.cost_ = cost_;
  out.provenance_ = provenance_;
  return out;
}

// ---------------------------------------------------------------------------

double StatePreparationPair::defect() const {
  const Eigen::Index D = left.rows();
  double d = 0.0;
  for (Eigen::Index j = 0; j < D; ++j) {
    cplx v = norm_bound * std::conj(left(j, 0)) * right(j, 0);
    d += j < coefficients.size() ? std::abs(v - coefficients(j)) : std::abs(v);
  }
  return d;
}

void StatePreparationPair::validate() const {
  if (left.rows() != left.cols() || right.rows() != right.cols() || left.rows() != right.rows())
    throw ValidationError("state-preparation pair: unitaries must be square and equal-sized");
  if (!is_power_of_two(left.rows()))
    throw ValidationError("state-preparation pair: size is not a power of two");
  if (coefficients.size() > left.rows())
    throw ValidationError("state-preparation pair: more coefficients than basis states");
  if (unitarity_defect(left) > 1e-9 || unitarity_defect(right) > 1e-9)
    throw ValidationError("state-preparation pair: not unitary");
  if (coefficients.cwiseAbs().sum() > norm_bound + 1e-12)
    throw ValidationError("state-preparation pair: ‖y‖₁ exceeds the norm bound");
  if (defect() > declared_error + 1e-12)
    throw ValidationError("state-preparation pair: coefficients not reproduced");
}

StatePreparationPair StatePreparationPair::difference() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix H(2, 2);
  H << h, h, h, -h;
  Matrix X(2, 2);
  X << 0, 1, 1, 0;
  StatePreparationPair p;
  p.left = H * X;
  p.right = H;
  p.coefficients = Vector(2);
  p.coefficients << 1.0, -1.0;
  p.norm_bound = 2.0;
  p.declared_error = 0.0;
  return p;
}

StatePreparationPair StatePreparationPair::for_coefficients(const Vector &y) {
  if (y.size() < 1)
    throw ValidationError("state-preparation pair: empty coefficient vector");
  const double beta = y.cwiseAbs().sum();
  if (beta <= 0.0)
    throw ValidationError("state-preparation pair: zero coefficient vector");
  const Eigen::Index D = std::max<Eigen::Index>(2, pow2(qubits_for(y.size())));
  Vector c = Vector::Zero(D), d = Vector::Zero(D);
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    double mag = std::sqrt(std::abs(y(j)) / beta);
    d(j) = mag;
    // c_j* d_j = y_j/β  ⇒  c_j = conj(y_j/|y_j|) · mag
    c(j) = std::abs(y(j)) > 0.0 ? std::conj(y(j) / std::abs(y(j))) * mag : cplx(0.0);
  }
  StatePreparationPair p;
  p.left = unitary_with_first_column(c);
  p.right = unitary_with_first_column(d);
  p.coefficients = y;
  p.norm_bound = beta;
  p.declared_error = p.defect();
  return p;
}

// ---------------------------------------------------------------------------

Matrix unitary_with_first_column(const Vector &v_in) {
  const double nv = v_in.norm();
  if (nv <= 0.0)
    throw ValidationError("unitary_with_first_column: zero vector");
  Vector v = v_in / nv;
  const Eigen::Index D = v.size();
  cplx phase = std::abs(v(0)) > 0.0 ? v(0) / std::abs(v(0)) : cplx(1.0);
  Vector x = Vector::Zero(D);
  x(0) = phase;
  Vector u = x - v;
  Matrix out = Matrix::Identity(D, D);
  double un = u.norm();
  if (un > 1e-15) {
    u /= un;
    out -= 2.0 * u * u.adjoint();
  }
  out.col(0) *= phase;
  return out;
}

Matrix clamp_to_contraction(const Matrix &m, double tol) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector &sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 1.0)
    return m;
  if (sv(0) > 1.0 + tol)
    throw ValidationError("dilate: operator norm " + std::to_string(sv(0)) + " exceeds 1");
  RealVector clamped = sv.cwiseMin(1.0);
  return svd.matrixU().leftCols(sv.size()) * clamped.cast<cplx>().asDiagonal() *
         svd.matrixV().leftCols(sv.size()).adjoint();
}

double unitarity_defect(const Matrix &u) {
  return op_norm(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

UnitaryBlockEncoding dilate(const Matrix &m_in) {
  if (m_in.rows() != m_in.cols())
    throw ValidationError("dilate: matrix must be square");
  const int n = system_qubits_of(m_in.rows(), "dilate");
  Matrix m = clamp_to_contraction(m_in);
  const Eigen::Index N = m.rows();
  Matrix I = Matrix::Identity(N, N);
  Matrix s1 = psd_sqrt(I - m * m.adjoint());
  Matrix s2 = psd_sqrt(I - m.adjoint() * m);
  Matrix blocks[2][2] = {{m, s1}, {s2, -m.adjoint()}};
  Matrix u(2 * N, 2 * N);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (Eigen::Index s = 0; s < N; ++s)
        for (Eigen::Index t = 0; t < N; ++t)
          u(2 * s + i, 2 * t + j) = blocks[i][j](s, t);
  UnitaryBlockEncoding out(std::move(u), n, 1, 1.0, 0.0, empty_cost(), {"dilation", {}});
  out.with_target(m, "dilated contraction");
  return out;
}

// ---------------------------------------------------------------------------

PurifiedAccessOracle purification_of(const SubnormalizedDensityOperator &a,
                                     const std::string &oracle) {
  const Eigen::Index N = a.dim();
  const int n = a.system_qubits();
  auto sd = spectral_decompose(a.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < N; ++k)
    if (sd.eigenvalues(k) > 1e-15)
      support.push_back(k);
  const double tr = std::clamp(a.trace(), 0.0, 1.0);
  const bool normalized = std::abs(tr - 1.0) <= 1e-12 && !support.empty();
  const int an = normalized ? 0 : 1;
  const int bn = std::max(1, qubits_for(static_cast<Eigen::Index>(support.size())));
  const Eigen::Index A = pow2(an), B = pow2(bn);
  Vector psi = Vector::Zero(N * A * B);
  for (std::size_t k = 0; k < support.size(); ++k) {
    double lam = sd.eigenvalues(support[k]);
    for (Eigen::Index s = 0; s < N; ++s)
      psi((s * A) * B + static_cast<Eigen::Index>(k)) =
          std::sqrt(lam) * sd.eigenvectors(s, support[k]);
  }
  if (!normalized) {
    double rest = 1.0 - psi.squaredNorm();
    psi((0 * A + 1) * B + 0) = std::sqrt(std::max(rest, 0.0));
  }
  psi /= psi.norm();
  PurifiedAccessOracle out(std::move(psi), n, an, bn, leaf_query(oracle),
                           {"purification", {{"trace", tr}}});
  out.with_target(a.matrix(), 0.0);
  return out;
}

UnitaryBlockEncoding block_encode_density(const PurifiedAccessOracle &oracle,
                                          DensityBlockVariant variant) {
  const int n = oracle.system_qubits();
  const int declared = n + oracle.declared_block_ancillas() + oracle.declared_purifying_ancillas();
  CostTree cost = make_cost("block-encode density",
                            gates("a", oracle.declared_block_ancillas() + 1.0), {oracle.cost()});
  Matrix target = oracle.target() ? *oracle.target() : oracle.encoded();
  const double err = oracle.target() ? oracle.declared_error() : 0.0;
  Provenance prov{"block-encoding of a subnormalized density operator",
                  {{"ancillas", static_cast<double>(declared)}}};

  if (variant == DensityBlockVariant::Compact) {
    UnitaryBlockEncoding out = dilate(oracle.encoded());
    UnitaryBlockEncoding res(out.unitary(), n, 1, 1.0, err, cost, prov);
    res.declare(declared).with_target(target, "encoded density operator");
    return res;
  }

  // Swap construction: W = (I ⊗ U†) SWAP (I ⊗ U) on (ext_sys, ext_anc, sys, anc, pur),
  // swapping (ext_sys, ext_anc) with (sys, anc). The block on ext_sys with ext_anc
  // and the original registers in |0⟩ is ⟨0|_a tr_b(|ρ⟩⟨ρ|)|0⟩_a.
  const int a = oracle.block_ancillas(), b = oracle.purifying_ancillas();
  const Eigen::Index E = pow2(n + a), B = pow2(b), D = E * B;
  check_dimension(E * D, "block_encode_density (literal)");
  Matrix U = oracle.unitary();
  Matrix lifted = kron(Matrix::Identity(E, E), U);
  Matrix swapped(E * D, E * D);
  // swapped = P · lifted, P|e⟩|r, j⟩ = |r⟩|e, j⟩
  for (Eigen::Index e = 0; e < E; ++e)
    for (Eigen::Index r = 0; r < E; ++r)
      for (Eigen::Index j = 0; j < B; ++j)
        swapped.row(r * D + e * B + j) = lifted.row(e * D + r * B + j);
  Matrix w = kron(Matrix::Identity(E, E), U.adjoint()) * swapped;
  UnitaryBlockEncoding res(std::move(w), n, a + n + a + b, 1.0, err, cost, prov);
  res.declare(declared).with_target(target, "encoded density operator");
  return res;
}

PurifiedAccessOracle evolve(const PurifiedAccessOracle &oracle, const UnitaryBlockEncoding &v) {
  if (oracle.system_qubits() != v.system_qubits())
    throw ValidationError("evolve: system dimensions differ");
  if (!(v.scale() >= 1.0 - 1e-12))
    throw ValidationError("evolve: block-encoding scale must be at least 1");
  const Eigen::Index N = oracle.system_dim();
  const int a1 = oracle.block_ancillas(), a2 = v.ancillas(), b = oracle.purifying_ancillas();
  const Eigen::Index A1 = pow2(a1), A2 = pow2(a2), B = pow2(b);
  check_dimension(N * A1 * A2 * B, "evolve");
  Eigen::Map<const Matrix> x(oracle.state().data(), A1 * B, N);
  Matrix phi = v.input_columns() * x.transpose(); // rows (s', i2), cols (i1, j)
  Vector out(N * A1 * A2 * B);
  for (Eigen::Index s = 0; s < N; ++s)
    for (Eigen::Index i2 = 0; i2 < A2; ++i2)
      for (Eigen::Index i1 = 0; i1 < A1; ++i1)
        for (Eigen::Index j = 0; j < B; ++j)
          out(((s * A1 + i1) * A2 + i2) * B + j) = phi(s * A2 + i2, i1 * B + j);
  CostTree cost = make_cost("evolve", Cost{}, {oracle.cost(), v.cost()});
  PurifiedAccessOracle res(std::move(out), oracle.system_qubits(), a1 + a2, b, cost,
                           {"evolution of a subnormalized density operator", {}});
  res.declare(oracle.declared_block_ancillas() + v.declared_ancillas(),
              oracle.declared_purifying_ancillas());
  if (oracle.target() && v.target()) {
    // The realized block approximates target/α within ε/α.
    const Matrix bt = *v.target() / v.scale();
    // ‖B'AB'† − BAB†‖ ≤ ‖A‖(2‖B‖ε + ε²) + ‖B'‖²ε_A with B' the realized block.
    double eb = v.declared_error() / v.scale(), ea = oracle.declared_error();
    double nb = op_norm(bt);
    double err = op_norm(*oracle.target()) * (2.0 * nb * eb + eb * eb) + (nb + eb) * (nb + eb) * ea;
    res.with_target(hermitian_part(bt * *oracle.target() * bt.adjoint()), err);
  }
  return res;
}

PurifiedAccessOracle embed(const PurifiedAccessOracle &oracle, int extra_qubits) {
  if (extra_qubits < 0)
    throw ValidationError("embed: negative qubit count");
  if (extra_qubits == 0)
    return oracle;
  const Eigen::Index N = oracle.system_dim(), E = pow2(extra_qubits);
  const Eigen::Index A = pow2(oracle.block_ancillas()), B = pow2(oracle.purifying_ancillas());
  check_dimension(N * E * A * B, "embed");
  Vector out = Vector::Zero(N * E * A * B);
  for (Eigen::Index s = 0; s < N; ++s)
    for (Eigen::Index i = 0; i < A; ++i)
      for (Eigen::Index j = 0; j < B; ++j)
        out(((s * E + 0) * A + i) * B + j) = oracle.state()((s * A + i) * B + j);
  CostTree cost = make_cost("embed", Cost{}, {oracle.cost()});
  PurifiedAccessOracle res(std::move(out), oracle.system_qubits() + extra_qubits,
                           oracle.block_ancillas(), oracle.purifying_ancillas(), cost,
                           {"embedding with extra qubits", {{"extra", double(extra_qubits)}}});
  res.declare(oracle.declared_block_ancillas(), oracle.declared_purifying_ancillas());
  if (oracle.target()) {
    Matrix zero = Matrix::Zero(E, E);
    zero(0, 0) = 1.0;
    res.with_target(kron(*oracle.target(), zero), oracle.declared_error());
  }
  return res;
}

UnitaryBlockEncoding product(const UnitaryBlockEncoding &u, const UnitaryBlockEncoding &v) {
  if (u.system_qubits() != v.system_qubits())
    throw ValidationError("product: system dimensions differ");
  const Eigen::Index N = u.system_dim(), AU = pow2(u.ancillas()), AV = pow2(v.ancillas());
  const Eigen::Index D = N * AU * AV;
  check_dimension(D, "product");
  // Registers (sys, ancU, ancV): U acts on (sys, ancU), V on (sys, ancV).
  Matrix lu = kron(u.unitary(), Matrix::Identity(AV, AV));
  Matrix lv = Matrix::Zero(D, D);
  const Matrix &vm = v.unitary();
  for (Eigen::Index s1 = 0; s1 < N; ++s1)
    for (Eigen::Index k1 = 0; k1 < AV; ++k1)
      for (Eigen::Index s2 = 0; s2 < N; ++s2)
        for (Eigen::Index k2 = 0; k2 < AV; ++k2) {
          cplx val = vm(s1 * AV + k1, s2 * AV + k2);
          if (val == cplx(0.0))
            continue;
          for (Eigen::Index i = 0; i < AU; ++i)
            lv((s1 * AU + i) * AV + k1, (s2 * AU + i) * AV + k2) = val;
        }
  const double alpha = u.scale(), beta = v.scale();
  CostTree cost = make_cost("product", Cost{}, {u.cost(), v.cost()});
  UnitaryBlockEncoding res(lu * lv, u.system_qubits(), u.ancillas() + v.ancillas(), alpha * beta,
                           alpha * v.declared_error() + beta * u.declared_error(), cost,
                           {"product of block-encoded matrices", {}});
  res.declare(u.declared_ancillas() + v.declared_ancillas());
  if (u.target() && v.target())
    res.with_target(*u.target() * *v.target(), "product");
  return res;
}

PurifiedAccessOracle linear_combination_density(const Matrix &prep,
                                                const std::vector<PurifiedAccessOracle> &oracles) {
  if (prep.rows() != prep.cols() || !is_power_of_two(prep.rows()))
    throw ValidationError("linear combination: preparation must be a square 2^m unitary");
  if (unitarity_defect(prep) > 1e-9)
    throw ValidationError("linear combination: preparation is not unitary");
  if (static_cast<Eigen::Index>(oracles.size()) > prep.rows())
    throw ValidationError("linear combination: more oracles than preparation basis states");
  RealVector alphas(prep.rows());
  for (Eigen::Index k = 0; k < prep.rows(); ++k)
    alphas(k) = std::norm(prep(k, 0));
  std::vector<PurifiedAccessOracle> padded = oracles;
  // Basis states without an oracle carry the zero operator.
  for (Eigen::Index k = static_cast<Eigen::Index>(oracles.size()); k < prep.rows(); ++k) {
    if (alphas(k) > 1e-15) {
      if (oracles.empty())
        throw ValidationError("linear combination: no oracles");
      padded.push_back(purification_of(
          SubnormalizedDensityOperator(Matrix::Zero(oracles[0].system_dim(), oracles[0].system_dim())),
          "zero"));
    } else {
      alphas(k) = 0.0;
    }
  }
  RealVector used = alphas.head(static_cast<Eigen::Index>(padded.size()));
  return linear_combination_density(used, padded);
}

PurifiedAccessOracle linear_combination_density(const RealVector &alphas_in,
                                                const std::vector<PurifiedAccessOracle> &oracles) {
  if (oracles.empty() || static_cast<Eigen::Index>(oracles.size()) != alphas_in.size())
    throw ValidationError("linear combination: coefficient count must match oracle count");
  for (Eigen::Index k = 0; k < alphas_in.size(); ++k)
    if (!(alphas_in(k) >= 0.0))
      throw ValidationError("linear combination: negative coefficient");
  const double total = alphas_in.sum();
  if (total > 1.0 + 1e-9)
    throw ValidationError("linear combination: coefficients sum above 1");
  const int n = oracles[0].system_qubits();
  for (const auto &o : oracles)
    if (o.system_qubits() != n)
      throw ValidationError("linear combination: system dimensions differ");

  std::vector<PurifiedAccessOracle> terms = oracles;
  std::vector<double> alphas(alphas_in.data(), alphas_in.data() + alphas_in.size());
  if (total < 1.0 - 1e-12) {
    // Leftover preparation amplitude lands on a zero operator.
    terms.push_back(purification_of(
        SubnormalizedDensityOperator(Matrix::Zero(oracles[0].system_dim(), oracles[0].system_dim())),
        "zero"));
    alphas.push_back(1.0 - total);
  }
  const int m = qubits_for(static_cast<Eigen::Index>(terms.size()));
  int a = 0, b = 0, da = 0, db = 0;
  for (const auto &o : terms) {
    a = std::max(a, o.block_ancillas());
    b = std::max(b, o.purifying_ancillas());
    da = std::max(da, o.declared_block_ancillas());
    db = std::max(db, o.declared_purifying_ancillas());
  }
  const Eigen::Index N = pow2(n), A = pow2(a), B = pow2(b), K = pow2(m);
  check_dimension(N * A * K * B, "linear combination");
  Vector out = Vector::Zero(N * A * K * B);
  double norm_alpha = 0.0;
  for (double al : alphas)
    norm_alpha += al;
  std::vector<CostTree> children;
  Matrix target = Matrix::Zero(N, N);
  bool have_target = true;
  double err = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto &o = terms[k];
    const double w = std::sqrt(alphas[k] / norm_alpha);
    const Eigen::Index Ak = pow2(o.block_ancillas()), Bk = pow2(o.purifying_ancillas());
    const Eigen::Index ashift = A / Ak, bshift = B / Bk;
    for (Eigen::Index s = 0; s < N; ++s)
      for (Eigen::Index i = 0; i < Ak; ++i)
        for (Eigen::Index j = 0; j < Bk; ++j)
          out(((s * A + i * ashift) * K + static_cast<Eigen::Index>(k)) * B + j * bshift) =
              w * o.state()((s * Ak + i) * Bk + j);
    if (o.cost()->label != "query zero")
      children.push_back(o.cost());
    if (o.target()) {
      target += alphas[k] * *o.target();
      err += alphas[k] * o.declared_error();
    } else {
      have_target = false;
    }
  }
  Cost local = gates("K", static_cast<double>(K));
  CostTree cost = make_cost("linear combination", local, children);
  PurifiedAccessOracle res(std::move(out), n, a, m + b, cost,
                           {"linear combination of subnormalized density operators",
                            {{"terms", static_cast<double>(terms.size())}}});
  res.declare(da, m + db);
  if (have_target)
    res.with_target(target, err);
  return res;
}

UnitaryBlockEncoding lcu(const StatePreparationPair &pair,
                         const std::vector<UnitaryBlockEncoding> &encodings) {
  pair.validate();
  if (encodings.empty() || static_cast<Eigen::Index>(encodings.size()) != pair.coefficients.size())
    throw ValidationError("lcu: encoding count must match coefficient count");
  const int n = encodings[0].system_qubits();
  const double alpha = encodings[0].scale();
  int a = 0, da = 0;
  double eps2 = 0.0;
  for (const auto &e : encodings) {
    if (e.system_qubits() != n)
      throw ValidationError("lcu: system dimensions differ");
    if (std::abs(e.scale() - alpha) > 1e-12 * std::max(1.0, alpha))
      throw ValidationError("lcu: encodings must share one scale");
    a = std::max(a, e.ancillas());
    da = std::max(da, e.declared_ancillas());
    eps2 = std::max(eps2, e.declared_error());
  }
  const int bq = pair.qubits();
  const Eigen::Index N = pow2(n), A = pow2(a), K = pow2(bq), R = N * A;
  check_dimension(R * K, "lcu");
  // Selection: |k⟩⟨k| ⊗ U_k (ancillas padded to a, identity on unused k).
  Matrix sel = Matrix::Zero(R * K, R * K);
  for (Eigen::Index k = 0; k < K; ++k) {
    Matrix uk = k < static_cast<Eigen::Index>(encodings.size())
                    ? kron(encodings[k].unitary(),
                           Matrix::Identity(pow2(a - encodings[k].ancillas()),
                                            pow2(a - encodings[k].ancillas())))
                    : Matrix::Identity(R, R);
    for (Eigen::Index r1 = 0; r1 < R; ++r1)
      for (Eigen::Index r2 = 0; r2 < R; ++r2)
        sel(r1 * K + k, r2 * K + k) = uk(r1, r2);
  }
  Matrix I = Matrix::Identity(R, R);
  Matrix w = kron(I, pair.left.adjoint()) * sel * kron(I, pair.right);
  std::vector<CostTree> children;
  for (const auto &e : encodings)
    children.push_back(e.cost());
  Cost local;
  local.gates = GateExpression::symbol("b", bq) * GateExpression::symbol("b", bq);
  local.controlled = static_cast<double>(encodings.size());
  CostTree cost = make_cost("lcu", local, children);
  UnitaryBlockEncoding res(std::move(w), n, a + bq, alpha * pair.norm_bound,
                           alpha * pair.declared_error + alpha * pair.norm_bound * eps2, cost,
                           {"linear combination of unitaries", {{"beta", pair.norm_bound}}});
  res.declare(da + bq);
  bool have_target = true;
  Matrix target = Matrix::Zero(N, N);
  for (std::size_t k = 0; k < encodings.size(); ++k) {
    if (!encodings[k].target()) {
      have_target = false;
      break;
    }
    target += pair.coefficients(static_cast<Eigen::Index>(k)) * *encodings[k].target();
  }
  if (have_target)
    res.with_target(target, "linear combination");
  return res;
}

} // namespace qbe
