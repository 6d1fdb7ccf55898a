/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Block-encoding calculus over purified access.
//
// Register convention (fixed everywhere): system register first (most
// significant), block ancillas second, purifying ancillas last. A basis index
// is ((s · 2^a) + i) · 2^b + j, and every block projection keeps i = 0.
//
// Objects carry a *realized* matrix (the unitary or the prepared state, on the
// registers actually materialized) and a *declared* contract: the ancilla
// counts the construction would use as a circuit, the scale and error bound,
// and a cost tree. `compacted()` re-realizes the same encoded operator on the
// fewest registers while keeping the declared contract and cost.

#include "qbe/ledger.hpp"
#include "qbe/numerics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qbe {

/// Which named construction produced an object, with its parameters.
struct Provenance {
  std::string source;
  std::map<std::string, double> parameters;
};

class SubnormalizedDensityOperator {
public:
  explicit SubnormalizedDensityOperator(Matrix m);

  const Matrix &matrix() const { return m_; }
  int system_qubits() const { return n_; }
  Eigen::Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

private:
  Matrix m_;
  int n_;
};

class PurifiedAccessOracle {
public:
  /// `state` is U|0⟩ on n + a + b qubits in the register convention above.
  PurifiedAccessOracle(Vector state, int system_qubits, int block_ancillas,
                       int purifying_ancillas, CostTree cost, Provenance provenance = {});

  int system_qubits() const { return n_; }
  int block_ancillas() const { return a_; }
  int purifying_ancillas() const { return b_; }
  Eigen::Index system_dim() const { return Eigen::Index(1) << n_; }

  /// Ancilla counts of the construction as a circuit (per the lemmas).
  int declared_block_ancillas() const { return declared_a_; }
  int declared_purifying_ancillas() const { return declared_b_; }
  PurifiedAccessOracle &declare(int block_ancillas, int purifying_ancillas);

  double declared_error() const { return declared_error_; }
  const std::optional<Matrix> &target() const { return target_; }
  PurifiedAccessOracle &with_target(Matrix target, double declared_error);

  const Vector &state() const { return state_; }
  /// A unitary whose first column is the prepared state (Householder completion).
  Matrix unitary() const;
  /// tr_b |ρ⟩⟨ρ| on n + a qubits.
  Matrix reduced_state() const;
  /// ⟨0|_a tr_b(|ρ⟩⟨ρ|) |0⟩_a.
  Matrix encoded() const;
  /// Probability that the block ancillas read 0, i.e. tr(encoded()).
  double amplitude() const;

  const CostTree &cost() const { return cost_; }
  const Provenance &provenance() const { return provenance_; }

  /// Same encoded operator re-purified on the smallest registers.
  PurifiedAccessOracle compacted() const;

  /// ‖encoded − target‖ when a target is attached.
  std::optional<double> contract_defect() const;

private:
  Vector state_;
  int n_, a_, b_;
  int declared_a_, declared_b_;
  double declared_error_ = 0.0;
  std::optional<Matrix> target_;
  CostTree cost_;
  Provenance provenance_;
};

class UnitaryBlockEncoding {
public:
  UnitaryBlockEncoding(Matrix unitary, int system_qubits, int ancillas, double scale,
                       double declared_error, CostTree cost, Provenance provenance = {});

  const Matrix &unitary() const { return u_; }
  int system_qubits() const { return n_; }
  int ancillas() const { return a_; }
  Eigen::Index system_dim() const { return Eigen::Index(1) << n_; }
  int declared_ancillas() const { return declared_a_; }
  UnitaryBlockEncoding &declare(int ancillas);

  double scale() const { return scale_; }
  double declared_error() const { return declared_error_; }
  const std::optional<Matrix> &target() const { return target_; }
  const std::string &description() const { return description_; }
  UnitaryBlockEncoding &with_target(Matrix target, std::string description = {});

  /// ⟨0|_a U |0⟩_a.
  Matrix block() const;
  /// Columns of U with ancilla input 0: an (N·2^a) × N isometry.
  Matrix input_columns() const;
  /// ‖α·block − target‖ when a target is attached.
  std::optional<double> contract_defect() const;
  /// Throws ValidationError if the attached target violates the contract.
  void check_contract(double slack = 1e-8) const;

  const CostTree &cost() const { return cost_; }
  const Provenance &provenance() const { return provenance_; }

  /// Same block re-dilated on a single ancilla qubit.
  UnitaryBlockEncoding compacted() const;

private:
  Matrix u_;
  int n_, a_;
  int declared_a_;
  double scale_, declared_error_;
  std::optional<Matrix> target_;
  std::string description_;
  CostTree cost_;
  Provenance provenance_;
};

struct StatePreparationPair {
  Matrix left;  // P_L on b qubits
  Matrix right; // P_R on b qubits
  Vector coefficients;
  double norm_bound = 1.0;
  double declared_error = 0.0;

  int qubits() const { return qubits_for(left.rows()); }
  /// Σ_j |β c_j* d_j − y_j| plus the mass of c_j* d_j beyond y.
  double defect() const;
  void validate() const;

  /// The (HX, H) pair: a (2, 1, 0) pair for y = (1, −1).
  static StatePreparationPair difference();
  /// Generic pair for arbitrary y: P_R prepares √|y_j|/√‖y‖₁, P_L adds phases.
  static StatePreparationPair for_coefficients(const Vector &y);
};

/// Unitary whose first column is `v` (normalized), via a Householder reflection.
Matrix unitary_with_first_column(const Vector &v);

/// Tolerance-aware spectral norm check plus singular-value clamp.
Matrix clamp_to_contraction(const Matrix &m, double tol = 1e-9);

PurifiedAccessOracle purification_of(const SubnormalizedDensityOperator &a,
                                     const std::string &oracle = "rho");

enum class DensityBlockVariant {
  Compact, // exact dilation of the encoded block, one realized ancilla
  Literal, // swap construction through U, U† (small sizes only)
};

UnitaryBlockEncoding block_encode_density(const PurifiedAccessOracle &oracle,
                                          DensityBlockVariant variant = DensityBlockVariant::Compact);

/// Prepares B A B† where B is the realized block of `v`; the target uses
/// target(v)/scale(v) in place of B.
PurifiedAccessOracle evolve(const PurifiedAccessOracle &oracle, const UnitaryBlockEncoding &v);

PurifiedAccessOracle embed(const PurifiedAccessOracle &oracle, int extra_qubits);

UnitaryBlockEncoding product(const UnitaryBlockEncoding &u, const UnitaryBlockEncoding &v);

/// Σ α_k A_k with a preparation V|0⟩ = Σ √α_k |k⟩ built from `alphas`.
PurifiedAccessOracle linear_combination_density(const RealVector &alphas,
                                                const std::vector<PurifiedAccessOracle> &oracles);
/// Same, with the preparation given as an m-qubit unitary.
PurifiedAccessOracle linear_combination_density(const Matrix &prep,
                                                const std::vector<PurifiedAccessOracle> &oracles);

UnitaryBlockEncoding lcu(const StatePreparationPair &pair,
                         const std::vector<UnitaryBlockEncoding> &encodings);

/// [[M, √(I−MM†)], [√(I−M†M), −M†]] re-indexed so the extra qubit is the
/// least significant (block-ancilla) register.
UnitaryBlockEncoding dilate(const Matrix &m);

/// ‖U†U − I‖.
double unitarity_defect(const Matrix &u);

} // namespace qbe
