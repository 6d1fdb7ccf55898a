/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Eigenvalue transformations of block-encodings.
//
// QSVT is realized semantically: the transformed block P(A) is computed with a
// spectral matrix function of the realized block and re-dilated to a unitary.
// Phase factors are never synthesized. Query accounting, declared errors and
// provenance follow the circuit constructions.

#include "qbe/encodings.hpp"
#include "qbe/polyapprox.hpp"

namespace qbe {

/// Declared precision of a realized QSVT circuit.
inline constexpr double kQsvtPrecision = 1e-12;

/// Chebyshev product P·Q (exact; evaluated through DCTs).
PolyPtr multiply(const PolyPtr &p, const PolyPtr &q, const std::string &name = "product");

/// (1, a+2, δ)-block-encoding of P(A) from a (1, a, 0)-block-encoding of
/// Hermitian A. Charges d queries, 1 controlled query and (a+1)d gates.
UnitaryBlockEncoding qsvt_unitary(const UnitaryBlockEncoding &u, const PolyPtr &p,
                                  double precision = kQsvtPrecision);

/// Prepares A·P(A)² from a preparation of A.
PurifiedAccessOracle qsvt_density(const PurifiedAccessOracle &oracle, const PolyPtr &p,
                                  double precision = kQsvtPrecision);

/// A·f(A)² through P certified against f on [δ, 1]; the declared error is the
/// case bound evaluated from the certification record.
PurifiedAccessOracle transform_with_target(const PurifiedAccessOracle &oracle,
                                           const std::function<double(double)> &f,
                                           const PolyPtr &p, double delta,
                                           double precision = kQsvtPrecision);

/// Prepares B with 4δ^{c−1}·B ≈ A^c. The scale is recorded in the provenance
/// ("scale") and the target is the scaled operator δ^{1−c}A^c/4.
PurifiedAccessOracle positive_power_density(const PurifiedAccessOracle &oracle, double c,
                                            double delta, double epsilon);

/// (2, ·, ·)-block-encoding of |A|^c as the product of the P and R transforms.
UnitaryBlockEncoding positive_power_unitary(const UnitaryBlockEncoding &u, double c, double delta,
                                            double epsilon);

/// Prepares B = A·Q(A)², Q = P·R, sandwiched between scaled support projectors.
PurifiedAccessOracle eigenvalue_threshold_projector(const PurifiedAccessOracle &oracle,
                                                    double delta, double epsilon);

/// Sandwich coefficients (lower, upper) of the threshold projector.
std::pair<double, double> threshold_sandwich_coefficients(double delta, double epsilon);

struct SandwichCheck {
  double lower_gap = 0.0; // min eig(B − lower·Π_{supp_{2δ}(A)})
  double upper_gap = 0.0; // min eig(upper·Π_{supp(A)} − B)
  double tolerance = 0.0;
  bool holds = false;
};

/// Spectral check of both orderings, tolerance 1e−8·max(1, ‖B‖).
SandwichCheck check_threshold_sandwich(const Matrix &a, const Matrix &b, double delta,
                                       double epsilon);

/// PSD ordering lo ≤ hi as min-eigenvalue(hi − lo) ≥ −1e−8·max(1, ‖hi‖).
bool psd_leq(const Matrix &lo, const Matrix &hi);

} // namespace qbe
