// superop.hpp — dense Liouvillian, parity superoperator and PT residual
//
// Vectorization stacks columns: vec(AρB) = (Bᵀ ⊗ A)·vec(ρ). Site 0 of a Pauli
// word is the most significant tensor factor.

#pragma once

#include <Eigen/Dense>

#include "ptliou/model.hpp"

namespace ptl {

using ComplexMatrix = Eigen::MatrixXcd;

struct SuperOp {
    int n = 1;
    ComplexMatrix mat;  // 4^n × 4^n
};

ComplexMatrix pauli_to_dense(const PauliOperator& op);
/// As above, but for the zero operator, which carries no qubit count of its own.
ComplexMatrix pauli_to_dense(const PauliOperator& op, int n);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
Eigen::VectorXcd vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const Eigen::VectorXcd& v);

/// Generator of dρ/dt = −i[H,ρ] + Σ_m (2L_mρL_m† − {L_m†L_m, ρ}).
SuperOp build_liouvillian(const Model& model);

/// L̂ + (Σ_m c_m)·Id; throws SpecError unless every {L_m, L_m†} is certified as c_m·𝟙.
SuperOp build_shifted_liouvillian(const Model& model);

/// L̂ + shift·Id for an explicit shift.
SuperOp shifted_liouvillian(const SuperOp& liouvillian, double shift);

/// ρ ↦ UρW, i.e. Wᵀ ⊗ U.
SuperOp build_parity_superop(const Model& model);

/// Evaluates the generator on ρ through ordinary matrix products.
ComplexMatrix apply_liouvillian_direct(const Model& model, const ComplexMatrix& rho);

/// ‖L̂′P̂ + P̂L̂′†‖_F / max(1, ‖L̂′‖_F), with the shift taken from model.c.
double pt_residual(const Model& model);

}  // namespace ptl
