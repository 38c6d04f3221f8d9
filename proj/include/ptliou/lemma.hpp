// lemma.hpp — algebraic certification of the Liouvillian PT-symmetry conditions
//
// All checks run in the Pauli-string algebra, so their cost depends on the
// number of terms rather than on the Hilbert-space dimension 2^n.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptliou/model.hpp"

namespace ptl {

/// Absolute max-coefficient tolerance for every certified identity.
inline constexpr double kTolCert = 1e-10;
/// Relative eigenvalue threshold on the Gram matrix of {L_m†} below which the channels count as dependent.
inline constexpr double kTolGramRank = 1e-10;

/// U, W unitary involutions commuting with H.
struct ConditionI {
    bool pass = false;
    double u_unitarity = 0.0;   // ‖UU† − 𝟙‖
    double u_involution = 0.0;  // ‖U² − 𝟙‖
    double w_unitarity = 0.0;
    double w_involution = 0.0;
    double comm_hu = 0.0;       // ‖[H,U]‖
    double comm_hw = 0.0;

    double max_residual() const;
};

struct ReflectionMatrix {
    Eigen::MatrixXd z;
    double residual_orth = 0.0;   // ‖ZᵀZ − 𝟙‖_max
    double residual_invol = 0.0;  // ‖Z² − 𝟙‖_max
};

enum class ReflectionStatus { Certified, Underdetermined, FitFailed, NotReal, NotReflection };

std::string to_string(ReflectionStatus s);

/// Real reflection Z intertwining the channels with their adjoints under U and W.
struct ConditionII {
    bool pass = false;
    ReflectionStatus status = ReflectionStatus::FitFailed;
    std::optional<ReflectionMatrix> reflection;  // absent when underdetermined
    double fit_residual = 0.0;
    double max_imag = 0.0;  // largest |Im Z_{m,m'}| of the least-squares solution
    double min_gram_ratio = 0.0;
};

/// Each {L_m, L_m†} is a real multiple of the identity.
struct ConditionIII {
    bool pass = false;
    std::vector<double> c;
    std::vector<double> residuals;  // per channel: non-identity part plus |Im c_m|
    std::optional<std::size_t> offending_channel;
    PauliOperator leftover;         // {L,L†} − c·𝟙 of the first failing channel
};

struct LemmaReport {
    ConditionI cond_i;
    ConditionII cond_ii;
    ConditionIII cond_iii;
    bool overall = false;
};

ConditionI check_condition_i(const Model& model, double tol = kTolCert);
ConditionII solve_reflection_matrix(const Model& model, double tol = kTolCert);
ConditionIII check_condition_iii(const Model& model, double tol = kTolCert);
LemmaReport check_lemma(const Model& model, double tol = kTolCert);

}  // namespace ptl
