// spectral.hpp — non-Hermitian spectra, PT pairing, breaking-transition scan, V matrix

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptliou/model.hpp"
#include "ptliou/superop.hpp"

namespace ptl {

inline constexpr double kTolIm = 1e-8;
inline constexpr double kTolDeg = 1e-9;

class SpectralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sorts by real part, then by imaginary part within runs whose real parts
/// agree to `cluster_tol` (absolute).
void canonical_sort(std::vector<cplx>& values, double cluster_tol);

/// All eigenvalues of a dense matrix in canonical order.
std::vector<cplx> eigenvalues(const ComplexMatrix& m);
std::vector<cplx> eigen_spectrum(const SuperOp& s);

struct PairingReport {
    bool pass = false;
    double max_distance = 0.0;
    std::vector<std::size_t> partner;  // partner[i] is the index matched to value i
};

/// Greedy nearest matching of each λ to some −conj(λ′).
PairingReport check_pt_pairing(std::span<const cplx> eigs, double tol);
/// Greedy nearest matching of each λ to some conj(λ′).
PairingReport check_conjugation_closure(std::span<const cplx> eigs, double tol);

struct EnergyEigenbasis {
    Eigen::VectorXd energies;  // ascending
    ComplexMatrix vectors;     // column j is ψ_j
    std::vector<int> omega;    // W-parities; empty unless resolved
};

/// Eigenbasis of H. With `resolve_w`, degenerate clusters are rotated so that
/// each ψ_j is also an eigenvector of W (requires [H,W] = 0).
EnergyEigenbasis hamiltonian_eigenbasis(const Model& model, bool resolve_w);

struct NondegeneracyReport {
    bool pass = false;
    double min_energy_gap = 0.0;     // smallest gap between sorted energies
    double min_frequency_gap = 0.0;  // smallest gap between sorted Bohr frequencies E_j − E_k, j ≠ k
    double tolerance = 0.0;          // absolute: tol_deg × spectral range
};

NondegeneracyReport check_nondegeneracy(std::span<const double> energies, double tol_deg = kTolDeg);
NondegeneracyReport check_nondegeneracy(const EnergyEigenbasis& basis, double tol_deg = kTolDeg);

struct SpectrumResult {
    int n = 1;
    double lambda = 1.0;
    double sum_c = 0.0;
    std::vector<cplx> liouvillian;  // eig(L̂), canonical order
    std::vector<cplx> shifted;      // eig(L̂′), canonical order
    double shift_deviation = 0.0;   // max |eig(L̂′)_i − eig(L̂)_i − Σc|
    double frobenius_shifted = 0.0; // ‖L̂′‖_F
};

/// Spectra of L̂ and L̂′ = L̂ + Σc_m for the model as given (λ is recorded only).
SpectrumResult compute_spectrum(const Model& model, double lambda = 1.0);

enum class PtPhase { Unbroken, Broken };

std::string to_string(PtPhase p);

struct Classification {
    PtPhase phase = PtPhase::Broken;
    std::size_t n_imag_axis = 0;
    std::size_t required = 0;  // N² − N
    double threshold = 0.0;    // tol_im × max(1, ‖L̂′‖_F)
};

/// UNBROKEN iff at least N² − N eigenvalues of L̂′ lie within the threshold of the imaginary axis.
Classification classify(std::span<const cplx> shifted_eigs, int n, double frobenius, double tol_im);
Classification classify(const Model& model, double tol_im = kTolIm);

struct ScanOptions {
    double lambda_min = 1e-3;
    double lambda_max = 10.0;
    double resolution = 1e-6;
    double tol_im = kTolIm;
    int grid_points = 17;
};

struct ScanProbe {
    double lambda = 0.0;
    std::size_t n_imag_axis = 0;
    PtPhase phase = PtPhase::Broken;
};

struct ScanResult {
    std::vector<ScanProbe> probes;  // ascending λ
    std::optional<double> gamma_pt;
    std::optional<std::pair<double, double>> bracket;
};

/// Locates the first phase change of L̂′(λ) in [λ_min, λ_max], where λ scales every channel
/// of the model built from `spec`. Throws SpectralError if the Lemma does not certify at λ = 1.
ScanResult scan_pt_breaking(const ModelSpec& spec, const ScanOptions& options);
ScanResult scan_pt_breaking(const Model& base, const ScanOptions& options);

struct UniformRateReport {
    bool pass = false;
    double rate = 0.0;           // Σ c_m
    double max_deviation = 0.0;  // max |Re λ + Σc_m| over matched coherence eigenvalues of L̂
    std::vector<cplx> coherence_eigenvalues;
};

/// Throws SpectralError when the model is in the broken phase.
UniformRateReport check_uniform_rate(const Model& model, double tol_im = kTolIm);

struct BohrMatch {
    bool ok = false;
    double residual = 0.0;   // max |Im λ − (E_k − E_j)| over coherence pairs
    double threshold = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (j, k), j ≠ k
    std::vector<cplx> eigenvalues;                            // eigenvalue of L̂ assigned to pairs[i]
};

/// Assigns the eigenvalues of L̂ to ordered energy pairs by minimal total frequency mismatch.
/// The default threshold is half the smallest gap between distinct Bohr frequencies (including 0).
BohrMatch match_bohr_frequencies(const Model& model, const EnergyEigenbasis& basis,
                                 std::optional<double> threshold = std::nullopt);

struct VMatrix {
    Eigen::MatrixXd v;  // V_jk = Σ_m |⟨ψ_j|L_m|ψ_k⟩|²
    double asymmetry = 0.0;
};

VMatrix v_matrix(const Model& model, const EnergyEigenbasis& basis);

}  // namespace ptl
