// model.hpp — dephasing and injection/absorption qubit models and their JSON input

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ptliou/pauli.hpp"

namespace ptl {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Coupling {
    int i = 0;
    int j = 0;
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
};

struct Dephasing {
    std::vector<cplx> gammas;
};

struct Injection {
    std::vector<cplx> a;
    std::vector<cplx> b;
};

/// Explicit operators layered on top of (or replacing) a family model.
struct CustomTerms {
    std::optional<PauliOperator> h_extra;       // added to H
    std::vector<PauliOperator> extra_channels;  // appended after family channels
    std::optional<PauliOperator> u;             // overrides the family U
    std::optional<PauliOperator> w;             // overrides the family W
};

struct ModelSpec {
    int n = 1;
    std::vector<Coupling> couplings;
    std::vector<double> fields_x;  // empty means all zero
    std::variant<std::monostate, Dephasing, Injection> noise;
    double scale = 1.0;
    std::optional<CustomTerms> custom;
};

enum class Family { Example1, Example2, Custom };

std::string to_string(Family f);

struct Model {
    int n = 1;
    PauliOperator hamiltonian;
    std::vector<PauliOperator> lindblads;
    PauliOperator u;
    PauliOperator w;
    /// Identity component of {L_m, L_m†}; equals c_m whenever that anticommutator is c_m·𝟙.
    std::vector<double> c;
    Family family = Family::Custom;

    std::size_t num_channels() const { return lindblads.size(); }
    std::size_t dim() const { return std::size_t{1} << n; }
    double sum_c() const;
};

/// Validates index ranges, duplicate pairs and list lengths. Throws SpecError.
void validate(const ModelSpec& spec);

/// Dephasing family: H = Σ J·σσ + Σ h_j σˣ_j, L_j = λγ_j σᶻ_j, U = ∏σˣ, W = 𝟙.
Model build_example1(const ModelSpec& spec);

/// Injection family: L_{2j-1} = λa_j σ⁺_j, L_{2j} = λb_j σ⁻_j, U = ∏σʸ, W = ∏σˣ.
Model build_example2(const ModelSpec& spec);

/// Dispatches on the noise kind and applies any custom section.
Model build_model(const ModelSpec& spec);

/// Assembles a model from explicit operators; c is derived from the channels.
Model make_custom_model(PauliOperator h, std::vector<PauliOperator> lindblads,
                        PauliOperator u, PauliOperator w);

/// Multiplies every channel by λ (c by λ²); λ = 0 drops all channels.
Model scale_noise(const Model& model, double lambda);

/// Heisenberg-type coupling part Σ_{(j,k)} Jˣσˣσˣ + Jʸσʸσʸ + Jᶻσᶻσᶻ.
PauliOperator coupling_hamiltonian(int n, const std::vector<Coupling>& couplings);

/// Identity coefficient of {L, L†}.
double channel_constant(const PauliOperator& l);

ModelSpec parse_model_config(std::istream& in);
ModelSpec parse_model_config(const std::string& text);

}  // namespace ptl
