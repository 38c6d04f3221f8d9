#include "ptliou/lemma.hpp"

#include <algorithm>
#include <map>

namespace ptl {

namespace {

double norm_of(const PauliOperator& op) { return op.max_abs_coeff(); }

double involution_residual(const PauliOperator& op) {
    return norm_of(op * op - PauliOperator::identity(op.num_qubits()));
}

double unitarity_residual(const PauliOperator& op) {
    return norm_of(op * dagger(op) - PauliOperator::identity(op.num_qubits()));
}

// Coordinates of a set of operators in the span of the Pauli strings they use.
class CoefficientSpace {
public:
    void add(const PauliOperator& op) {
        for (const auto& [s, c] : op.terms()) index_.try_emplace(s, index_.size());
    }
    Eigen::Index size() const { return static_cast<Eigen::Index>(index_.size()); }
    Eigen::VectorXcd coords(const PauliOperator& op) const {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size());
        for (const auto& [s, c] : op.terms()) v(static_cast<Eigen::Index>(index_.at(s))) = c;
        return v;
    }

private:
    std::map<PauliString, std::size_t> index_;
};

}  // namespace

double ConditionI::max_residual() const {
    return std::max({u_unitarity, u_involution, w_unitarity, w_involution, comm_hu, comm_hw});
}

std::string to_string(ReflectionStatus s) {
    switch (s) {
        case ReflectionStatus::Certified: return "certified";
        case ReflectionStatus::Underdetermined: return "underdetermined";
        case ReflectionStatus::FitFailed: return "fit_failed";
        case ReflectionStatus::NotReal: return "not_real";
        case ReflectionStatus::NotReflection: return "not_reflection";
    }
    return "unknown";
}

ConditionI check_condition_i(const Model& model, double tol) {
    ConditionI r;
    r.u_unitarity = unitarity_residual(model.u);
    r.u_involution = involution_residual(model.u);
    r.w_unitarity = unitarity_residual(model.w);
    r.w_involution = involution_residual(model.w);
    r.comm_hu = norm_of(commutator(model.hamiltonian, model.u));
    r.comm_hw = norm_of(commutator(model.hamiltonian, model.w));
    r.pass = r.max_residual() < tol;
    return r;
}

ConditionII solve_reflection_matrix(const Model& model, double tol) {
    ConditionII r;
    const auto m_count = static_cast<Eigen::Index>(model.num_channels());
    if (m_count == 0) {
        r.pass = true;
        r.status = ReflectionStatus::Certified;
        r.reflection = ReflectionMatrix{Eigen::MatrixXd(0, 0), 0.0, 0.0};
        r.min_gram_ratio = 1.0;
        return r;
    }

    // U L_m = −Σ Z L†_{m'} U  ⇔  −U L_m U = Σ Z L†_{m'}  (U² = 𝟙); likewise W L_m W = Σ Z L†_{m'}.
    std::vector<PauliOperator> adjoints, u_side, w_side;
    CoefficientSpace space;
    for (const auto& l : model.lindblads) {
        adjoints.push_back(dagger(l));
        u_side.push_back(-(model.u * l * model.u));
        w_side.push_back(model.w * l * model.w);
        space.add(adjoints.back());
        space.add(u_side.back());
        space.add(w_side.back());
    }

    const Eigen::Index k = space.size();
    Eigen::MatrixXcd basis(k, m_count);
    for (Eigen::Index m = 0; m < m_count; ++m) basis.col(m) = space.coords(adjoints[static_cast<std::size_t>(m)]);

    const Eigen::MatrixXcd gram = basis.adjoint() * basis;
    const Eigen::VectorXd gram_eigs = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gram).eigenvalues();
    r.min_gram_ratio = gram_eigs.maxCoeff() > 0.0 ? gram_eigs.minCoeff() / gram_eigs.maxCoeff() : 0.0;
    if (r.min_gram_ratio < kTolGramRank) {
        r.status = ReflectionStatus::Underdetermined;
        return r;
    }

    // One Z shared by both relations: stack the two coefficient systems.
    Eigen::MatrixXcd design(2 * k, m_count);
    design << basis, basis;
    Eigen::MatrixXcd rhs(2 * k, m_count);
    for (Eigen::Index m = 0; m < m_count; ++m) {
        const auto idx = static_cast<std::size_t>(m);
        rhs.col(m) << space.coords(u_side[idx]), space.coords(w_side[idx]);
    }
    // Column m of the solution holds row m of Z.
    const Eigen::MatrixXcd z_complex = design.colPivHouseholderQr().solve(rhs).transpose();
    r.max_imag = z_complex.imag().cwiseAbs().maxCoeff();
    const Eigen::MatrixXd z = z_complex.real();

    // Fit with the complex solution so that a consistent but complex Z reports as not real.
    double fit = 0.0;
    for (Eigen::Index m = 0; m < m_count; ++m) {
        PauliOperator combo(static_cast<std::size_t>(model.n));
        for (Eigen::Index mp = 0; mp < m_count; ++mp)
            combo += adjoints[static_cast<std::size_t>(mp)] * z_complex(m, mp);
        const auto idx = static_cast<std::size_t>(m);
        fit = std::max({fit, norm_of(u_side[idx] - combo), norm_of(w_side[idx] - combo)});
    }
    r.fit_residual = fit;

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m_count, m_count);
    ReflectionMatrix refl{z, (z.transpose() * z - id).cwiseAbs().maxCoeff(), (z * z - id).cwiseAbs().maxCoeff()};
    r.reflection = refl;

    if (r.fit_residual >= tol) {
        r.status = ReflectionStatus::FitFailed;
    } else if (r.max_imag >= tol) {
        r.status = ReflectionStatus::NotReal;
    } else if (refl.residual_orth >= tol || refl.residual_invol >= tol) {
        r.status = ReflectionStatus::NotReflection;
    } else {
        r.status = ReflectionStatus::Certified;
        r.pass = true;
    }
    return r;
}

ConditionIII check_condition_iii(const Model& model, double tol) {
    ConditionIII r;
    r.pass = true;
    const auto n = static_cast<std::size_t>(model.n);
    for (std::size_t m = 0; m < model.lindblads.size(); ++m) {
        const auto& l = model.lindblads[m];
        const PauliOperator ac = anticommutator(l, dagger(l));
        const cplx c = ac.coeff(PauliString(n));
        const PauliOperator rest = ac - PauliOperator::identity(n, c);
        const auto exact = as_identity_multiple(ac);
        const double residual = (exact ? 0.0 : norm_of(rest)) + std::abs(c.imag());
        r.c.push_back(c.real());
        r.residuals.push_back(residual);
        if (residual >= tol && r.pass) {
            r.pass = false;
            r.offending_channel = m;
            r.leftover = rest;
        }
    }
    return r;
}

LemmaReport check_lemma(const Model& model, double tol) {
    LemmaReport report;
    report.cond_i = check_condition_i(model, tol);
    report.cond_ii = solve_reflection_matrix(model, tol);
    report.cond_iii = check_condition_iii(model, tol);
    report.overall = report.cond_i.pass && report.cond_ii.pass && report.cond_iii.pass;
    return report;
}

}  // namespace ptl
