#include "ptliou/superop.hpp"

#include <algorithm>
#include <cmath>

#include "ptliou/lemma.hpp"

namespace ptl {

namespace {

void require_square(const ComplexMatrix& m, Eigen::Index d, const char* what) {
    if (m.rows() != d || m.cols() != d) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace

ComplexMatrix pauli_to_dense(const PauliOperator& op) {
    return pauli_to_dense(op, static_cast<int>(op.num_qubits()));
}

ComplexMatrix pauli_to_dense(const PauliOperator& op, int n) {
    if (!op.is_zero() && static_cast<int>(op.num_qubits()) != n) {
        throw DimensionError("pauli_to_dense: qubit count mismatch");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    const cplx i_unit{0.0, 1.0};
    for (const auto& [s, coeff] : op.terms()) {
        // Each string is a signed permutation: column `col` maps to a single row.
        for (Eigen::Index col = 0; col < dim; ++col) {
            Eigen::Index row = col;
            cplx amp = coeff;
            for (int site = 0; site < n; ++site) {
                const Eigen::Index bit = Eigen::Index{1} << (n - 1 - site);
                const bool one = (col & bit) != 0;
                switch (s[static_cast<std::size_t>(site)]) {
                    case Pauli::I: break;
                    case Pauli::X: row ^= bit; break;
                    case Pauli::Y:
                        row ^= bit;
                        amp *= one ? -i_unit : i_unit;
                        break;
                    case Pauli::Z:
                        if (one) amp = -amp;
                        break;
                }
            }
            out(row, col) += amp;
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::VectorXcd vec(const ComplexMatrix& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

ComplexMatrix unvec(const Eigen::VectorXcd& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) throw DimensionError("unvec: length is not a perfect square");
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

SuperOp build_liouvillian(const Model& model) {
    const ComplexMatrix h = pauli_to_dense(model.hamiltonian, model.n);
    const Eigen::Index d = h.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const cplx i_unit{0.0, 1.0};

    SuperOp s{model.n, -i_unit * (kron(id, h) - kron(h.transpose(), id))};
    for (const auto& l_op : model.lindblads) {
        const ComplexMatrix l = pauli_to_dense(l_op, model.n);
        const ComplexMatrix ldl = l.adjoint() * l;
        s.mat += 2.0 * kron(l.conjugate(), l) - kron(id, ldl) - kron(ldl.transpose(), id);
    }
    return s;
}

SuperOp shifted_liouvillian(const SuperOp& liouvillian, double shift) {
    SuperOp s = liouvillian;
    s.mat.diagonal().array() += shift;
    return s;
}

SuperOp build_shifted_liouvillian(const Model& model) {
    const auto cert = check_condition_iii(model);
    if (!cert.pass) {
        throw SpecError("shifted Liouvillian needs {L_m, L_m†} = c_m·𝟙; channel " +
                        std::to_string(*cert.offending_channel) + " fails");
    }
    double shift = 0.0;
    for (double c : cert.c) shift += c;
    return shifted_liouvillian(build_liouvillian(model), shift);
}

SuperOp build_parity_superop(const Model& model) {
    const ComplexMatrix u = pauli_to_dense(model.u, model.n);
    const ComplexMatrix w = pauli_to_dense(model.w, model.n);
    return SuperOp{model.n, kron(w.transpose(), u)};
}

ComplexMatrix apply_liouvillian_direct(const Model& model, const ComplexMatrix& rho) {
    const ComplexMatrix h = pauli_to_dense(model.hamiltonian, model.n);
    require_square(rho, h.rows(), "apply_liouvillian_direct");
    const cplx i_unit{0.0, 1.0};
    ComplexMatrix out = -i_unit * (h * rho - rho * h);
    for (const auto& l_op : model.lindblads) {
        const ComplexMatrix l = pauli_to_dense(l_op, model.n);
        const ComplexMatrix ldl = l.adjoint() * l;
        out += 2.0 * l * rho * l.adjoint() - ldl * rho - rho * ldl;
    }
    return out;
}

double pt_residual(const Model& model) {
    const SuperOp lp = shifted_liouvillian(build_liouvillian(model), model.sum_c());
    const SuperOp p = build_parity_superop(model);
    const double num = (lp.mat * p.mat + p.mat * lp.mat.adjoint()).norm();
    return num / std::max(1.0, lp.mat.norm());
}

}  // namespace ptl
