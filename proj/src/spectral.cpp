#include "ptliou/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "ptliou/lemma.hpp"

namespace ptl {

namespace {

// Greedy matching of values[i] to target(values[j]); each j is used once.
template <typename Target>
PairingReport greedy_pairing(std::span<const cplx> values, double tol, Target target) {
    PairingReport r;
    const std::size_t n = values.size();
    r.partner.assign(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = std::abs(values[i] - target(values[j]));
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        r.partner[i] = best_j;
        r.max_distance = std::max(r.max_distance, best);
    }
    r.pass = r.max_distance < tol;
    return r;
}

// Minimum-cost perfect assignment on a square cost matrix (Hungarian method,
// potentials formulation). Returns row → column.
std::vector<std::size_t> min_cost_assignment(const Eigen::MatrixXd& cost) {
    const auto n = static_cast<std::size_t>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) -
                                   u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

double spectral_scale(std::span<const cplx> values) {
    double m = 1.0;
    for (const auto& z : values) m = std::max(m, std::abs(z));
    return m;
}

std::size_t coherence_count(int n) {
    const std::size_t d = std::size_t{1} << n;
    return d * d - d;
}

}  // namespace

void canonical_sort(std::vector<cplx>& values, double cluster_tol) {
    std::sort(values.begin(), values.end(), [](const cplx& a, const cplx& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    auto first = values.begin();
    while (first != values.end()) {
        auto last = std::next(first);
        while (last != values.end() && last->real() - std::prev(last)->real() <= cluster_tol) ++last;
        std::sort(first, last, [](const cplx& a, const cplx& b) { return a.imag() < b.imag(); });
        first = last;
    }
}

std::vector<cplx> eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix is not square");
    if (!m.allFinite()) throw SpectralError("eigenvalues: matrix has non-finite entries");
    std::vector<cplx> out;
    if (m.rows() == 0) return out;
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw SpectralError("eigenvalues: solver did not converge");
    out.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    canonical_sort(out, 1e-9 * spectral_scale(out));
    return out;
}

std::vector<cplx> eigen_spectrum(const SuperOp& s) { return eigenvalues(s.mat); }

PairingReport check_pt_pairing(std::span<const cplx> eigs, double tol) {
    return greedy_pairing(eigs, tol, [](const cplx& z) { return -std::conj(z); });
}

PairingReport check_conjugation_closure(std::span<const cplx> eigs, double tol) {
    return greedy_pairing(eigs, tol, [](const cplx& z) { return std::conj(z); });
}

EnergyEigenbasis hamiltonian_eigenbasis(const Model& model, bool resolve_w) {
    const ComplexMatrix h = pauli_to_dense(model.hamiltonian, model.n);
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
        throw SpectralError("hamiltonian_eigenbasis: H is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw SpectralError("hamiltonian_eigenbasis: solver did not converge");

    EnergyEigenbasis basis{solver.eigenvalues(), solver.eigenvectors(), {}};
    if (!resolve_w) return basis;

    if (commutator(model.hamiltonian, model.w).max_abs_coeff() > kTolCert) {
        throw SpectralError("hamiltonian_eigenbasis: [H, W] != 0, cannot resolve W-parities");
    }
    const ComplexMatrix w = pauli_to_dense(model.w, model.n);
    const Eigen::Index d = h.rows();
    const double range = basis.energies(d - 1) - basis.energies(0);
    const double cluster_tol = 1e-8 * std::max(1.0, range);

    basis.omega.assign(static_cast<std::size_t>(d), 0);
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index stop = start + 1;
        while (stop < d && basis.energies(stop) - basis.energies(stop - 1) <= cluster_tol) ++stop;
        const Eigen::Index size = stop - start;
        const ComplexMatrix block = basis.vectors.middleCols(start, size);
        const ComplexMatrix w_restricted = block.adjoint() * w * block;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> wsolver(0.5 * (w_restricted + w_restricted.adjoint()));
        basis.vectors.middleCols(start, size) = block * wsolver.eigenvectors();
        for (Eigen::Index k = 0; k < size; ++k) {
            const Eigen::Index j = start + k;
            const int omega = wsolver.eigenvalues()(k) >= 0.0 ? 1 : -1;
            const double err = (w * basis.vectors.col(j) - double(omega) * basis.vectors.col(j)).norm();
            if (err > 1e-8) throw SpectralError("hamiltonian_eigenbasis: W is not a parity on an energy cluster");
            basis.omega[static_cast<std::size_t>(j)] = omega;
        }
        start = stop;
    }
    return basis;
}

NondegeneracyReport check_nondegeneracy(std::span<const double> energies, double tol_deg) {
    NondegeneracyReport r;
    std::vector<double> e(energies.begin(), energies.end());
    std::sort(e.begin(), e.end());
    const double inf = std::numeric_limits<double>::infinity();
    r.min_energy_gap = inf;
    r.min_frequency_gap = inf;
    if (e.size() < 2) {
        r.pass = true;
        return r;
    }
    const double range = e.back() - e.front();
    r.tolerance = tol_deg * range;
    for (std::size_t j = 1; j < e.size(); ++j) r.min_energy_gap = std::min(r.min_energy_gap, e[j] - e[j - 1]);

    std::vector<double> freqs;
    freqs.reserve(e.size() * (e.size() - 1));
    for (std::size_t j = 0; j < e.size(); ++j) {
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (j != k) freqs.push_back(e[j] - e[k]);
        }
    }
    std::sort(freqs.begin(), freqs.end());
    for (std::size_t j = 1; j < freqs.size(); ++j) {
        r.min_frequency_gap = std::min(r.min_frequency_gap, freqs[j] - freqs[j - 1]);
    }
    r.pass = range > 0.0 && r.min_energy_gap > r.tolerance && r.min_frequency_gap > r.tolerance;
    return r;
}

NondegeneracyReport check_nondegeneracy(const EnergyEigenbasis& basis, double tol_deg) {
    return check_nondegeneracy(std::span<const double>(basis.energies.data(),
                                                       static_cast<std::size_t>(basis.energies.size())),
                               tol_deg);
}

SpectrumResult compute_spectrum(const Model& model, double lambda) {
    SpectrumResult r;
    r.n = model.n;
    r.lambda = lambda;
    r.sum_c = model.sum_c();
    const SuperOp l = build_liouvillian(model);
    const SuperOp lp = shifted_liouvillian(l, r.sum_c);
    r.frobenius_shifted = lp.mat.norm();
    r.liouvillian = eigen_spectrum(l);
    r.shifted = eigen_spectrum(lp);
    for (std::size_t i = 0; i < r.shifted.size(); ++i) {
        r.shift_deviation = std::max(r.shift_deviation, std::abs(r.shifted[i] - r.liouvillian[i] - r.sum_c));
    }
    return r;
}

std::string to_string(PtPhase p) { return p == PtPhase::Unbroken ? "UNBROKEN" : "BROKEN"; }

Classification classify(std::span<const cplx> shifted_eigs, int n, double frobenius, double tol_im) {
    Classification c;
    c.required = coherence_count(n);
    c.threshold = tol_im * std::max(1.0, frobenius);
    c.n_imag_axis = static_cast<std::size_t>(std::count_if(
        shifted_eigs.begin(), shifted_eigs.end(), [&](const cplx& z) { return std::abs(z.real()) < c.threshold; }));
    c.phase = c.n_imag_axis >= c.required ? PtPhase::Unbroken : PtPhase::Broken;
    return c;
}

Classification classify(const Model& model, double tol_im) {
    const SuperOp lp = shifted_liouvillian(build_liouvillian(model), model.sum_c());
    const auto eigs = eigen_spectrum(lp);
    return classify(eigs, model.n, lp.mat.norm(), tol_im);
}

ScanResult scan_pt_breaking(const ModelSpec& spec, const ScanOptions& options) {
    return scan_pt_breaking(build_model(spec), options);
}

ScanResult scan_pt_breaking(const Model& base, const ScanOptions& options) {
    if (!(options.lambda_min > 0.0) || !(options.lambda_max > options.lambda_min)) {
        throw SpecError("scan: need 0 < lambda_min < lambda_max");
    }
    if (!(options.resolution > 0.0)) throw SpecError("scan: resolution must be positive");
    if (options.grid_points < 2) throw SpecError("scan: need at least two grid points");
    if (!check_lemma(base).overall) throw SpectralError("scan: model is not certified PT-symmetric at lambda = 1");

    auto probe = [&](double lambda) {
        const auto c = classify(scale_noise(base, lambda), options.tol_im);
        return ScanProbe{lambda, c.n_imag_axis, c.phase};
    };

    const auto g = static_cast<std::size_t>(options.grid_points);
    std::vector<double> grid(g);
    for (std::size_t k = 0; k < g; ++k) {
        grid[k] = options.lambda_min + (options.lambda_max - options.lambda_min) * static_cast<double>(k) /
                                           static_cast<double>(g - 1);
    }
    grid.back() = options.lambda_max;

    // Grid points are independent; each task owns its model, matrices and solver.
    std::vector<std::future<ScanProbe>> pending;
    pending.reserve(g);
    for (double lambda : grid) pending.push_back(std::async(std::launch::async, probe, lambda));

    ScanResult result;
    for (auto& f : pending) result.probes.push_back(f.get());

    std::optional<std::size_t> change;
    for (std::size_t k = 1; k < g; ++k) {
        if (result.probes[k].phase != result.probes[k - 1].phase) {
            change = k;
            break;
        }
    }
    if (change) {
        double lo = result.probes[*change - 1].lambda;
        double hi = result.probes[*change].lambda;
        const PtPhase lo_phase = result.probes[*change - 1].phase;
        while (hi - lo >= options.resolution) {
            const double mid = 0.5 * (lo + hi);
            const auto p = probe(mid);
            result.probes.push_back(p);
            (p.phase == lo_phase ? lo : hi) = mid;
        }
        result.gamma_pt = 0.5 * (lo + hi);
        result.bracket = std::make_pair(lo, hi);
    }
    std::sort(result.probes.begin(), result.probes.end(),
              [](const ScanProbe& a, const ScanProbe& b) { return a.lambda < b.lambda; });
    return result;
}

UniformRateReport check_uniform_rate(const Model& model, double tol_im) {
    UniformRateReport r;
    r.rate = model.sum_c();
    const SpectrumResult spec = compute_spectrum(model);
    const auto cls = classify(spec.shifted, model.n, spec.frobenius_shifted, tol_im);
    if (cls.phase != PtPhase::Unbroken) {
        throw SpectralError("check_uniform_rate: model is in the broken phase");
    }

    // The N² − N eigenvalues of L̂′ nearest the imaginary axis are the coherence branch.
    std::vector<cplx> axis = spec.shifted;
    std::stable_sort(axis.begin(), axis.end(),
                     [](const cplx& a, const cplx& b) { return std::abs(a.real()) < std::abs(b.real()); });
    axis.resize(cls.required);

    std::vector<bool> used(spec.liouvillian.size(), false);
    for (const auto& mu : axis) {
        const cplx target = mu - r.rate;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < spec.liouvillian.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(spec.liouvillian[i] - target);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        used[best] = true;
        const cplx lam = spec.liouvillian[best];
        r.coherence_eigenvalues.push_back(lam);
        r.max_deviation = std::max(r.max_deviation, std::abs(lam.real() + r.rate));
    }
    r.pass = r.max_deviation < tol_im;
    return r;
}

BohrMatch match_bohr_frequencies(const Model& model, const EnergyEigenbasis& basis,
                                 std::optional<double> threshold) {
    const auto d = static_cast<std::size_t>(basis.energies.size());
    const auto eigs = eigen_spectrum(build_liouvillian(model));
    const std::size_t total = d * d;
    if (eigs.size() != total) throw DimensionError("match_bohr_frequencies: basis and model disagree on n");

    // Slots are all ordered pairs (j, k); diagonal slots absorb the population branch.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    std::vector<double> freq;
    slots.reserve(total);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            slots.emplace_back(j, k);
            freq.push_back(j == k ? 0.0 : basis.energies(static_cast<Eigen::Index>(k)) -
                                              basis.energies(static_cast<Eigen::Index>(j)));
        }
    }

    Eigen::MatrixXd cost(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    for (std::size_t a = 0; a < total; ++a) {
        for (std::size_t s = 0; s < total; ++s) {
            cost(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(s)) = std::abs(eigs[a].imag() - freq[s]);
        }
    }
    const auto assignment = min_cost_assignment(cost);

    BohrMatch m;
    if (threshold) {
        m.threshold = *threshold;
    } else {
        std::vector<double> distinct = freq;
        std::sort(distinct.begin(), distinct.end());
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < distinct.size(); ++i) {
            const double g = distinct[i] - distinct[i - 1];
            if (g > 1e-12) gap = std::min(gap, g);
        }
        m.threshold = 0.5 * gap;
    }
    std::vector<std::size_t> slot_to_eig(total);
    for (std::size_t a = 0; a < total; ++a) slot_to_eig[assignment[a]] = a;
    for (std::size_t s = 0; s < total; ++s) {
        if (slots[s].first == slots[s].second) continue;
        const cplx lam = eigs[slot_to_eig[s]];
        m.pairs.push_back(slots[s]);
        m.eigenvalues.push_back(lam);
        m.residual = std::max(m.residual, std::abs(lam.imag() - freq[s]));
    }
    m.ok = m.residual <= m.threshold;
    return m;
}

VMatrix v_matrix(const Model& model, const EnergyEigenbasis& basis) {
    const Eigen::Index d = basis.vectors.cols();
    VMatrix out{Eigen::MatrixXd::Zero(d, d), 0.0};
    for (const auto& l_op : model.lindblads) {
        const ComplexMatrix elems = basis.vectors.adjoint() * pauli_to_dense(l_op, model.n) * basis.vectors;
        out.v += elems.cwiseAbs2();
    }
    out.asymmetry = d == 0 ? 0.0 : (out.v - out.v.transpose()).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace ptl
