// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptliou/lemma.hpp"
#include "ptliou/spectral.hpp"
#include "ptliou/superop.hpp"

using namespace ptl;
using ptl::testing::Mat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

PauliOperator op(const char* w, cplx c = 1.0) { return PauliOperator(PauliString::parse(w), c); }

/// 50 dephasing and 50 injection models, n cycling through 1..4.
std::vector<Model> positive_corpus() {
    std::mt19937_64 rng(20240601);
    std::vector<Model> out;
    for (int k = 0; k < 50; ++k) out.push_back(build_model(ptl::testing::random_dephasing_spec(rng, 1 + k % 4)));
    for (int k = 0; k < 50; ++k) out.push_back(build_model(ptl::testing::random_injection_spec(rng, 1 + k % 4)));
    return out;
}

struct Violation {
    const char* name;
    Model model;
    bool (*broken)(const LemmaReport&);
};

std::vector<Violation> violations() {
    std::mt19937_64 rng(77);
    Model field = build_model(ptl::testing::random_dephasing_spec(rng, 3));
    field.hamiltonian += op("IZI", 0.4);

    // Dephasing on site 0 gated by the projector onto |0⟩ of site 1, so {L, L†} is not a multiple of 𝟙.
    const PauliOperator gate = op("II", 0.5) + op("IZ", 0.5);
    Model projector = make_custom_model(op("XI") + op("IX", 0.7) + op("XX", 0.5), {op("ZI", 0.6) * gate}, op("XI"), op("II"));

    // σᶻ and σʸ components with a relative phase: no real Z relates L to L†.
    Model phase = make_custom_model(op("X"), {op("Z", 0.5) + op("Y", std::polar(0.5, 0.25 * 3.141592653589793))},
                                    op("X"), op("I"));

    return {
        {"sigma-z field", field, [](const LemmaReport& r) { return !r.cond_i.pass && r.cond_ii.pass && r.cond_iii.pass; }},
        {"projector channel", projector, [](const LemmaReport& r) { return r.cond_i.pass && r.cond_ii.pass && !r.cond_iii.pass; }},
        {"mixed-phase rate", phase, [](const LemmaReport& r) { return r.cond_i.pass && !r.cond_ii.pass && r.cond_iii.pass; }},
    };
}

void criterion_1(const std::vector<Model>& corpus) {
    const auto t0 = Clock::now();
    std::size_t certified = 0;
    double worst = 0.0;
    for (const Model& m : corpus) {
        const auto r = check_lemma(m);
        if (!r.overall || !r.cond_ii.reflection) continue;
        const auto& z = r.cond_ii.reflection->z;
        const double dz = (z - Eigen::MatrixXd::Identity(z.rows(), z.cols())).cwiseAbs().maxCoeff();
        double res = std::max({r.cond_i.max_residual(), r.cond_ii.fit_residual, r.cond_ii.max_imag,
                               r.cond_ii.reflection->residual_orth, r.cond_ii.reflection->residual_invol, dz});
        for (double x : r.cond_iii.residuals) res = std::max(res, x);
        worst = std::max(worst, res);
        if (res < 1e-10) ++certified;
    }
    const double t = seconds_since(t0);
    report(1, certified == corpus.size() && t < 10.0,
           fmt("%.0f/100 certified with Z = 1, max residual %.3g, %.3f s", double(certified), worst, t));
}

void criterion_2(const std::vector<Model>& corpus) {
    double worst = 0.0;
    for (const Model& m : corpus) worst = std::max(worst, pt_residual(m));
    bool pass = worst < 1e-10;
    std::string detail = fmt("corpus max pt_residual %.3g", worst);
    for (const auto& v : violations()) {
        const double r = pt_residual(v.model);
        const bool isolated = v.broken(check_lemma(v.model));
        pass = pass && isolated && r > 1e-3;
        detail += std::string("; ") + v.name + fmt(" %.3g", r) + (isolated ? "" : " (not isolated)");
    }
    report(2, pass, detail);
}

void criterion_3(const std::vector<Model>& corpus) {
    double pairing = 0.0, shift = 0.0;
    for (const Model& m : corpus) {
        const auto spec = compute_spectrum(m);
        pairing = std::max(pairing, check_pt_pairing(spec.shifted, 1e-8).max_distance);
        // Shift identity, independent of ordering: match each eig(L̂′) − Σc to eig(L̂).
        std::vector<cplx> moved;
        for (cplx x : spec.shifted) moved.push_back(x - spec.sum_c);
        shift = std::max(shift, ptl::testing::multiset_distance(moved, spec.liouvillian));
    }
    report(3, pairing < 1e-8 && shift < 1e-9, fmt("max pairing distance %.3g, max shift deviation %.3g", pairing, shift));
}

void criterion_4() {
    // Oracle: the (y,z) Bloch block has complex eigenvalues iff γ⁴ < h², so γ_PT = √h.
    const double h = 1.0;
    auto oracle_broken = [&](double g) {
        for (cplx e : ptl::testing::bloch_liouvillian_eigs(h, g))
            if (std::abs(e.imag()) > 1e-12) return false;
        return true;
    };
    double lo = 0.1, hi = 2.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (oracle_broken(mid) ? hi : lo) = mid;
    }
    const double oracle = 0.5 * (lo + hi);

    ModelSpec s;
    s.n = 1;
    s.fields_x = {h};
    s.noise = Dephasing{{1.0}};
    ScanOptions opt;
    opt.lambda_min = 0.1;
    opt.lambda_max = 2.0;
    opt.resolution = 1e-6;
    const auto t0 = Clock::now();
    const auto r = scan_pt_breaking(s, opt);
    const double t = seconds_since(t0);
    const double got = r.gamma_pt.value_or(-1.0);
    report(4, std::abs(oracle - 1.0) < 1e-6 && std::abs(got - 1.0) < 1e-6 && t < 5.0,
           fmt("gamma_PT %.9f (Bloch oracle %.9f), %.3f s", got, oracle, t));
}

void criterion_5() {
    std::mt19937_64 rng(5150);
    int tested = 0;
    double worst = 0.0;
    bool all = true;
    for (int k = 0; k < 20; ++k) {
        // Odd-n injection chains have a doubly degenerate spectrum and no unbroken phase.
        const int n = 1 + k % 3;
        const bool injection = k % 2 == 1 && n % 2 == 0;
        const Model base = build_model(injection ? ptl::testing::random_injection_spec(rng, n)
                                                 : ptl::testing::random_dephasing_spec(rng, n));
        if (!check_lemma(base).overall) {
            all = false;
            continue;
        }
        double lambda = 1.0;
        Model m = base;
        while (classify(m).phase != PtPhase::Unbroken && lambda > 1e-2) {
            lambda *= 0.5;
            m = scale_noise(base, lambda);
        }
        if (classify(m).phase != PtPhase::Unbroken) {
            all = false;
            continue;
        }
        const auto r = check_uniform_rate(m);
        all = all && r.pass && r.max_deviation < 1e-8;
        worst = std::max(worst, r.max_deviation);
        ++tested;
    }
    report(5, all && tested == 20, fmt("%.0f models, max |Re + sum c| %.3g", double(tested), worst));
}

void criterion_6(const std::vector<Model>& corpus) {
    double worst = 0.0;
    for (const Model& m : corpus) worst = std::max(worst, v_matrix(m, hamiltonian_eigenbasis(m, true)).asymmetry);

    // Single qubit: H = hσˣ with L = γσᶻ swaps the σˣ eigenstates, V = [[0, γ²], [γ², 0]].
    const double h = 1.0, g = 0.6;
    ModelSpec s;
    s.n = 1;
    s.fields_x = {h};
    s.noise = Dephasing{{g}};
    const Model q = build_model(s);
    const auto vq = v_matrix(q, hamiltonian_eigenbasis(q, true)).v;
    Eigen::Matrix2d expect;
    expect << 0, g * g, g * g, 0;
    const double single = (vq - expect).cwiseAbs().maxCoeff();

    const Model bad = make_custom_model(op("X") + op("Z"), {op("X", 0.5) + op("Y", cplx(0, 0.5))}, op("I"), op("I"));
    const double violator = v_matrix(bad, hamiltonian_eigenbasis(bad, false)).asymmetry;

    report(6, worst < 1e-10 && single < 1e-12 && violator > 1e-3,
           fmt("corpus max asymmetry %.3g, single-qubit error %.3g, violator asymmetry %.3g", worst, single, violator));
}

void criterion_7() {
    std::mt19937_64 rng(7007);
    double rel = 0.0, trace = 0.0, stationary = 0.0;
    int count = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int family = 0; family < 2; ++family) {
            const Model m = build_model(family ? ptl::testing::random_injection_spec(rng, n)
                                               : ptl::testing::random_dephasing_spec(rng, n));
            const Mat l = build_liouvillian(m).mat;
            const Eigen::Index d = Eigen::Index{1} << n;
            const int samples = (n == 3 && family == 1) ? 20 : 16;
            for (int k = 0; k < samples; ++k, ++count) {
                const Mat rho = ptl::testing::random_hermitian(rng, d);
                const Mat a = unvec(l * vec(rho));
                const Mat b = apply_liouvillian_direct(m, rho);
                rel = std::max(rel, (a - b).norm() / std::max(1.0, b.norm()));
                trace = std::max(trace, std::abs(a.trace()) / std::max(1.0, rho.norm()));
            }
            // The stationary eigenvalue: some eigenvalue of L̂ vanishes.
            double smallest = 1e300;
            for (cplx e : eigenvalues(l)) smallest = std::min(smallest, std::abs(e));
            stationary = std::max(stationary, smallest);
            if (family == 0) {
                // Dephasing is unital.
                stationary = std::max(stationary, apply_liouvillian_direct(m, Mat::Identity(d, d)).norm());
            }
        }
    }
    report(7, count == 100 && rel < 1e-12 && trace < 1e-12 && stationary < 1e-10,
           fmt("max relative mismatch %.3g, max |tr L(rho)| %.3g, stationary residual %.3g", rel, trace, stationary));
}

void criterion_8() {
    std::mt19937_64 rng(88);
    ModelSpec s = ptl::testing::random_injection_spec(rng, 2);
    auto& inj = std::get<Injection>(s.noise);
    inj.a[1] = cplx(0.0, 0.7);
    const Model m = build_model(s);
    const auto r = check_lemma(m);
    bool pass = r.overall && r.cond_ii.reflection.has_value();
    double dense = 1e300, diag = 0.0;
    if (pass) {
        const auto& z = r.cond_ii.reflection->z;
        // Locate the imaginary-rate channel by its dense image.
        const Mat u = ptl::testing::dense_oracle(m.u, 2), w = ptl::testing::dense_oracle(m.w, 2);
        const Mat target = ptl::testing::dense_oracle(PauliOperator::sigma_plus(2, 1) * inj.a[1], 2);
        std::size_t idx = m.num_channels();
        for (std::size_t k = 0; k < m.num_channels(); ++k)
            if ((ptl::testing::dense_oracle(m.lindblads[k], 2) - target).norm() < 1e-14) idx = k;
        pass = idx < m.num_channels();
        if (pass) {
            const auto i = static_cast<Eigen::Index>(idx);
            diag = z(i, i);
            // Dense identities: U L U = −Σ Z L†, W L W = Σ Z L†, restricted to this diagonal channel.
            const Mat l = ptl::testing::dense_oracle(m.lindblads[idx], 2);
            dense = std::max((u * l * u + diag * l.adjoint()).norm(), (w * l * w - diag * l.adjoint()).norm());
            const double off = z.row(i).cwiseAbs().sum() - std::abs(diag);
            pass = std::abs(diag + 1.0) < 1e-10 && dense < 1e-12 && off < 1e-10;
        }
    }
    report(8, pass, fmt("Z diagonal entry %.12g, dense identity residual %.3g", diag, dense));
}

}  // namespace

int main() {
    const auto corpus = positive_corpus();
    criterion_1(corpus);
    criterion_2(corpus);
    criterion_3(corpus);
    criterion_4();
    criterion_5();
    criterion_6(corpus);
    criterion_7();
    criterion_8();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
