#include "ptliou/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ptliou/lemma.hpp"
#include "ptliou/model.hpp"
#include "ptliou/report_io.hpp"
#include "ptliou/spectral.hpp"
#include "ptliou/superop.hpp"

namespace ptl::cli {

namespace {

struct RunConfig {
    std::string subcommand;
    std::string model_path;
    std::string out_path;  // empty: standard output
    std::string format;    // empty: subcommand default
    double tol_im = kTolIm;
    int max_n = 6;
    double lambda_min = 1e-3;
    double lambda_max = 10.0;
    double resolution = 1e-6;
    int grid_points = 17;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Model load_model(const RunConfig& cfg) {
    std::ifstream in(cfg.model_path);
    if (!in) throw InputError("cannot open model file '" + cfg.model_path + "'");
    try {
        return build_model(parse_model_config(in));
    } catch (const SpecError& e) {
        throw InputError(e.what());
    } catch (const DimensionError& e) {
        throw InputError(e.what());
    }
}

void guard_size(const Model& m, const RunConfig& cfg) {
    if (m.n > cfg.max_n) {
        throw InputError("n = " + std::to_string(m.n) + " exceeds the size guard --max-n " + std::to_string(cfg.max_n));
    }
}

std::string resolve_format(const RunConfig& cfg, const std::string& fallback, bool csv_allowed) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "json" && f != "csv") throw InputError("unknown format '" + f + "'");
    if (f == "csv" && !csv_allowed) throw InputError(cfg.subcommand + " supports only --format json");
    return f;
}

// Buffers output so a failing run writes nothing to the destination.
class Sink {
public:
    std::ostream& stream() { return buffer_; }
    void flush_to(const RunConfig& cfg, std::ostream& out) const {
        if (cfg.out_path.empty()) {
            out << buffer_.str();
            return;
        }
        std::ofstream file(cfg.out_path);
        if (!file) throw InputError("cannot open output file '" + cfg.out_path + "'");
        file << buffer_.str();
    }

private:
    std::ostringstream buffer_;
};

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    resolve_format(cfg, "json", false);
    const Model model = load_model(cfg);
    const LemmaReport report = check_lemma(model);
    auto doc = to_json(report);
    doc["n"] = model.n;
    doc["family"] = to_string(model.family);
    doc["num_channels"] = model.num_channels();

    // The dense residual is skipped above the size guard; certification stands alone there.
    std::optional<double> residual;
    if (model.n <= cfg.max_n) residual = pt_residual(model);
    doc["pt_residual"] = residual ? nlohmann::json(*residual) : nlohmann::json(nullptr);

    Sink sink;
    sink.stream() << doc.dump(2) << '\n';
    sink.flush_to(cfg, out);
    const bool ok = report.overall && (!residual || *residual < 1e-10);
    return ok ? kOk : kCertFailed;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const auto format = resolve_format(cfg, "csv", true);
    const Model model = load_model(cfg);
    guard_size(model, cfg);
    const SpectrumResult spectrum = compute_spectrum(model);
    Sink sink;
    if (format == "csv") {
        write_spectrum_csv(sink.stream(), spectrum);
    } else {
        auto doc = to_json(spectrum);
        const auto cls = classify(spectrum.shifted, spectrum.n, spectrum.frobenius_shifted, cfg.tol_im);
        doc["frobenius_Lprime"] = spectrum.frobenius_shifted;
        doc["classification"] = to_string(cls.phase);
        doc["n_imag_axis"] = cls.n_imag_axis;
        sink.stream() << doc.dump(2) << '\n';
    }
    sink.flush_to(cfg, out);
    return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto format = resolve_format(cfg, "csv", true);
    const Model model = load_model(cfg);
    guard_size(model, cfg);
    if (!(cfg.lambda_min > 0.0) || !(cfg.lambda_max > cfg.lambda_min)) {
        throw InputError("scan bounds must satisfy 0 < --lambda-min < --lambda-max");
    }
    if (!(cfg.resolution > 0.0)) throw InputError("--resolution must be positive");
    if (!check_lemma(model).overall) {
        err << "scan: model does not certify as PT-symmetric; run `check` for details\n";
        return kCertFailed;
    }
    ScanOptions opts;
    opts.lambda_min = cfg.lambda_min;
    opts.lambda_max = cfg.lambda_max;
    opts.resolution = cfg.resolution;
    opts.tol_im = cfg.tol_im;
    opts.grid_points = cfg.grid_points;
    const ScanResult scan = scan_pt_breaking(model, opts);

    Sink sink;
    if (format == "csv") {
        write_scan_csv(sink.stream(), scan);
        // Trailing record: a single JSON line with the transition estimate.
        auto doc = to_json(scan);
        doc.erase("scan");
        sink.stream() << doc.dump() << '\n';
    } else {
        sink.stream() << to_json(scan).dump(2) << '\n';
    }
    sink.flush_to(cfg, out);
    return kOk;
}

int cmd_vmatrix(const RunConfig& cfg, std::ostream& out) {
    resolve_format(cfg, "json", false);
    const Model model = load_model(cfg);
    if (model.n > std::max(cfg.max_n, 12)) throw InputError("n too large for a dense eigenbasis");
    const bool commutes = commutator(model.hamiltonian, model.w).max_abs_coeff() <= kTolCert;
    const EnergyEigenbasis basis = hamiltonian_eigenbasis(model, commutes);
    const VMatrix v = v_matrix(model, basis);
    auto doc = to_json(v, basis);
    doc["n"] = model.n;
    Sink sink;
    sink.stream() << doc.dump(2) << '\n';
    sink.flush_to(cfg, out);
    return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--model", cfg.model_path, "Model description (JSON)")->required();
    sub->add_option("--out", cfg.out_path, "Write results here instead of standard output");
    sub->add_option("--format", cfg.format, "Output format: json or csv");
    sub->add_option("--tol-im", cfg.tol_im, "Imaginary-axis tolerance, relative to ||L'||_F");
    sub->add_option("--max-n", cfg.max_n, "Largest qubit count for dense superoperators");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Liouvillian PT-symmetry certification and spectral analysis for qubit models", "ptliou"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Certify the PT-symmetry conditions and the dense PT residual");
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of L and of the shifted L'");
    auto* scan = app.add_subcommand("scan", "Locate the PT-breaking noise scale by bisection");
    auto* vmatrix = app.add_subcommand("vmatrix", "Dissipator matrix V_jk = sum_m |<psi_j|L_m|psi_k>|^2");
    for (auto* sub : {check, spectrum, scan, vmatrix}) add_common(sub, cfg);
    scan->add_option("--lambda-min", cfg.lambda_min, "Smallest noise scale");
    scan->add_option("--lambda-max", cfg.lambda_max, "Largest noise scale");
    scan->add_option("--resolution", cfg.resolution, "Final bracket width");
    scan->add_option("--grid-points", cfg.grid_points, "Coarse grid size before bisection")->check(CLI::Range(2, 10000));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (check->parsed()) {
            cfg.subcommand = "check";
            return cmd_check(cfg, out);
        }
        if (spectrum->parsed()) {
            cfg.subcommand = "spectrum";
            return cmd_spectrum(cfg, out);
        }
        if (scan->parsed()) {
            cfg.subcommand = "scan";
            return cmd_scan(cfg, out, err);
        }
        cfg.subcommand = "vmatrix";
        return cmd_vmatrix(cfg, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace ptl::cli
