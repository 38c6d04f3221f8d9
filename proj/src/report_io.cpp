#include "ptliou/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ptl {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const LemmaReport& report) {
    const auto& i = report.cond_i;
    const auto& ii = report.cond_ii;
    const auto& iii = report.cond_iii;

    json cond_i = {
        {"pass", i.pass},
        {"residuals",
         {{"u_unitarity", i.u_unitarity},
          {"u_involution", i.u_involution},
          {"w_unitarity", i.w_unitarity},
          {"w_involution", i.w_involution},
          {"comm_hu", i.comm_hu},
          {"comm_hw", i.comm_hw}}},
    };

    const json z = ii.reflection ? to_json(ii.reflection->z) : json(nullptr);
    json cond_ii = {
        {"pass", ii.pass},
        {"status", to_string(ii.status)},
        {"Z", z},
        {"residuals",
         {{"fit", ii.fit_residual},
          {"orthogonality", ii.reflection ? json(ii.reflection->residual_orth) : json(nullptr)},
          {"involution", ii.reflection ? json(ii.reflection->residual_invol) : json(nullptr)},
          {"max_imag", ii.max_imag},
          {"gram_ratio", ii.min_gram_ratio}}},
    };

    json cond_iii = {
        {"pass", iii.pass},
        {"c", iii.c},
        {"residuals", iii.residuals},
        {"offending_channel", iii.offending_channel ? json(*iii.offending_channel) : json(nullptr)},
        {"leftover", iii.offending_channel ? json(iii.leftover.str()) : json(nullptr)},
    };

    double iii_max = 0.0;
    for (double r : iii.residuals) iii_max = std::max(iii_max, r);

    return {
        {"cond_i", std::move(cond_i)},
        {"cond_ii", std::move(cond_ii)},
        {"cond_iii", std::move(cond_iii)},
        {"overall", report.overall},
        {"Z", z},
        {"c", iii.c},
        {"residuals", {{"cond_i", i.max_residual()}, {"cond_ii", ii.fit_residual}, {"cond_iii", iii_max}}},
    };
}

json to_json(const ScanResult& scan) {
    json probes = json::array();
    for (const auto& p : scan.probes) {
        probes.push_back({{"lambda", p.lambda}, {"n_imag_axis", p.n_imag_axis}, {"classification", to_string(p.phase)}});
    }
    return {
        {"scan", std::move(probes)},
        {"gamma_pt", scan.gamma_pt ? json(*scan.gamma_pt) : json(nullptr)},
        {"bracket", scan.bracket ? json::array({scan.bracket->first, scan.bracket->second}) : json(nullptr)},
    };
}

json to_json(const SpectrumResult& spectrum) {
    auto pairs = [](const std::vector<cplx>& v) {
        json out = json::array();
        for (const auto& z : v) out.push_back({z.real(), z.imag()});
        return out;
    };
    return {
        {"n", spectrum.n},
        {"lambda", spectrum.lambda},
        {"sum_c", spectrum.sum_c},
        {"shift_deviation", spectrum.shift_deviation},
        {"eigenvalues_L", pairs(spectrum.liouvillian)},
        {"eigenvalues_Lprime", pairs(spectrum.shifted)},
    };
}

json to_json(const VMatrix& v, const EnergyEigenbasis& basis) {
    std::vector<double> energies(basis.energies.data(), basis.energies.data() + basis.energies.size());
    return {
        {"V", to_json(v.v)},
        {"asymmetry", v.asymmetry},
        {"energies", energies},
        {"omega", basis.omega.empty() ? json(nullptr) : json(basis.omega)},
    };
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& spectrum) {
    os << "index,re_L,im_L,re_Lprime,im_Lprime\n";
    for (std::size_t i = 0; i < spectrum.liouvillian.size(); ++i) {
        const auto& l = spectrum.liouvillian[i];
        const auto& lp = spectrum.shifted[i];
        os << i << ',' << format_double(l.real()) << ',' << format_double(l.imag()) << ','
           << format_double(lp.real()) << ',' << format_double(lp.imag()) << '\n';
    }
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
    os << "lambda,n_imag_axis,classification\n";
    for (const auto& p : scan.probes) {
        os << format_double(p.lambda) << ',' << p.n_imag_axis << ',' << to_string(p.phase) << '\n';
    }
}

}  // namespace ptl
