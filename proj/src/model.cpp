#include "ptliou/model.hpp"

#include <cmath>
#include <istream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace ptl {

namespace {

using nlohmann::json;

std::size_t checked_n(int n) {
    if (n < 1) throw SpecError("n must be at least 1");
    if (n > 30) throw SpecError("n larger than 30 is not supported");
    return static_cast<std::size_t>(n);
}

void require_length(const std::vector<cplx>& v, int n, const char* name) {
    if (!v.empty() && static_cast<int>(v.size()) != n) {
        std::ostringstream msg;
        msg << name << " has length " << v.size() << ", expected " << n;
        throw SpecError(msg.str());
    }
}

cplx rate_at(const std::vector<cplx>& v, std::size_t j) { return j < v.size() ? v[j] : cplx{}; }

void append_channel(Model& m, PauliOperator l) {
    if (l.is_zero()) return;
    m.c.push_back(channel_constant(l));
    m.lindblads.push_back(std::move(l));
}

PauliOperator family_hamiltonian(const ModelSpec& spec) {
    const auto n = checked_n(spec.n);
    PauliOperator h = coupling_hamiltonian(spec.n, spec.couplings);
    for (std::size_t j = 0; j < spec.fields_x.size(); ++j) {
        h += PauliOperator::single(n, j, Pauli::X, spec.fields_x[j]);
    }
    return h;
}

void apply_custom(Model& m, const CustomTerms& custom) {
    const auto n = static_cast<std::size_t>(m.n);
    auto check = [n](const PauliOperator& op, const char* what) {
        if (!op.is_zero() && op.num_qubits() != n) {
            throw SpecError(std::string("custom ") + what + " acts on the wrong number of qubits");
        }
    };
    if (custom.h_extra) {
        check(*custom.h_extra, "H");
        if (!custom.h_extra->is_zero()) m.hamiltonian += *custom.h_extra;
    }
    for (const auto& l : custom.extra_channels) {
        check(l, "L");
        append_channel(m, l);
    }
    if (custom.u) {
        check(*custom.u, "U");
        m.u = *custom.u;
    }
    if (custom.w) {
        check(*custom.w, "W");
        m.w = *custom.w;
    }
    m.family = Family::Custom;
}

// ---- JSON ingestion ----

std::string path_join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double get_real(const json& j, const std::string& where) {
    if (!j.is_number()) throw SpecError(where + ": expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SpecError(where + ": expected an integer");
    return j.get<int>();
}

cplx get_complex(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw SpecError(where + ": expected a real number or a [re, im] pair");
}

std::vector<cplx> get_rates(const json& parent, const std::string& key, const std::string& path) {
    std::vector<cplx> out;
    if (!parent.contains(key)) return out;
    const auto& arr = parent.at(key);
    const auto where = path_join(path, key);
    if (!arr.is_array()) throw SpecError(where + ": expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(get_complex(arr[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

PauliOperator get_terms(const json& arr, std::size_t n, const std::string& where) {
    if (!arr.is_array()) throw SpecError(where + ": expected an array of Pauli terms");
    PauliOperator op(n);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto item_where = where + "[" + std::to_string(k) + "]";
        const auto& item = arr[k];
        if (!item.is_object() || !item.contains("pauli") || !item.at("pauli").is_string()) {
            throw SpecError(item_where + ": expected {\"pauli\": \"...\", \"coeff\": ...}");
        }
        const auto letters = item.at("pauli").get<std::string>();
        if (letters.size() != n) {
            throw SpecError(item_where + ": Pauli word '" + letters + "' does not have length n");
        }
        PauliString s;
        try {
            s = PauliString::parse(letters);
        } catch (const std::invalid_argument& e) {
            throw SpecError(item_where + ": " + e.what());
        }
        const cplx coeff = item.contains("coeff") ? get_complex(item.at("coeff"), item_where + ".coeff")
                                                  : cplx{1.0, 0.0};
        op.add_term(s, coeff);
    }
    return op;
}

CustomTerms get_custom(const json& j, std::size_t n) {
    if (!j.is_object()) throw SpecError("custom: expected an object");
    CustomTerms custom;
    for (const auto& [key, value] : j.items()) {
        if (key == "H") {
            custom.h_extra = get_terms(value, n, "custom.H");
        } else if (key == "U") {
            custom.u = get_terms(value, n, "custom.U");
        } else if (key == "W") {
            custom.w = get_terms(value, n, "custom.W");
        } else if (key == "L") {
            if (!value.is_array()) throw SpecError("custom.L: expected an array of operators");
            for (std::size_t k = 0; k < value.size(); ++k) {
                custom.extra_channels.push_back(
                    get_terms(value[k], n, "custom.L[" + std::to_string(k) + "]"));
            }
        } else {
            throw SpecError("custom: unknown field '" + key + "'");
        }
    }
    return custom;
}

ModelSpec spec_from_json(const json& doc) {
    if (!doc.is_object()) throw SpecError("model file: top level must be an object");
    ModelSpec spec;
    if (!doc.contains("n")) throw SpecError("n: missing");
    spec.n = get_int(doc.at("n"), "n");
    const auto n = checked_n(spec.n);

    if (doc.contains("hamiltonian")) {
        const auto& ham = doc.at("hamiltonian");
        if (!ham.is_object()) throw SpecError("hamiltonian: expected an object");
        if (ham.contains("couplings")) {
            const auto& cs = ham.at("couplings");
            if (!cs.is_array()) throw SpecError("hamiltonian.couplings: expected an array");
            for (std::size_t k = 0; k < cs.size(); ++k) {
                const auto where = "hamiltonian.couplings[" + std::to_string(k) + "]";
                const auto& c = cs[k];
                if (!c.is_object()) throw SpecError(where + ": expected an object");
                Coupling cp;
                if (!c.contains("i") || !c.contains("j")) throw SpecError(where + ": missing i or j");
                cp.i = get_int(c.at("i"), where + ".i");
                cp.j = get_int(c.at("j"), where + ".j");
                cp.jx = c.contains("jx") ? get_real(c.at("jx"), where + ".jx") : 0.0;
                cp.jy = c.contains("jy") ? get_real(c.at("jy"), where + ".jy") : 0.0;
                cp.jz = c.contains("jz") ? get_real(c.at("jz"), where + ".jz") : 0.0;
                spec.couplings.push_back(cp);
            }
        }
        if (ham.contains("fields_x")) {
            const auto& fs = ham.at("fields_x");
            if (!fs.is_array()) throw SpecError("hamiltonian.fields_x: expected an array");
            for (std::size_t k = 0; k < fs.size(); ++k) {
                spec.fields_x.push_back(get_real(fs[k], "hamiltonian.fields_x[" + std::to_string(k) + "]"));
            }
        }
    }

    if (doc.contains("noise")) {
        const auto& noise = doc.at("noise");
        if (!noise.is_object() || !noise.contains("type") || !noise.at("type").is_string()) {
            throw SpecError("noise: expected an object with a string 'type'");
        }
        const auto type = noise.at("type").get<std::string>();
        if (type == "dephasing") {
            spec.noise = Dephasing{get_rates(noise, "gammas", "noise")};
        } else if (type == "injection") {
            spec.noise = Injection{get_rates(noise, "a", "noise"), get_rates(noise, "b", "noise")};
        } else {
            throw SpecError("noise.type: unknown noise type '" + type + "'");
        }
    }

    if (doc.contains("scale")) spec.scale = get_real(doc.at("scale"), "scale");
    if (doc.contains("custom")) spec.custom = get_custom(doc.at("custom"), n);

    static const std::set<std::string> known{"n", "hamiltonian", "noise", "scale", "custom"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) throw SpecError("model file: unknown field '" + key + "'");
    }

    validate(spec);
    return spec;
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::Example1: return "dephasing";
        case Family::Example2: return "injection";
        case Family::Custom: return "custom";
    }
    return "unknown";
}

double Model::sum_c() const {
    double s = 0.0;
    for (double v : c) s += v;
    return s;
}

double channel_constant(const PauliOperator& l) {
    if (l.is_zero()) return 0.0;
    return anticommutator(l, dagger(l)).coeff(PauliString(l.num_qubits())).real();
}

void validate(const ModelSpec& spec) {
    checked_n(spec.n);
    std::set<std::pair<int, int>> seen;
    for (const auto& c : spec.couplings) {
        if (c.i < 0 || c.j < 0 || c.i >= spec.n || c.j >= spec.n) {
            throw SpecError("coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                            "): index out of range");
        }
        if (c.i == c.j) throw SpecError("coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                                        "): sites must differ");
        auto key = std::minmax(c.i, c.j);
        if (!seen.insert(key).second) {
            throw SpecError("coupling (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                            "): duplicate pair");
        }
    }
    if (!spec.fields_x.empty() && static_cast<int>(spec.fields_x.size()) != spec.n) {
        throw SpecError("fields_x has length " + std::to_string(spec.fields_x.size()) + ", expected " +
                        std::to_string(spec.n));
    }
    if (const auto* d = std::get_if<Dephasing>(&spec.noise)) {
        require_length(d->gammas, spec.n, "gammas");
    } else if (const auto* inj = std::get_if<Injection>(&spec.noise)) {
        require_length(inj->a, spec.n, "a");
        require_length(inj->b, spec.n, "b");
        if (!spec.fields_x.empty()) throw SpecError("injection models take no fields_x terms");
    }
    if (!(spec.scale >= 0.0) || !std::isfinite(spec.scale)) throw SpecError("scale must be finite and >= 0");
}

PauliOperator coupling_hamiltonian(int n, const std::vector<Coupling>& couplings) {
    const auto nq = checked_n(n);
    PauliOperator h(nq);
    for (const auto& c : couplings) {
        const auto a = static_cast<std::size_t>(std::min(c.i, c.j));
        const auto b = static_cast<std::size_t>(std::max(c.i, c.j));
        const std::pair<Pauli, double> parts[] = {{Pauli::X, c.jx}, {Pauli::Y, c.jy}, {Pauli::Z, c.jz}};
        for (const auto& [p, strength] : parts) {
            PauliString s(nq);
            s[a] = p;
            s[b] = p;
            h.add_term(s, strength);
        }
    }
    return h;
}

Model build_example1(const ModelSpec& spec) {
    validate(spec);
    const auto* noise = std::get_if<Dephasing>(&spec.noise);
    if (noise == nullptr && !std::holds_alternative<std::monostate>(spec.noise)) {
        throw SpecError("dephasing model requires dephasing noise");
    }
    const auto n = checked_n(spec.n);
    Model m;
    m.n = spec.n;
    m.family = Family::Example1;
    m.hamiltonian = family_hamiltonian(spec);
    if (noise != nullptr) {
        for (std::size_t j = 0; j < n; ++j) {
            append_channel(m, PauliOperator::single(n, j, Pauli::Z, spec.scale * rate_at(noise->gammas, j)));
        }
    }
    m.u = product_over_sites(n, Pauli::X);
    m.w = PauliOperator::identity(n);
    return m;
}

Model build_example2(const ModelSpec& spec) {
    validate(spec);
    const auto* noise = std::get_if<Injection>(&spec.noise);
    if (noise == nullptr) throw SpecError("injection model requires injection noise");
    const auto n = checked_n(spec.n);
    Model m;
    m.n = spec.n;
    m.family = Family::Example2;
    m.hamiltonian = coupling_hamiltonian(spec.n, spec.couplings);
    for (std::size_t j = 0; j < n; ++j) {
        append_channel(m, PauliOperator::sigma_plus(n, j) * (spec.scale * rate_at(noise->a, j)));
        append_channel(m, PauliOperator::sigma_minus(n, j) * (spec.scale * rate_at(noise->b, j)));
    }
    m.u = product_over_sites(n, Pauli::Y);
    m.w = product_over_sites(n, Pauli::X);
    return m;
}

Model build_model(const ModelSpec& spec) {
    Model m;
    if (std::holds_alternative<Injection>(spec.noise)) {
        m = build_example2(spec);
    } else if (std::holds_alternative<Dephasing>(spec.noise) || !spec.custom) {
        m = build_example1(spec);
    } else {
        // Custom-only model: family Hamiltonian terms if any, trivial parity by default.
        validate(spec);
        const auto n = checked_n(spec.n);
        m.n = spec.n;
        m.hamiltonian = family_hamiltonian(spec);
        m.u = PauliOperator::identity(n);
        m.w = PauliOperator::identity(n);
    }
    if (spec.custom) apply_custom(m, *spec.custom);
    return m;
}

Model make_custom_model(PauliOperator h, std::vector<PauliOperator> lindblads, PauliOperator u,
                        PauliOperator w) {
    const std::size_t n = std::max({h.num_qubits(), u.num_qubits(), w.num_qubits()});
    Model m;
    m.n = static_cast<int>(checked_n(static_cast<int>(n)));
    m.hamiltonian = h.is_zero() ? PauliOperator(n) : std::move(h);
    m.u = std::move(u);
    m.w = std::move(w);
    for (auto& l : lindblads) append_channel(m, std::move(l));
    m.family = Family::Custom;
    for (const auto* op : {&m.hamiltonian, &m.u, &m.w}) {
        if (op->num_qubits() != n) throw DimensionError("custom model operators disagree on n");
    }
    for (const auto& l : m.lindblads) {
        if (l.num_qubits() != n) throw DimensionError("custom model channel disagrees on n");
    }
    return m;
}

Model scale_noise(const Model& model, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw SpecError("noise scale must be finite and >= 0");
    Model out = model;
    out.lindblads.clear();
    out.c.clear();
    if (lambda == 0.0) return out;
    for (std::size_t m = 0; m < model.lindblads.size(); ++m) {
        auto l = model.lindblads[m] * lambda;
        if (l.is_zero()) continue;
        out.lindblads.push_back(std::move(l));
        out.c.push_back(model.c[m] * lambda * lambda);
    }
    return out;
}

ModelSpec parse_model_config(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("model file: ") + e.what());
    }
    return spec_from_json(doc);
}

ModelSpec parse_model_config(const std::string& text) {
    std::istringstream in(text);
    return parse_model_config(in);
}

}  // namespace ptl
