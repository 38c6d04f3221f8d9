#include "ptliou/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptl {

namespace {

// Single-site product table: (phase exponent k, letter) with a·b = i^k·letter.
struct SiteProduct {
    int k;
    Pauli p;
};

constexpr SiteProduct kSiteTable[4][4] = {
    // I            X              Y              Z
    {{0, Pauli::I}, {0, Pauli::X}, {0, Pauli::Y}, {0, Pauli::Z}},  // I
    {{0, Pauli::X}, {0, Pauli::I}, {1, Pauli::Z}, {3, Pauli::Y}},  // X
    {{0, Pauli::Y}, {3, Pauli::Z}, {0, Pauli::I}, {1, Pauli::X}},  // Y
    {{0, Pauli::Z}, {1, Pauli::Y}, {3, Pauli::X}, {0, Pauli::I}},  // Z
};

constexpr cplx kQuarterTurns[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": qubit count mismatch (" << a << " vs " << b << ")";
        throw DimensionError(msg.str());
    }
}

}  // namespace

char to_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': case 'i': return Pauli::I;
        case 'X': case 'x': return Pauli::X;
        case 'Y': case 'y': return Pauli::Y;
        case 'Z': case 'z': return Pauli::Z;
        default: break;
    }
    throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
}

PauliString PauliString::parse(std::string_view letters) {
    std::vector<Pauli> word;
    word.reserve(letters.size());
    for (char c : letters) word.push_back(pauli_from_char(c));
    return PauliString(std::move(word));
}

PauliString PauliString::single(std::size_t n, std::size_t site, Pauli p) {
    if (site >= n) throw DimensionError("site index out of range");
    PauliString s(n);
    s[site] = p;
    return s;
}

PauliString PauliString::uniform(std::size_t n, Pauli p) {
    return PauliString(std::vector<Pauli>(n, p));
}

bool PauliString::is_identity() const {
    return std::all_of(word_.begin(), word_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(word_.size());
    for (Pauli p : word_) out.push_back(to_char(p));
    return out;
}

cplx StringProduct::phase() const { return kQuarterTurns[quarter_turns & 3]; }

StringProduct string_mul(const PauliString& a, const PauliString& b) {
    require_same_size(a.size(), b.size(), "string_mul");
    StringProduct out{0, PauliString(a.size())};
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto& e = kSiteTable[static_cast<int>(a[j])][static_cast<int>(b[j])];
        out.quarter_turns += e.k;
        out.string[j] = e.p;
    }
    out.quarter_turns &= 3;
    return out;
}

PauliOperator::PauliOperator(const PauliString& s, cplx coeff) : n_(s.size()) {
    add_term(s, coeff);
}

PauliOperator PauliOperator::identity(std::size_t n, cplx coeff) {
    return PauliOperator(PauliString(n), coeff);
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t site, Pauli p, cplx coeff) {
    return PauliOperator(PauliString::single(n, site, p), coeff);
}

PauliOperator PauliOperator::sigma_plus(std::size_t n, std::size_t site) {
    PauliOperator out(n);
    out.add_term(PauliString::single(n, site, Pauli::X), 0.5);
    out.add_term(PauliString::single(n, site, Pauli::Y), cplx(0.0, 0.5));
    return out;
}

PauliOperator PauliOperator::sigma_minus(std::size_t n, std::size_t site) {
    PauliOperator out(n);
    out.add_term(PauliString::single(n, site, Pauli::X), 0.5);
    out.add_term(PauliString::single(n, site, Pauli::Y), cplx(0.0, -0.5));
    return out;
}

cplx PauliOperator::coeff(const PauliString& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? cplx{} : it->second;
}

double PauliOperator::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void PauliOperator::add_term(const PauliString& s, cplx coeff) {
    if (terms_.empty() && n_ == 0) n_ = s.size();
    require_same_size(n_, s.size(), "add_term");
    auto [it, inserted] = terms_.try_emplace(s, coeff);
    if (!inserted) it->second += coeff;
    if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

PauliOperator& PauliOperator::operator+=(const PauliOperator& rhs) {
    if (n_ == 0 && terms_.empty()) n_ = rhs.n_;
    require_same_size(n_, rhs.n_, "operator+");
    for (const auto& [s, c] : rhs.terms_) add_term(s, c);
    return *this;
}

PauliOperator& PauliOperator::operator-=(const PauliOperator& rhs) {
    if (n_ == 0 && terms_.empty()) n_ = rhs.n_;
    require_same_size(n_, rhs.n_, "operator-");
    for (const auto& [s, c] : rhs.terms_) add_term(s, -c);
    return *this;
}

PauliOperator& PauliOperator::operator*=(cplx scalar) {
    for (auto& [s, c] : terms_) c *= scalar;
    prune();
    return *this;
}

PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
    require_same_size(a.n_, b.n_, "op_mul");
    PauliOperator out(a.n_);
    for (const auto& [sa, ca] : a.terms_) {
        for (const auto& [sb, cb] : b.terms_) {
            auto prod = string_mul(sa, sb);
            auto [it, inserted] = out.terms_.try_emplace(std::move(prod.string), cplx{});
            it->second += prod.phase() * ca * cb;
        }
    }
    out.prune();
    return out;
}

std::string PauliOperator::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)" << s.str();
    }
    return os.str();
}

void PauliOperator::prune() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

PauliOperator op_mul(const PauliOperator& a, const PauliOperator& b) { return a * b; }

namespace {

// Total order on operators, used to evaluate (anti)commutators with a fixed operand order.
bool canonical_less(const PauliOperator& a, const PauliOperator& b) {
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        const auto& ca = ia->second;
        const auto& cb = ib->second;
        if (ca.real() != cb.real()) return ca.real() < cb.real();
        if (ca.imag() != cb.imag()) return ca.imag() < cb.imag();
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

// ab + sign·ba, accumulated pairwise: each pair of strings either commutes or
// anticommutes, so its contribution is 0 or 2·phase·ca·cb.
PauliOperator graded_product(const PauliOperator& a, const PauliOperator& b, int sign) {
    require_same_size(a.num_qubits(), b.num_qubits(), sign < 0 ? "commutator" : "anticommutator");
    PauliOperator out(a.num_qubits());
    PauliOperator::Terms acc;
    for (const auto& [sa, ca] : a.terms()) {
        for (const auto& [sb, cb] : b.terms()) {
            const auto ab = string_mul(sa, sb);
            const auto ba = string_mul(sb, sa);
            const bool same = ab.quarter_turns == ba.quarter_turns;
            if (same == (sign < 0)) continue;
            auto [it, inserted] = acc.try_emplace(ab.string, cplx{});
            it->second += 2.0 * ab.phase() * (ca * cb);
        }
    }
    for (const auto& [s, c] : acc) out.add_term(s, c);
    return out;
}

}  // namespace

PauliOperator commutator(const PauliOperator& a, const PauliOperator& b) {
    if (canonical_less(b, a)) return -graded_product(b, a, -1);
    return graded_product(a, b, -1);
}

PauliOperator anticommutator(const PauliOperator& a, const PauliOperator& b) {
    if (canonical_less(b, a)) return graded_product(b, a, +1);
    return graded_product(a, b, +1);
}

PauliOperator dagger(const PauliOperator& a) {
    PauliOperator out(a.num_qubits());
    for (const auto& [s, c] : a.terms()) out.add_term(s, std::conj(c));
    return out;
}

std::optional<cplx> as_identity_multiple(const PauliOperator& a) {
    if (a.is_zero()) return cplx{};
    if (a.terms().size() != 1) return std::nullopt;
    const auto& [s, c] = *a.terms().begin();
    if (!s.is_identity()) return std::nullopt;
    return c;
}

PauliOperator product_over_sites(std::size_t n, Pauli p) {
    return PauliOperator(PauliString::uniform(n, p), 1.0);
}

}  // namespace ptl
