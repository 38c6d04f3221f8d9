// pauli.hpp — n-site Pauli strings and complex-weighted sums of them

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ptl {

using cplx = std::complex<double>;

/// Coefficients with magnitude below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-14;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Declaration order fixes the canonical ordering I < X < Y < Z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::size_t n) : word_(n, Pauli::I) {}
    explicit PauliString(std::vector<Pauli> word) : word_(std::move(word)) {}

    /// Parses a word such as "XZI"; site 0 is the leftmost letter.
    static PauliString parse(std::string_view letters);
    /// Identity everywhere except `p` on `site`.
    static PauliString single(std::size_t n, std::size_t site, Pauli p);
    static PauliString uniform(std::size_t n, Pauli p);

    std::size_t size() const { return word_.size(); }
    Pauli operator[](std::size_t site) const { return word_[site]; }
    Pauli& operator[](std::size_t site) { return word_[site]; }
    const std::vector<Pauli>& word() const { return word_; }
    bool is_identity() const;
    std::string str() const;

    friend auto operator<=>(const PauliString&, const PauliString&) = default;
    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    std::vector<Pauli> word_;
};

struct StringProduct {
    int quarter_turns = 0;  // phase = i^quarter_turns, in [0, 4)
    PauliString string;

    cplx phase() const;
};

/// a·b = i^k · s, computed sitewise.
StringProduct string_mul(const PauliString& a, const PauliString& b);

class PauliOperator {
public:
    using Terms = std::map<PauliString, cplx>;

    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : n_(n) {}
    PauliOperator(const PauliString& s, cplx coeff);

    static PauliOperator zero(std::size_t n) { return PauliOperator(n); }
    static PauliOperator identity(std::size_t n, cplx coeff = 1.0);
    /// σ^+_site = (X + iY)/2.
    static PauliOperator sigma_plus(std::size_t n, std::size_t site);
    /// σ^-_site = (X - iY)/2.
    static PauliOperator sigma_minus(std::size_t n, std::size_t site);
    static PauliOperator single(std::size_t n, std::size_t site, Pauli p, cplx coeff = 1.0);

    std::size_t num_qubits() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of `s`, zero when absent.
    cplx coeff(const PauliString& s) const;
    /// Largest coefficient magnitude; zero for the zero operator.
    double max_abs_coeff() const;

    void add_term(const PauliString& s, cplx coeff);

    PauliOperator& operator+=(const PauliOperator& rhs);
    PauliOperator& operator-=(const PauliOperator& rhs);
    PauliOperator& operator*=(cplx scalar);

    friend PauliOperator operator+(PauliOperator a, const PauliOperator& b) { return a += b; }
    friend PauliOperator operator-(PauliOperator a, const PauliOperator& b) { return a -= b; }
    friend PauliOperator operator-(PauliOperator a) { return a *= -1.0; }
    friend PauliOperator operator*(PauliOperator a, cplx s) { return a *= s; }
    friend PauliOperator operator*(cplx s, PauliOperator a) { return a *= s; }
    friend PauliOperator operator*(const PauliOperator& a, const PauliOperator& b);

    friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

    std::string str() const;

private:
    void prune();

    std::size_t n_ = 0;
    Terms terms_;
};

PauliOperator op_mul(const PauliOperator& a, const PauliOperator& b);
PauliOperator commutator(const PauliOperator& a, const PauliOperator& b);
PauliOperator anticommutator(const PauliOperator& a, const PauliOperator& b);
PauliOperator dagger(const PauliOperator& a);

/// Returns c iff `a` == c·𝟙 after pruning. The zero operator yields 0.
std::optional<cplx> as_identity_multiple(const PauliOperator& a);

/// Product of `p` over all n sites, e.g. ∏σˣ_j.
PauliOperator product_over_sites(std::size_t n, Pauli p);

}  // namespace ptl
