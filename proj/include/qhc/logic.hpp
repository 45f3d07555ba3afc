#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qhc::logic {

using Bits = std::vector<int>;

/// Input/output strings are most-significant-first: for a three-input table
/// the string "011" means (α, β, γ) = (0, 1, 1) and maps to row index 3.
std::uint32_t index_of(std::span<const int> bits);
Bits bits_of(std::uint32_t index, int width);
std::string bit_string(std::uint32_t index, int width);
std::uint32_t parse_bit_string(std::string_view s);

class TruthTable {
public:
    /// rows[i] holds the l output bits of input i, packed most-significant-first.
    TruthTable(int input_arity, int output_arity, std::vector<std::uint32_t> rows);

    int input_arity() const noexcept { return k_; }
    int output_arity() const noexcept { return l_; }
    std::uint32_t row_count() const noexcept { return static_cast<std::uint32_t>(rows_.size()); }

    std::uint32_t row(std::uint32_t input) const { return rows_.at(input); }
    int output_bit(std::uint32_t input, int output_index) const;

    /// Throws Error(UnknownInput) when the input length differs from k.
    Bits eval_output(std::span<const int> input) const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    int k_;
    int l_;
    std::vector<std::uint32_t> rows_;
};

/// One of: and, or, xor, nand, nor, nxor, half_adder, full_adder.
/// half_adder outputs are (S, C); full_adder outputs are (S, C_out).
TruthTable builtin_table(std::string_view name);
std::vector<std::string> builtin_table_names();

/// n-bit ripple adder: inputs (α₁..αₙ, β₁..βₙ, γ), outputs the (n+1)-bit sum
/// A + B + γ written most-significant-first.
TruthTable adder_table(int n);

/// Multilinear integer polynomial in k Boolean-ring variables. A monomial is
/// keyed by the bitmask of its variables (bit i is variable i; variable 0 is α).
class RingPolynomial {
public:
    explicit RingPolynomial(int arity) : k_(arity) {}

    static RingPolynomial constant(int arity, long long c);
    static RingPolynomial variable(int arity, int index);

    int arity() const noexcept { return k_; }
    const std::map<std::uint32_t, long long>& terms() const noexcept { return terms_; }
    long long coefficient(std::uint32_t monomial) const;
    void add_term(std::uint32_t monomial, long long c);
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Throws Error(BadInput) when point.size() != arity.
    double evaluate(std::span<const double> point) const;

    std::string to_string() const;

    friend RingPolynomial operator+(const RingPolynomial& a, const RingPolynomial& b);
    friend RingPolynomial operator-(const RingPolynomial& a, const RingPolynomial& b);
    /// Product with idempotent reduction (x² = x).
    friend RingPolynomial operator*(const RingPolynomial& a, const RingPolynomial& b);
    friend bool operator==(const RingPolynomial&, const RingPolynomial&) = default;

private:
    int k_;
    std::map<std::uint32_t, long long> terms_;
};

/// Unique multilinear polynomial of one output column (Möbius inversion).
RingPolynomial to_ring_polynomial(const TruthTable& t, int output_index);

/// Reduced product Π_j (1 − μ_j): zero exactly on inputs with some output 1.
RingPolynomial annihilator(const TruthTable& t);

double eval_poly(const RingPolynomial& p, std::span<const double> point);

} // namespace qhc::logic
