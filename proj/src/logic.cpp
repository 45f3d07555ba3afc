#include "qhc/logic.hpp"

#include <bit>
#include <functional>

#include "qhc/error.hpp"

namespace qhc::logic {

std::uint32_t index_of(std::span<const int> bits) {
    std::uint32_t idx = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw Error(ErrorCode::BadInput, "bit values must be 0 or 1");
        idx = (idx << 1) | static_cast<std::uint32_t>(b);
    }
    return idx;
}

Bits bits_of(std::uint32_t index, int width) {
    Bits b(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) b[static_cast<std::size_t>(i)] = static_cast<int>((index >> (width - 1 - i)) & 1u);
    return b;
}

std::string bit_string(std::uint32_t index, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if ((index >> (width - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::uint32_t parse_bit_string(std::string_view s) {
    std::uint32_t idx = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw Error(ErrorCode::BadInput, "bit strings contain only 0 and 1");
        idx = (idx << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return idx;
}

// ---------------------------------------------------------------------------

TruthTable::TruthTable(int input_arity, int output_arity, std::vector<std::uint32_t> rows)
    : k_(input_arity), l_(output_arity), rows_(std::move(rows)) {
    if (k_ < 1 || k_ > 16 || l_ < 1 || l_ > 16) throw Error(ErrorCode::BadInput, "truth table arity out of range");
    if (rows_.size() != (std::size_t{1} << k_)) throw Error(ErrorCode::BadInput, "truth table needs exactly 2^k rows");
    for (auto r : rows_)
        if (r >> l_) throw Error(ErrorCode::BadInput, "output row wider than l bits");
}

int TruthTable::output_bit(std::uint32_t input, int output_index) const {
    if (output_index < 0 || output_index >= l_) throw Error(ErrorCode::BadInput, "output index out of range");
    return static_cast<int>((row(input) >> (l_ - 1 - output_index)) & 1u);
}

Bits TruthTable::eval_output(std::span<const int> input) const {
    if (static_cast<int>(input.size()) != k_)
        throw Error(ErrorCode::UnknownInput, "input length " + std::to_string(input.size()) + " != " + std::to_string(k_));
    return bits_of(row(index_of(input)), l_);
}

namespace {

TruthTable tabulate(int k, int l, const std::function<std::uint32_t(const Bits&)>& f) {
    std::vector<std::uint32_t> rows(std::size_t{1} << k);
    for (std::uint32_t i = 0; i < rows.size(); ++i) rows[i] = f(bits_of(i, k));
    return TruthTable(k, l, std::move(rows));
}

} // namespace

TruthTable builtin_table(std::string_view name) {
    using B = const Bits&;
    if (name == "and") return tabulate(2, 1, [](B x) { return std::uint32_t(x[0] & x[1]); });
    if (name == "or") return tabulate(2, 1, [](B x) { return std::uint32_t(x[0] | x[1]); });
    if (name == "xor") return tabulate(2, 1, [](B x) { return std::uint32_t(x[0] ^ x[1]); });
    if (name == "nand") return tabulate(2, 1, [](B x) { return std::uint32_t(!(x[0] & x[1])); });
    if (name == "nor") return tabulate(2, 1, [](B x) { return std::uint32_t(!(x[0] | x[1])); });
    if (name == "nxor") return tabulate(2, 1, [](B x) { return std::uint32_t(!(x[0] ^ x[1])); });
    if (name == "half_adder")
        return tabulate(2, 2, [](B x) {
            const int total = x[0] + x[1];
            return std::uint32_t(((total & 1) << 1) | (total >> 1));
        });
    if (name == "full_adder")
        return tabulate(3, 2, [](B x) {
            const int total = x[0] + x[1] + x[2];
            return std::uint32_t(((total & 1) << 1) | (total >> 1));
        });
    throw Error(ErrorCode::BadInput, "unknown builtin truth table '" + std::string(name) + "'");
}

std::vector<std::string> builtin_table_names() {
    return {"and", "or", "xor", "nand", "nor", "nxor", "half_adder", "full_adder"};
}

TruthTable adder_table(int n) {
    if (n < 1 || n > 7) throw Error(ErrorCode::BadInput, "adder width must be in [1, 7]");
    return tabulate(2 * n + 1, n + 1, [n](const Bits& x) {
        std::uint32_t a = 0, b = 0;
        for (int i = 0; i < n; ++i) {
            a = (a << 1) | std::uint32_t(x[static_cast<std::size_t>(i)]);
            b = (b << 1) | std::uint32_t(x[static_cast<std::size_t>(n + i)]);
        }
        return a + b + std::uint32_t(x[static_cast<std::size_t>(2 * n)]);
    });
}

// ---------------------------------------------------------------------------

RingPolynomial RingPolynomial::constant(int arity, long long c) {
    RingPolynomial p(arity);
    p.add_term(0, c);
    return p;
}

RingPolynomial RingPolynomial::variable(int arity, int index) {
    if (index < 0 || index >= arity) throw Error(ErrorCode::BadInput, "variable index out of range");
    RingPolynomial p(arity);
    p.add_term(std::uint32_t{1} << index, 1);
    return p;
}

long long RingPolynomial::coefficient(std::uint32_t monomial) const {
    const auto it = terms_.find(monomial);
    return it == terms_.end() ? 0 : it->second;
}

void RingPolynomial::add_term(std::uint32_t monomial, long long c) {
    if (monomial >> k_) throw Error(ErrorCode::BadInput, "monomial references a variable beyond the arity");
    auto& slot = terms_[monomial];
    slot += c;
    if (slot == 0) terms_.erase(monomial);
}

double RingPolynomial::evaluate(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != k_) throw Error(ErrorCode::BadInput, "point length differs from arity");
    double total = 0.0;
    for (const auto& [mono, c] : terms_) {
        double term = static_cast<double>(c);
        for (int i = 0; i < k_; ++i)
            if ((mono >> i) & 1u) term *= point[static_cast<std::size_t>(i)];
        total += term;
    }
    return total;
}

std::string RingPolynomial::to_string() const {
    static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    if (terms_.empty()) return "0";
    std::string out;
    // Ascending degree, then ascending mask, reads like α+β−2αβ.
    std::vector<std::pair<std::uint32_t, long long>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
        const int dx = std::popcount(x.first), dy = std::popcount(y.first);
        return dx != dy ? dx < dy : x.first < y.first;
    });
    for (const auto& [mono, c] : ordered) {
        const long long mag = c < 0 ? -c : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mono == 0 || mag != 1) out += std::to_string(mag);
        for (int i = 0; i < k_; ++i)
            if ((mono >> i) & 1u) out += (i < 8 ? names[i] : ("x" + std::to_string(i)).c_str());
    }
    return out;
}

RingPolynomial operator+(const RingPolynomial& a, const RingPolynomial& b) {
    if (a.k_ != b.k_) throw Error(ErrorCode::BadInput, "polynomial arity mismatch");
    RingPolynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

RingPolynomial operator-(const RingPolynomial& a, const RingPolynomial& b) {
    if (a.k_ != b.k_) throw Error(ErrorCode::BadInput, "polynomial arity mismatch");
    RingPolynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

RingPolynomial operator*(const RingPolynomial& a, const RingPolynomial& b) {
    if (a.k_ != b.k_) throw Error(ErrorCode::BadInput, "polynomial arity mismatch");
    RingPolynomial r(a.k_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma | mb, ca * cb);
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Row index of the Boolean point whose set variables are exactly `mask`.
std::uint32_t row_of_mask(std::uint32_t mask, int k) {
    std::uint32_t idx = 0;
    for (int i = 0; i < k; ++i)
        if ((mask >> i) & 1u) idx |= std::uint32_t{1} << (k - 1 - i);
    return idx;
}

} // namespace

RingPolynomial to_ring_polynomial(const TruthTable& t, int output_index) {
    const int k = t.input_arity();
    const std::uint32_t n = std::uint32_t{1} << k;
    std::vector<long long> f(n);
    for (std::uint32_t mask = 0; mask < n; ++mask) f[mask] = t.output_bit(row_of_mask(mask, k), output_index);
    // In-place Möbius transform over the subset lattice.
    for (int i = 0; i < k; ++i)
        for (std::uint32_t mask = 0; mask < n; ++mask)
            if ((mask >> i) & 1u) f[mask] -= f[mask ^ (std::uint32_t{1} << i)];
    RingPolynomial p(k);
    for (std::uint32_t mask = 0; mask < n; ++mask)
        if (f[mask] != 0) p.add_term(mask, f[mask]);
    return p;
}

RingPolynomial annihilator(const TruthTable& t) {
    const int k = t.input_arity();
    RingPolynomial acc = RingPolynomial::constant(k, 1);
    const RingPolynomial one = RingPolynomial::constant(k, 1);
    for (int j = 0; j < t.output_arity(); ++j) acc = acc * (one - to_ring_polynomial(t, j));
    return acc;
}

double eval_poly(const RingPolynomial& p, std::span<const double> point) { return p.evaluate(point); }

} // namespace qhc::logic
