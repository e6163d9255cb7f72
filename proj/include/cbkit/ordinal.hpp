#pragma once

// Countable ordinals below epsilon_0 in Cantor normal form.
//
// An ordinal is stored as its normal form
//
//     w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,   e1 > e2 > ... > ek, ci >= 1
//
// where every exponent is itself an Ordinal. The empty sum is 0. Values are
// immutable once built; every function here is pure.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cbkit {

using Natural = mpz_class;

class Ordinal {
public:
    struct Term;

    /// Zero.
    Ordinal() = default;

    static Ordinal natural(const Natural& n);
    static Ordinal natural(std::uint64_t n) { return natural(Natural(n)); }
    static Ordinal omega();

    /// Builds an ordinal from explicit terms. Throws NotCanonical unless the
    /// exponents are strictly decreasing and every coefficient is positive.
    static Ordinal from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_finite() const noexcept;
    bool is_successor() const noexcept;
    /// Nonzero and not a successor.
    bool is_limit() const noexcept;

    /// The value as a natural number, if finite.
    std::optional<Natural> as_natural() const;

    /// alpha for alpha + 1. Throws Undefined on zero or limits.
    Ordinal predecessor() const;

    /// Exponent of the leading term; 0 for the zero ordinal.
    const Ordinal& leading_exponent() const;

    /// Number of nested exponent levels (0 for naturals, 1 below w^w, ...).
    std::size_t height() const noexcept;

    friend bool operator==(const Ordinal& a, const Ordinal& b);
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

private:
    explicit Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {}

    friend Ordinal add(const Ordinal&, const Ordinal&);
    friend Ordinal mul(const Ordinal&, const Ordinal&);
    friend Ordinal omega_pow(const Ordinal&);
    friend Ordinal left_sub(const Ordinal&, const Ordinal&);
    friend Ordinal fundamental_seq(const Ordinal&, std::uint64_t);

    std::vector<Term> terms_;
};

struct Ordinal::Term {
    Ordinal exponent;
    Natural coefficient;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Total order on normal forms. Equal iff the normal forms are identical.
std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

/// Ordinal sum a + b (order type of a followed by b).
Ordinal add(const Ordinal& a, const Ordinal& b);

/// Ordinal product a * b.
Ordinal mul(const Ordinal& a, const Ordinal& b);

/// w^a.
Ordinal omega_pow(const Ordinal& a);

/// The unique g with b + g = a. Throws Undefined if b > a.
Ordinal left_sub(const Ordinal& b, const Ordinal& a);

/// n-th element of the canonical fundamental sequence of a limit ordinal:
///   (g + w^(d+1))[n] = g + w^d * (n+1)
///   (g + w^m)[n]     = g + w^(m[n])        for limit m
/// Throws NotLimit if `lambda` is zero or a successor.
Ordinal fundamental_seq(const Ordinal& lambda, std::uint64_t n);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

enum class ParseMode {
    /// Evaluates the expression with ordinal arithmetic ("w+w" -> w*2).
    normalizing,
    /// Rejects any text that is not the canonical rendering of its value.
    strict,
};

/// Grammar:
///   expr := term ('+' term)*
///   term := 'w' ('^' '(' expr ')')? ('*' nat)? | nat
///   nat  := [0-9]+
/// Whitespace between tokens is ignored.
Ordinal parse_ordinal(std::string_view text, ParseMode mode = ParseMode::normalizing);

/// Canonical rendering, e.g. "w^(w)*2+w*3+5". Exponent 1 prints as "w",
/// exponent 0 as the bare coefficient.
std::string format_ordinal(const Ordinal& a);

std::ostream& operator<<(std::ostream& os, const Ordinal& a);

/// Canonicity check over the whole recursive structure.
bool is_canonical(const Ordinal& a);

}  // namespace cbkit
