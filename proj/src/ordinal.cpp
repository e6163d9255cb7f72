#include "cbkit/ordinal.hpp"

#include <algorithm>
#include <ostream>

#include "cbkit/errors.hpp"

namespace cbkit {

namespace {

const Ordinal& zero_ordinal() {
    static const Ordinal z;
    return z;
}

std::strong_ordering compare_natural(const Natural& a, const Natural& b) {
    const int c = cmp(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

Ordinal Ordinal::natural(const Natural& n) {
    if (n < 0) throw Undefined("negative natural");
    if (n == 0) return Ordinal{};
    return Ordinal(std::vector<Term>{Term{Ordinal{}, n}});
}

Ordinal Ordinal::omega() {
    return Ordinal(std::vector<Term>{Term{natural(1), Natural(1)}});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient < 1) throw NotCanonical("coefficient must be positive");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
            throw NotCanonical("exponents must be strictly decreasing");
    }
    return Ordinal(std::move(terms));
}

bool Ordinal::is_finite() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_successor() const noexcept {
    return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const noexcept {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

std::optional<Natural> Ordinal::as_natural() const {
    if (terms_.empty()) return Natural(0);
    if (is_finite()) return terms_[0].coefficient;
    return std::nullopt;
}

Ordinal Ordinal::predecessor() const {
    if (!is_successor()) throw Undefined("predecessor of zero or a limit ordinal");
    std::vector<Term> t = terms_;
    t.back().coefficient -= 1;
    if (t.back().coefficient == 0) t.pop_back();
    return Ordinal(std::move(t));
}

const Ordinal& Ordinal::leading_exponent() const {
    return terms_.empty() ? zero_ordinal() : terms_.front().exponent;
}

std::size_t Ordinal::height() const noexcept {
    std::size_t h = 0;
    for (const auto& t : terms_) {
        if (!t.exponent.is_zero()) h = std::max(h, 1 + t.exponent.height());
    }
    return h;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
        if (auto c = compare_natural(a.terms_[i].coefficient, b.terms_[i].coefficient); c != 0)
            return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& lead = b.terms_.front().exponent;
    std::vector<Ordinal::Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    // Terms of a below b's leading exponent are absorbed.
    for (const auto& t : a.terms_) {
        if (t.exponent > lead) {
            out.push_back(t);
        } else {
            if (t.exponent == lead) {
                out.push_back(Ordinal::Term{lead, t.coefficient + b.terms_.front().coefficient});
                out.insert(out.end(), b.terms_.begin() + 1, b.terms_.end());
                return Ordinal(std::move(out));
            }
            break;
        }
    }
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return Ordinal(std::move(out));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal{};
    const auto& lead = a.terms_.front();
    // Left distributivity over b's terms:
    //   a * w^e * c = w^(lead + e) * c   for e > 0
    //   a * c       = w^lead * (c0 * c) + rest(a)
    Ordinal result;
    for (const auto& t : b.terms_) {
        Ordinal piece;
        if (t.exponent.is_zero()) {
            std::vector<Ordinal::Term> terms = a.terms_;
            terms.front().coefficient = lead.coefficient * t.coefficient;
            piece = Ordinal(std::move(terms));
        } else {
            piece = Ordinal(std::vector<Ordinal::Term>{
                Ordinal::Term{add(lead.exponent, t.exponent), t.coefficient}});
        }
        result = add(result, piece);
    }
    return result;
}

Ordinal omega_pow(const Ordinal& a) {
    return Ordinal(std::vector<Ordinal::Term>{Ordinal::Term{a, Natural(1)}});
}

Ordinal left_sub(const Ordinal& b, const Ordinal& a) {
    if (b > a) throw Undefined("left_sub: " + format_ordinal(b) + " > " + format_ordinal(a));
    std::size_t i = 0;
    while (i < b.terms_.size() && b.terms_[i] == a.terms_[i]) ++i;
    if (i == b.terms_.size()) {
        return Ordinal(std::vector<Ordinal::Term>(a.terms_.begin() + i, a.terms_.end()));
    }
    // First difference: since b < a, either a's exponent is larger (b's tail is
    // absorbed) or the exponents agree and a's coefficient is larger.
    std::vector<Ordinal::Term> out(a.terms_.begin() + i, a.terms_.end());
    if (out.front().exponent == b.terms_[i].exponent)
        out.front().coefficient -= b.terms_[i].coefficient;
    return Ordinal(std::move(out));
}

Ordinal fundamental_seq(const Ordinal& lambda, std::uint64_t n) {
    if (!lambda.is_limit())
        throw NotLimit(format_ordinal(lambda) + " is not a limit ordinal");
    std::vector<Ordinal::Term> prefix = lambda.terms_;
    const Ordinal mu = prefix.back().exponent;
    prefix.back().coefficient -= 1;
    if (prefix.back().coefficient == 0) prefix.pop_back();
    Ordinal step;
    if (mu.is_successor()) {
        step = Ordinal(std::vector<Ordinal::Term>{
            Ordinal::Term{mu.predecessor(), Natural(n) + 1}});
    } else {
        step = omega_pow(fundamental_seq(mu, n));
    }
    return add(Ordinal(std::move(prefix)), step);
}

bool is_canonical(const Ordinal& a) {
    const auto& terms = a.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient < 1) return false;
        if (!is_canonical(terms[i].exponent)) return false;
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) return false;
    }
    return true;
}

std::string format_ordinal(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += '+';
        if (t.exponent.is_zero()) {
            out += t.coefficient.get_str();
            continue;
        }
        out += 'w';
        if (t.exponent != Ordinal::natural(1)) out += "^(" + format_ordinal(t.exponent) + ")";
        if (t.coefficient != 1) out += "*" + t.coefficient.get_str();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << format_ordinal(a); }

}  // namespace cbkit
