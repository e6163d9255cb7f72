#include <cctype>

#include "cbkit/errors.hpp"
#include "cbkit/ordinal.hpp"

namespace cbkit {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Ordinal parse() {
        Ordinal value = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    // Terms are summed left to right with ordinal addition, so "1+w" is w.
    Ordinal expr() {
        Ordinal value = term();
        while (accept('+')) value = add(value, term());
        return value;
    }

    Ordinal term() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected term");
        if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) return Ordinal::natural(nat());
        if (!accept('w')) fail("expected 'w' or a number");
        Ordinal exponent = Ordinal::natural(1);
        if (accept('^')) {
            expect('(');
            exponent = expr();
            expect(')');
        }
        Natural coefficient = 1;
        if (accept('*')) coefficient = nat();
        return mul(omega_pow(exponent), Ordinal::natural(coefficient));
    }

    Natural nat() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Natural(std::string(text_.substr(start, pos_ - start)));
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text, ParseMode mode) {
    Ordinal value = Parser(text).parse();
    if (mode == ParseMode::strict) {
        std::string compact;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
        const std::string canonical = format_ordinal(value);
        if (compact != canonical)
            throw NotCanonical("'" + std::string(text) + "' is not canonical; expected '" + canonical + "'");
    }
    return value;
}

}  // namespace cbkit
