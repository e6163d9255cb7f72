#include <doctest.h>

#include "cbkit/errors.hpp"
#include "cbkit/ordinal.hpp"
#include "support/generators.hpp"
#include "support/order_type.hpp"

using namespace cbkit;
using cbkit::testing::Gen;

namespace {

Ordinal O(const char* text) { return parse_ordinal(text, ParseMode::strict); }
Ordinal N(std::uint64_t n) { return Ordinal::natural(n); }

Ordinal from_digits(const cbkit::testing::Digits& d) {
    std::vector<Ordinal::Term> terms;
    for (int e = 2; e >= 0; --e)
        if (d[2 - e] > 0) terms.push_back({N(static_cast<std::uint64_t>(e)), Natural(static_cast<unsigned long>(d[2 - e]))});
    return Ordinal::from_terms(std::move(terms));
}

}  // namespace

TEST_SUITE("ordinal") {

TEST_CASE("cmp examples") {
    CHECK(compare(N(5), Ordinal::omega()) == std::strong_ordering::less);
    CHECK(compare(O("w^(2)*2+w"), O("w^(2)*3")) == std::strong_ordering::less);
    CHECK(compare(O("w^(w)"), O("w^(w)")) == std::strong_ordering::equal);
    CHECK(O("w^(w)") > O("w^(5)*100+w*7+9"));
    CHECK(O("w+1") > O("w"));
}

TEST_CASE("add examples") {
    CHECK(add(Ordinal::omega(), N(1)) == O("w+1"));
    CHECK(add(N(1), Ordinal::omega()) == Ordinal::omega());
    CHECK(add(O("w^(2)+w"), O("w+1")) == O("w^(2)+w*2+1"));
    CHECK(add(O("w*3+2"), O("w^(w)")) == O("w^(w)"));
    CHECK(add(N(3), N(4)) == N(7));
}

TEST_CASE("mul examples") {
    CHECK(mul(N(2), Ordinal::omega()) == Ordinal::omega());
    CHECK(mul(Ordinal::omega(), N(2)) == O("w*2"));
    CHECK(mul(O("w*2"), Ordinal::omega()) == O("w^(2)"));
    CHECK(mul(O("w+1"), O("w+1")) == O("w^(2)+w+1"));
    CHECK(mul(O("w+1"), N(3)) == O("w*3+1"));
    CHECK(mul(Ordinal{}, O("w")) == Ordinal{});
    CHECK(mul(O("w"), Ordinal{}) == Ordinal{});
}

TEST_CASE("add and mul agree with the order-type oracle below w^3") {
    using cbkit::testing::concat;
    using cbkit::testing::order_type;
    using cbkit::testing::product;
    using cbkit::testing::word_of;

    // The worked example: (w^2 + w) + (w + 1).
    CHECK(from_digits(order_type(concat(word_of({1, 1, 0}), word_of({0, 1, 1})))) == O("w^(2)+w*2+1"));
    // (w*2) * w.
    CHECK(from_digits(order_type(product(word_of({0, 2, 0}), word_of({0, 1, 0})))) == O("w^(2)"));

    Gen g(17);
    for (int i = 0; i < 500; ++i) {
        cbkit::testing::Digits a{g.uniform(0, 2), g.uniform(0, 3), g.uniform(0, 4)};
        cbkit::testing::Digits b{g.uniform(0, 2), g.uniform(0, 3), g.uniform(0, 4)};
        CAPTURE(from_digits(a));
        CAPTURE(from_digits(b));
        CHECK(add(from_digits(a), from_digits(b)) == from_digits(order_type(concat(word_of(a), word_of(b)))));

        // Products that stay below w^3.
        cbkit::testing::Digits c{0, g.uniform(0, 2), g.uniform(0, 4)};
        cbkit::testing::Digits d{0, g.uniform(0, 2), g.uniform(0, 4)};
        const auto wc = word_of(c);
        const auto wd = word_of(d);
        const bool fits = wc.empty() || wd.empty() ||
                          *std::max_element(wc.begin(), wc.end()) + *std::max_element(wd.begin(), wd.end()) <= 2;
        if (fits)
            CHECK(mul(from_digits(c), from_digits(d)) == from_digits(order_type(product(wc, wd))));
    }
}

TEST_CASE("omega_pow") {
    CHECK(omega_pow(Ordinal{}) == N(1));
    CHECK(omega_pow(N(1)) == Ordinal::omega());
    CHECK(omega_pow(Ordinal::omega()) == O("w^(w)"));
    Gen g(3);
    for (int i = 0; i < 200; ++i) {
        const Ordinal a = g.nested(), b = g.nested();
        if (a < b) CHECK(omega_pow(a) < omega_pow(b));
    }
}

TEST_CASE("left_sub") {
    CHECK(left_sub(N(1), Ordinal::omega()) == Ordinal::omega());
    CHECK(left_sub(Ordinal::omega(), O("w*2")) == Ordinal::omega());
    CHECK_THROWS_AS(left_sub(O("w*2"), Ordinal::omega()), Undefined);
    CHECK(left_sub(O("w^(2)+w*3+1"), O("w^(2)*2+5")) == O("w^(2)+5"));
    CHECK(left_sub(N(3), N(7)) == N(4));
    CHECK(left_sub(O("w+2"), O("w+2")) == Ordinal{});
}

TEST_CASE("fundamental sequences") {
    CHECK(fundamental_seq(Ordinal::omega(), 3) == N(4));
    CHECK(fundamental_seq(O("w^(2)"), 2) == O("w*3"));
    CHECK(fundamental_seq(O("w^(w)"), 2) == O("w^(3)"));
    CHECK(fundamental_seq(O("w^(2)+w"), 0) == O("w^(2)+1"));
    CHECK(fundamental_seq(O("w*2"), 1) == O("w+2"));
    CHECK(fundamental_seq(O("w^(w^(w))"), 1) == O("w^(w^(2))"));
    CHECK_THROWS_AS(fundamental_seq(Ordinal{}, 0), NotLimit);
    CHECK_THROWS_AS(fundamental_seq(O("w+1"), 0), NotLimit);
    CHECK_THROWS_AS(fundamental_seq(N(4), 0), NotLimit);
}

TEST_CASE("fundamental sequences increase to their limit") {
    Gen g(5);
    for (int i = 0; i < 100; ++i) {
        const Ordinal lambda = i % 2 ? g.limit_below_omega_omega() : [&] {
            for (;;) {
                Ordinal o = g.nested();
                if (o.is_limit()) return o;
            }
        }();
        CAPTURE(lambda);
        for (std::uint64_t n = 0; n < 20; ++n) {
            const Ordinal a = fundamental_seq(lambda, n);
            const Ordinal b = fundamental_seq(lambda, n + 1);
            CHECK(a < b);
            CHECK(b < lambda);
            CHECK(is_canonical(a));
        }
        // Cofinality: every sampled beta < lambda is eventually exceeded.
        for (int k = 0; k < 5; ++k) {
            Ordinal beta = g.coin() ? g.below_omega_omega() : g.nested();
            if (!(beta < lambda)) continue;
            bool found = false;
            for (std::uint64_t n = 0; n <= 10000 && !found; ++n) found = fundamental_seq(lambda, n) > beta;
            CHECK_MESSAGE(found, "no fundamental-sequence element above " << beta);
        }
    }
}

TEST_CASE("algebraic laws on random ordinals") {
    Gen g(2024);
    for (int i = 0; i < 500; ++i) {
        const Ordinal a = g.below_omega_omega(), b = g.below_omega_omega(), c = g.below_omega_omega();
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(add(a, Ordinal{}) == a);
        CHECK(add(Ordinal{}, a) == a);
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        if (b < c) CHECK(add(a, b) < add(a, c));
        const Ordinal lo = std::min(a, b), hi = std::max(a, b);
        CHECK(add(lo, left_sub(lo, hi)) == hi);
        CHECK(is_canonical(add(a, b)));
        CHECK(is_canonical(mul(a, b)));
    }
}

TEST_CASE("laws with nested exponents") {
    Gen g(99);
    for (int i = 0; i < 200; ++i) {
        const Ordinal a = g.nested(), b = g.nested(), c = g.nested();
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        const Ordinal lo = std::min(a, b), hi = std::max(a, b);
        CHECK(add(lo, left_sub(lo, hi)) == hi);
    }
}

TEST_CASE("compare is a total order") {
    Gen g(7);
    for (int i = 0; i < 500; ++i) {
        const Ordinal a = g.below_omega_omega(2, 2, 2), b = g.below_omega_omega(2, 2, 2),
                      c = g.below_omega_omega(2, 2, 2);
        if (a <= b && b <= a) CHECK(a == b);
        if (a <= b && b <= c) CHECK(a <= c);
        CHECK(((a < b) + (a == b) + (a > b)) == 1);
    }
}

TEST_CASE("huge coefficients do not overflow") {
    const Ordinal big = parse_ordinal("w*123456789012345678901234567890+1");
    const Ordinal sum = add(big, big);
    CHECK(format_ordinal(sum) == "w*246913578024691357802469135780+1");
}

TEST_CASE("predicates") {
    CHECK(Ordinal{}.is_zero());
    CHECK(N(3).is_successor());
    CHECK(O("w^(2)").is_limit());
    CHECK(O("w+1").predecessor() == Ordinal::omega());
    CHECK_THROWS_AS(Ordinal::omega().predecessor(), Undefined);
    CHECK(O("w^(w^(2))").height() == 2);
    CHECK_THROWS_AS(Ordinal::from_terms({{N(1), Natural(1)}, {N(2), Natural(1)}}), NotCanonical);
    CHECK_THROWS_AS(Ordinal::from_terms({{N(1), Natural(0)}}), NotCanonical);
}

}  // TEST_SUITE

TEST_SUITE("ordinal text") {

TEST_CASE("parse examples") {
    const Ordinal expected = Ordinal::from_terms(
        {{Ordinal::omega(), Natural(2)}, {N(1), Natural(3)}, {Ordinal{}, Natural(5)}});
    CHECK(parse_ordinal("w^(w)*2+w*3+5") == expected);
    CHECK(parse_ordinal("0") == Ordinal{});
    CHECK(parse_ordinal("w+w") == O("w*2"));
    CHECK_THROWS_AS(parse_ordinal("w+w", ParseMode::strict), NotCanonical);
    CHECK(parse_ordinal("1+w") == Ordinal::omega());
    CHECK(parse_ordinal(" w ^ ( 2 ) * 3 ") == O("w^(2)*3"));
    CHECK(parse_ordinal("w^(0)") == N(1));
    CHECK(parse_ordinal("w*0+4") == N(4));
}

TEST_CASE("strict mode accepts exactly the canonical rendering") {
    CHECK(parse_ordinal("w^(w)*2+w*3+5", ParseMode::strict) == parse_ordinal("w^(w)*2+w*3+5"));
    CHECK_THROWS_AS(parse_ordinal("w^(1)", ParseMode::strict), NotCanonical);
    CHECK_THROWS_AS(parse_ordinal("w*1", ParseMode::strict), NotCanonical);
    CHECK_THROWS_AS(parse_ordinal("1+w", ParseMode::strict), NotCanonical);
    CHECK_THROWS_AS(parse_ordinal("007", ParseMode::strict), NotCanonical);
}

TEST_CASE("syntax errors carry a position") {
    auto position_of = [](const char* text) -> std::size_t {
        try {
            parse_ordinal(text);
        } catch (const SyntaxError& e) {
            return e.position();
        }
        return 999;
    };
    CHECK(position_of("") == 0);
    CHECK(position_of("w^2") == 2);
    CHECK(position_of("w+") == 2);
    CHECK(position_of("w^(w") == 4);
    CHECK(position_of("x") == 0);
    CHECK(position_of("w*") == 2);
    CHECK(position_of("3 4") == 2);
}

TEST_CASE("format then parse is the identity") {
    Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const Ordinal a = i % 3 ? g.below_omega_omega() : g.nested();
        const std::string text = format_ordinal(a);
        CAPTURE(text);
        CHECK(parse_ordinal(text, ParseMode::strict) == a);
        CHECK(format_ordinal(parse_ordinal(text)) == text);
    }
}

}  // TEST_SUITE
