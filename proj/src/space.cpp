#include "cbkit/space.hpp"

#include <algorithm>
#include <memory>

#include "cbkit/errors.hpp"

namespace cbkit {

CbChar CbChar::make(Ordinal rank, Natural count) {
    if (count < 0) throw Undefined("negative count");
    if (count == 0 && !rank.is_zero()) throw Undefined("empty space must have rank 0");
    return CbChar{std::move(rank), std::move(count)};
}

std::strong_ordering operator<=>(const CbChar& a, const CbChar& b) {
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    const int c = cmp(a.count, b.count);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

CbChar derivative(const CbChar& s) { return derivative_steps(s, Ordinal::natural(1)); }

CbChar derivative_steps(const CbChar& s, const Ordinal& beta) {
    if (s.is_empty()) return CbChar::empty();
    if (beta < s.rank) return CbChar{left_sub(beta, s.rank), s.count};
    if (beta == s.rank) return CbChar{Ordinal{}, s.count};
    return CbChar::empty();
}

CbChar union_char(const CbChar& a, const CbChar& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    if (a.rank < b.rank) return b;
    if (b.rank < a.rank) return a;
    return CbChar{a.rank, a.count + b.count};
}

bool homeomorphic(const CbChar& a, const CbChar& b) { return a == b; }

namespace {

// Ordinals below `bound`, grouped by weight and memoized. A term w^e * c
// weighs c * (1 + weight(e)); exponents come from a nested enumerator below
// lead(bound) + 1, which bottoms out at a finite bound.
class WeightEnumerator {
public:
    explicit WeightEnumerator(Ordinal bound) : bound_(std::move(bound)) {
        if (!bound_.is_finite())
            exponents_ = std::make_unique<WeightEnumerator>(add(bound_.leading_exponent(), Ordinal::natural(1)));
    }

    const std::vector<Ordinal>& of_weight(std::size_t w) {
        while (by_weight_.size() <= w) extend();
        return by_weight_[w];
    }

private:
    void extend() {
        const std::size_t w = by_weight_.size();
        std::vector<std::pair<Ordinal, std::size_t>> exps;
        if (exponents_) {
            for (std::size_t v = 0; v < w; ++v)
                for (const auto& e : exponents_->of_weight(v)) exps.emplace_back(e, v);
            std::sort(exps.begin(), exps.end(),
                      [](const auto& x, const auto& y) { return x.first > y.first; });
        } else {
            exps.emplace_back(Ordinal{}, 0);
        }
        std::vector<Ordinal> out;
        std::vector<Ordinal::Term> acc;
        build(exps, 0, w, acc, out);
        std::sort(out.begin(), out.end());
        by_weight_.push_back(std::move(out));
    }

    void build(const std::vector<std::pair<Ordinal, std::size_t>>& exps, std::size_t from,
               std::size_t remaining, std::vector<Ordinal::Term>& acc, std::vector<Ordinal>& out) {
        if (remaining == 0) {
            out.push_back(Ordinal::from_terms(acc));
            return;
        }
        for (std::size_t i = from; i < exps.size(); ++i) {
            const std::size_t unit = 1 + exps[i].second;
            for (std::size_t c = 1; c * unit <= remaining; ++c) {
                acc.push_back(Ordinal::Term{exps[i].first, Natural(static_cast<unsigned long>(c))});
                // Appending lower terms only increases the value.
                const bool below = Ordinal::from_terms(acc) < bound_;
                if (below) build(exps, i + 1, remaining - c * unit, acc, out);
                acc.pop_back();
                if (!below) break;
            }
        }
    }

    Ordinal bound_;
    std::unique_ptr<WeightEnumerator> exponents_;
    std::vector<std::vector<Ordinal>> by_weight_{{Ordinal{}}};
};

}  // namespace

std::vector<Ordinal> census_ranks(const Ordinal& rank_bound, const CensusLimits& limits) {
    std::vector<Ordinal> ranks;
    if (auto n = rank_bound.as_natural()) {
        if (*n > limits.max_classes)
            throw BudgetExceeded("rank bound " + n->get_str() + " exceeds census cap " +
                                 std::to_string(limits.max_classes));
        for (unsigned long i = 0; i < n->get_ui(); ++i) ranks.push_back(Ordinal::natural(i));
        return ranks;
    }
    // Infinitely many ranks lie below an infinite bound; weight classes are
    // finite, so this fills the budget.
    WeightEnumerator gen(rank_bound);
    for (std::size_t w = 0; ranks.size() < limits.max_ranks; ++w) {
        for (const auto& o : gen.of_weight(w)) {
            ranks.push_back(o);
            if (ranks.size() == limits.max_ranks) break;
        }
    }
    std::sort(ranks.begin(), ranks.end());
    return ranks;
}

std::vector<CbChar> census(const Ordinal& rank_bound, const Natural& count_bound,
                           const CensusLimits& limits) {
    if (count_bound < 0) throw Undefined("negative count bound");
    const auto ranks = census_ranks(rank_bound, limits);
    if (ranks.empty()) return {};
    const Natural total = Natural(static_cast<unsigned long>(ranks.size())) * count_bound + 1;
    if (total > limits.max_classes)
        throw BudgetExceeded("census would list " + total.get_str() + " classes (cap " +
                             std::to_string(limits.max_classes) + ")");
    std::vector<CbChar> out;
    out.reserve(total.get_ui());
    out.push_back(CbChar::empty());
    for (const auto& r : ranks)
        for (Natural p = 1; p <= count_bound; ++p) out.push_back(CbChar{r, p});
    std::sort(out.begin(), out.end());
    return out;
}

Cardinality class_count(const AmbientDescriptor& e) {
    struct Visitor {
        Cardinality operator()(const FinitePolish& f) const {
            if (f.n < 0) throw Undefined("negative cardinality");
            return Finite{f.n + 1};
        }
        Cardinality operator()(const CountablyInfinitePolish&) const { return Aleph0{}; }
        Cardinality operator()(const UncountablePolish&) const { return Aleph1{}; }
    };
    return std::visit(Visitor{}, e);
}

}  // namespace cbkit
