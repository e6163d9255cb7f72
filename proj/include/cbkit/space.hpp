#pragma once

// Homeomorphism classes of compact countable Hausdorff spaces, represented by
// their Cantor-Bendixson characteristic (rank, count). A class with rank a >= 1
// and count p >= 1 is the ordinal space w^a * p + 1; rank 0 with count p is the
// p-point discrete space; (0, 0) is the empty space.

#include <cstdint>
#include <variant>
#include <vector>

#include "cbkit/ordinal.hpp"

namespace cbkit {

struct CbChar {
    Ordinal rank;
    Natural count;

    /// Throws Undefined if count is 0 while rank is not.
    static CbChar make(Ordinal rank, Natural count);

    static CbChar empty() { return CbChar{}; }

    bool is_empty() const { return count == 0; }

    friend bool operator==(const CbChar&, const CbChar&) = default;
};

/// Lexicographic by (rank, count).
std::strong_ordering operator<=>(const CbChar& a, const CbChar& b);

/// Characteristic of the derived set of a representative.
CbChar derivative(const CbChar& s);

/// Characteristic of the beta-th Cantor-Bendixson derivative.
CbChar derivative_steps(const CbChar& s, const Ordinal& beta);

/// Characteristic of a disjoint union of compact representatives.
CbChar union_char(const CbChar& a, const CbChar& b);

/// Compact countable metric spaces are homeomorphic iff their characteristics
/// agree.
bool homeomorphic(const CbChar& a, const CbChar& b);

struct CensusLimits {
    /// How many ranks are listed when the rank bound is infinite.
    std::size_t max_ranks = 50;
    /// Upper bound on the number of classes returned.
    std::size_t max_classes = 100000;
};

/// The ranks below `rank_bound` that a census enumerates, in increasing order.
/// A finite bound b lists 0..b-1. An infinite bound lists the `max_ranks`
/// smallest-weight ordinals below it, where
///   weight(sum w^e_i * c_i) = sum c_i * (1 + weight(e_i)),
/// ties broken by ordinal order. Throws BudgetExceeded if a finite bound
/// exceeds `max_classes`.
std::vector<Ordinal> census_ranks(const Ordinal& rank_bound, const CensusLimits& limits = {});

/// Every class with rank among census_ranks(rank_bound) and count <= count_bound,
/// plus (0, 0) when the rank range is nonempty, sorted by (rank, count).
/// Throws BudgetExceeded if the result would exceed `limits.max_classes`.
std::vector<CbChar> census(const Ordinal& rank_bound, const Natural& count_bound,
                           const CensusLimits& limits = {});

struct Aleph0 {
    friend bool operator==(Aleph0, Aleph0) = default;
};
struct Aleph1 {
    friend bool operator==(Aleph1, Aleph1) = default;
};
struct Finite {
    Natural n;
    friend bool operator==(const Finite&, const Finite&) = default;
};
using Cardinality = std::variant<Finite, Aleph0, Aleph1>;

struct FinitePolish {
    Natural n;
};
struct CountablyInfinitePolish {};
struct UncountablePolish {};
using AmbientDescriptor = std::variant<FinitePolish, CountablyInfinitePolish, UncountablePolish>;

/// Number of homeomorphism classes of compact subsets of a Polish space E:
/// |E| + 1 for finite E, aleph_0 for countably infinite E, aleph_1 otherwise.
Cardinality class_count(const AmbientDescriptor& e);

}  // namespace cbkit
