#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "paucity/bigint.hpp"

namespace paucity {

// Sign and prime-power factorization of a nonzero integer.
struct FactoredInt {
    int sign = 1;  // +1 or -1
    std::vector<std::pair<Int, unsigned>> prime_powers;  // primes strictly increasing

    Int value() const;
    Int abs_value() const;
    unsigned long long divisor_count() const;  // prod (e_i + 1)
};

// Deterministic Miller-Rabin for n < 3.317e24 (fixed 13-base set); larger
// inputs fall back to a strong BPSW-style test.
bool is_prime(const Int& n);

// Complete factorization: trial division by primes below 10^6, then
// Pollard-Brent rho with a fixed iteration budget on remaining cofactors.
// Throws ZeroInputError for n == 0 and FactorizationBudgetError when rho
// fails to split a cofactor in budget (callers degrade to brute force).
FactoredInt factorize(const Int& n);

// All positive divisors, ascending.
std::vector<Int> divisors(const FactoredInt& f);

// Ordered tuple of nonzero integers whose product is a fixed target.
struct DivisorTuple {
    std::vector<Int> entries;
};

// Linear side-constraint: entries[i] + entries[j] == sum, with i < j.
// Applied as early as partial assignments permit; once entry i is fixed
// the partner entry j is forced, pruning the stream.
struct PairSumConstraint {
    std::size_t i;
    std::size_t j;
    Int sum;
};

// Visits every ordered m-tuple of nonzero integers with product N that
// satisfies all constraints, exactly once, in a deterministic order
// (ascending absolute value, + before -, per position). The visitor
// returns false to stop early.
void for_each_signed_tuple(const Int& N, std::size_t m,
                           std::span<const PairSumConstraint> constraints,
                           const std::function<bool(const DivisorTuple&)>& visit);

std::vector<DivisorTuple> signed_tuples(const Int& N, std::size_t m,
                                        std::span<const PairSumConstraint> constraints = {});

}  // namespace paucity
