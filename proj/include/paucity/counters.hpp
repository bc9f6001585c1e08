#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paucity/bigint.hpp"

namespace paucity {

// Exponent families: "vino" counts S_t (exponents 1,2,3 on paired
// variables), "quartic" counts T_t (exponents 1,2,4), "odd" counts
// U_{s,k} (odd exponents 1,3,...,2k-1 on signed variables).
enum class Family { Vino, Quartic, Odd };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// Right-hand-side tuple h together with its exponent list.
struct CoeffTuple {
    Family family = Family::Vino;
    std::vector<unsigned> exponents;
    std::vector<Int> values;

    static CoeffTuple vino(Int h1, Int h2, Int h3);
    static CoeffTuple quartic(Int h1, Int h2, Int h4);
    static CoeffTuple odd(std::vector<Int> h);
    static CoeffTuple make(Family family, std::vector<Int> h);

    unsigned k() const { return static_cast<unsigned>(values.size()); }
    bool is_zero() const;
};

enum class BoxKind { OneToP, Symmetric };

struct SystemSpec {
    Family family = Family::Vino;
    unsigned t_or_s = 1;  // pair count t (vino/quartic) or variable count s (odd)
    long long P = 1;
    BoxKind box = BoxKind::OneToP;

    static SystemSpec vino(unsigned t, long long P);
    static SystemSpec quartic(unsigned t, long long P);
    static SystemSpec odd(unsigned s, long long P);
};

struct Classification {
    enum class Verdict { Zero, Pair, Generic };
    Verdict verdict = Verdict::Generic;
    long long a = 0, b = 0;  // meaningful only for Pair
    Int discriminant;        // Psi (vino) or Phi (quartic)
};

struct CountResult {
    enum class Method { Brute, Fast };
    long long total = 0;
    std::vector<std::pair<std::string, long long>> breakdown;  // sums to total
    Method method = Method::Brute;
    double elapsed_ms = 0.0;
    std::vector<std::string> notes;
};

std::string method_name(CountResult::Method m);

struct TypeDecomposition {
    std::map<unsigned, long long> counts;  // type j -> V^(j), nonzero entries
    std::optional<unsigned> i_k;           // largest j attained; empty if no solutions
};

// Exact count by nested enumeration over the box, with the last variable
// eliminated through the linear equation. Throws BudgetExceededError when
// the search volume exceeds 10^9 elementary checks.
CountResult brute_count(const SystemSpec& spec, const CoeffTuple& h, unsigned threads = 1);

// Zero / structured Pair(a,b) / Generic verdict with the discriminant
// attached. Pair requires h_j == a^j - b^j for every family exponent with
// a != b and both inside [1, P].
Classification classify(Family family, const CoeffTuple& h, long long P);

// Identity-accelerated exact counters for the two-pair systems.
CountResult fast_count_S2(long long P, const CoeffTuple& h, unsigned threads = 1);
CountResult fast_count_T2(long long P, const CoeffTuple& h, unsigned threads = 1);

// Three-pair counters: sum the two-pair fast counter over shifted tuples
// h'_j = h_j - u^j + v^j, memoizing repeated shifts.
CountResult fast_count_S3(long long P, const CoeffTuple& h, unsigned threads = 1);
CountResult fast_count_T3(long long P, const CoeffTuple& h, unsigned threads = 1);

// Largest number of disjoint index pairs summing to zero such that the
// leftover entries contain no zero-sum pair. Equals the maximum matching
// of the zero-sum graph.
unsigned type_of(std::span<const long long> x);

// V^(j) for each type j by brute enumeration, plus I_k (the largest type
// attained in the box), for the odd system with s variables.
TypeDecomposition type_decompose(unsigned k, unsigned s, long long P, const CoeffTuple& h,
                                 unsigned threads = 1);

// Minimal r such that h_j = a_1^{2j-1} + ... + a_r^{2j-1} with |a_i| <= P;
// 0 iff h == 0; empty when no representation with r <= k+1 exists.
std::optional<unsigned> r0(unsigned k, long long P, const CoeffTuple& h);

// floor((k + 1 - r0) / 2); empty when r0 is undefined.
std::optional<long long> tau_k(unsigned k, const CoeffTuple& h, long long P);

// Exact V^(0)_{kappa+1,kappa} via divisor enumeration on the relation
// value for kappa in {2,3}; filtered brute enumeration beyond (recorded
// in the breakdown).
CountResult fast_count_type0(unsigned kappa, long long P, const CoeffTuple& h);

// Exact U_{s,k} by brute enumeration, breakdown by solution type.
CountResult count_U(unsigned k, unsigned s, long long P, const CoeffTuple& h,
                    unsigned threads = 1);

// The identity-accelerated path exists for the two- and three-pair
// vino/quartic systems; everything else counts by brute enumeration.
bool fast_available(Family family, unsigned t_or_s);

// Unified dispatch used by the benchmark harness and the CLI.
CountResult run_count(Family family, unsigned t_or_s, long long P, const CoeffTuple& h,
                      CountResult::Method method, unsigned threads = 1);

}  // namespace paucity
