#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "paucity/counters.hpp"

namespace paucity {

struct SweepRow {
    CoeffTuple h;
    unsigned t_or_s = 0;
    long long P = 0;
    std::string method;
    long long count = 0;  // -1 when the method was skipped over budget
    double elapsed_ms = 0.0;
    std::string branch;
};

// Exhaustive sweep over all tuples with |h_j| <= hmax: one row per h per
// available method, deterministic order (h lexicographic, brute before
// fast). `k` is required for the odd family.
std::vector<SweepRow> sweep(Family family, unsigned t_or_s, long long P, long long hmax,
                            unsigned k = 0, unsigned threads = 1);

struct SlopeFit {
    std::vector<std::pair<long long, long long>> points;  // (P, count)
    double slope = 0.0;
    double residual = 0.0;  // RMS residual of the fit
};

// Least-squares fit of log(count+1) against log P. The +1 guards the
// frequent count-0 paucity instances.
SlopeFit fit_loglog(const std::vector<std::pair<long long, long long>>& points);

// Counts h over the ladder (fast path when available) and fits the growth
// exponent. Throws InsufficientNonzeroPointsError with fewer than three
// nonzero counts.
SlopeFit slope(Family family, unsigned t_or_s, const CoeffTuple& h,
               std::span<const long long> ladder, unsigned threads = 1);

// Timing comparison rows for every (h, P, method) combination. Brute runs
// that would blow the enumeration budget are emitted as SKIPPED rows with
// count -1 instead of failing the whole table.
std::vector<SweepRow> bench_compare(Family family, unsigned t_or_s,
                                    std::span<const CoeffTuple> h_sample,
                                    std::span<const long long> P_ladder,
                                    unsigned threads = 1);

// CSV columns: family,t_or_s,P,h,method,count,branch,elapsed_ms with the
// h entries semicolon-joined; the JSON mirror carries the same fields.
void write_rows_csv(std::ostream& os, std::span<const SweepRow> rows);
nlohmann::ordered_json rows_json(std::span<const SweepRow> rows);

}  // namespace paucity
