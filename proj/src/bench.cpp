#include "paucity/bench.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "paucity/util.hpp"

namespace paucity {

namespace {

std::string branch_label(const CountResult& r) {
    std::string out;
    for (const auto& [label, cnt] : r.breakdown) {
        if (!out.empty()) out += "+";
        out += label;
    }
    return out.empty() ? "none" : out;
}

std::string join_h(const CoeffTuple& h) {
    std::string out;
    for (const auto& v : h.values) {
        if (!out.empty()) out += ";";
        out += v.get_str();
    }
    return out;
}

double brute_volume(Family family, unsigned t_or_s, long long P) {
    if (family == Family::Odd)
        return std::pow(double(2 * P + 1), double(t_or_s > 0 ? t_or_s - 1 : 0));
    return std::pow(double(P), double(2 * t_or_s - 1));
}

}  // namespace

std::vector<SweepRow> sweep(Family family, unsigned t_or_s, long long P, long long hmax,
                            unsigned k, unsigned threads) {
    if (hmax < 0) throw Error("hmax must be nonnegative");
    unsigned len = family == Family::Odd ? k : 3;
    if (len == 0) throw Error("odd sweep needs k >= 1");
    if (std::pow(double(2 * hmax + 1), double(len)) > 1e6)
        throw BudgetExceededError("sweep grid too large");

    std::vector<SweepRow> rows;
    const Int lo = to_int(-hmax), hi = to_int(hmax);
    std::vector<Int> vals(len, lo);
    bool done = false;
    while (!done) {
        CoeffTuple h = CoeffTuple::make(family, vals);
        for (auto method : {CountResult::Method::Brute, CountResult::Method::Fast}) {
            if (method == CountResult::Method::Fast && !fast_available(family, t_or_s))
                continue;
            CountResult r = run_count(family, t_or_s, P, h, method, threads);
            rows.push_back({h, t_or_s, P, method_name(method), r.total, r.elapsed_ms,
                            branch_label(r)});
        }
        // Advance odometer, last coordinate fastest.
        done = true;
        for (std::size_t i = len; i-- > 0;) {
            if (vals[i] < hi) {
                vals[i] += 1;
                for (std::size_t j = i + 1; j < len; ++j) vals[j] = lo;
                done = false;
                break;
            }
        }
    }
    return rows;
}

SlopeFit fit_loglog(const std::vector<std::pair<long long, long long>>& points) {
    SlopeFit fit;
    fit.points = points;
    double sx = 0, sy = 0;
    for (const auto& [P, c] : points) {
        sx += std::log(double(P));
        sy += std::log(double(c) + 1.0);
    }
    double n = double(points.size());
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [P, c] : points) {
        double dx = std::log(double(P)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(double(c) + 1.0) - my);
    }
    if (sxx == 0) throw Error("slope fit needs at least two distinct P values");
    fit.slope = sxy / sxx;
    double ss = 0;
    for (const auto& [P, c] : points) {
        double pred = my + fit.slope * (std::log(double(P)) - mx);
        double err = std::log(double(c) + 1.0) - pred;
        ss += err * err;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

SlopeFit slope(Family family, unsigned t_or_s, const CoeffTuple& h,
               std::span<const long long> ladder, unsigned threads) {
    if (ladder.size() < 3) throw Error("slope ladder needs at least 3 values");
    std::vector<std::pair<long long, long long>> points;
    for (long long P : ladder) {
        auto method = fast_available(family, t_or_s) ? CountResult::Method::Fast
                                                     : CountResult::Method::Brute;
        points.emplace_back(P, run_count(family, t_or_s, P, h, method, threads).total);
    }
    int nonzero = 0;
    for (const auto& [P, c] : points)
        if (c > 0) ++nonzero;
    if (nonzero < 3)
        throw InsufficientNonzeroPointsError("slope needs >= 3 nonzero counts");
    return fit_loglog(points);
}

std::vector<SweepRow> bench_compare(Family family, unsigned t_or_s,
                                    std::span<const CoeffTuple> h_sample,
                                    std::span<const long long> P_ladder,
                                    unsigned threads) {
    std::vector<SweepRow> rows;
    for (const auto& h : h_sample) {
        for (long long P : P_ladder) {
            if (fast_available(family, t_or_s)) {
                // Warm-up run discarded when cheap, so the reported figure
                // reflects a steady cache.
                CountResult warm = run_count(family, t_or_s, P, h,
                                             CountResult::Method::Fast, threads);
                CountResult r = warm.elapsed_ms < 1000.0
                                    ? run_count(family, t_or_s, P, h,
                                                CountResult::Method::Fast, threads)
                                    : warm;
                rows.push_back({h, t_or_s, P, "fast", r.total, r.elapsed_ms,
                                branch_label(r)});
            }
            if (brute_volume(family, t_or_s, P) <= 1e9) {
                CountResult r =
                    run_count(family, t_or_s, P, h, CountResult::Method::Brute, threads);
                rows.push_back({h, t_or_s, P, "brute", r.total, r.elapsed_ms,
                                branch_label(r)});
            } else {
                rows.push_back({h, t_or_s, P, "brute", -1, 0.0, "SKIPPED"});
            }
        }
    }
    return rows;
}

void write_rows_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "family,t_or_s,P,h,method,count,branch,elapsed_ms\n";
    for (const auto& r : rows) {
        os << family_name(r.h.family) << "," << r.t_or_s << "," << r.P << ","
           << join_h(r.h) << "," << r.method << "," << r.count << "," << r.branch << ","
           << r.elapsed_ms << "\n";
    }
}

nlohmann::ordered_json rows_json(std::span<const SweepRow> rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["family"] = family_name(r.h.family);
        o["t_or_s"] = r.t_or_s;
        o["P"] = r.P;
        std::vector<std::string> hs;
        for (const auto& v : r.h.values) hs.push_back(v.get_str());
        o["h"] = hs;
        o["method"] = r.method;
        o["count"] = r.count;
        o["branch"] = r.branch;
        o["elapsed_ms"] = r.elapsed_ms;
        arr.push_back(std::move(o));
    }
    return arr;
}

}  // namespace paucity
