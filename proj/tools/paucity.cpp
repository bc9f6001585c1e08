// Command-line front end: identity verification, exact counting,
// classification, relation-polynomial construction, type decomposition
// and benchmarking, with text/JSON/CSV output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paucity/bench.hpp"
#include "paucity/counters.hpp"
#include "paucity/identities.hpp"
#include "paucity/util.hpp"

using json = nlohmann::ordered_json;
using namespace paucity;

namespace {

std::vector<Int> parse_h(const std::string& text) {
    std::vector<Int> out;
    std::string cur;
    auto flush = [&] {
        std::size_t p = 0;
        if (p < cur.size() && cur[p] == '-') ++p;
        if (p == cur.size()) throw Error("bad integer in list: '" + cur + "'");
        for (; p < cur.size(); ++p)
            if (cur[p] < '0' || cur[p] > '9')
                throw Error("bad integer in list: '" + cur + "'");
        out.emplace_back(cur);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else if (ch != ' ')
            cur += ch;
    }
    flush();
    return out;
}

Family parse_family(const std::string& name) {
    auto f = family_from_name(name);
    if (!f) throw Error("unknown family: " + name);
    return *f;
}

json count_json(Family family, unsigned t_or_s, long long P, const CoeffTuple& h,
                const CountResult& r) {
    json o;
    o["family"] = family_name(family);
    o["exponents"] = h.exponents;
    o["P"] = P;
    std::vector<std::string> hs;
    for (const auto& v : h.values) hs.push_back(v.get_str());
    o["h"] = hs;
    o["method"] = method_name(r.method);
    o["count"] = r.total;
    json bd;
    for (const auto& [label, cnt] : r.breakdown) bd[label] = cnt;
    o["breakdown"] = std::move(bd);
    o["elapsed_ms"] = r.elapsed_ms;
    if (!r.notes.empty()) o["notes"] = r.notes;
    (void)t_or_s;
    return o;
}

void print_count_text(std::ostream& os, const CountResult& r) {
    os << method_name(r.method) << " count = " << r.total << "  (";
    bool first = true;
    for (const auto& [label, cnt] : r.breakdown) {
        if (!first) os << ", ";
        os << label << "=" << cnt;
        first = false;
    }
    os << ")  " << r.elapsed_ms << " ms\n";
    for (const auto& note : r.notes) os << "note: " << note << "\n";
}

SweepRow count_to_row(Family family, unsigned t_or_s, long long P, const CoeffTuple& h,
                      const CountResult& r) {
    std::string branch;
    for (const auto& [label, cnt] : r.breakdown) {
        if (!branch.empty()) branch += "+";
        branch += label;
    }
    return {h, t_or_s, P, method_name(r.method), r.total, r.elapsed_ms, branch};
}

struct Options {
    unsigned threads = 1;
    std::string format = "text";
};

int run_verify(const Options& opt) {
    bool all_ok = true;
    json items = json::array();
    for (const auto& report : verify_all_identities()) {
        all_ok = all_ok && report.holds;
        if (opt.format == "json") {
            items.push_back({{"check", "identity"},
                             {"name", report.name},
                             {"holds", report.holds}});
        } else {
            std::cout << (report.holds ? "PASS" : "FAIL") << " identity " << report.name
                      << " (residual " << (report.holds ? "0" : "nonzero") << ")\n";
        }
    }
    for (unsigned kappa = 2; kappa <= 4; ++kappa) {
        bool ok = true;
        std::string detail;
        try {
            const UpsilonData& u = construct_upsilon(kappa);
            WeightedDegree wd = weighted_degree(u.upsilon, odd_weights(kappa));
            ok = wd.homogeneous && wd.degree &&
                 *wd.degree == (long long)(kappa * (kappa + 1) / 2) && u.kernel_dim == 1;
            detail = "C(" + std::to_string(kappa) + ")=" + u.c_constant.get_str() +
                     ", kernel_dim=" + std::to_string(u.kernel_dim);
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
        all_ok = all_ok && ok;
        if (opt.format == "json") {
            items.push_back(
                {{"check", "upsilon"}, {"kappa", kappa}, {"holds", ok}, {"detail", detail}});
        } else {
            std::cout << (ok ? "PASS" : "FAIL") << " upsilon kappa=" << kappa << " ("
                      << detail << ")\n";
        }
    }
    if (opt.format == "json") std::cout << items.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counting and identity toolkit for affine diagonal systems"};
    app.require_subcommand(1);
    // Subcommands take --h as a data option, so their help flag is long-only.
    auto add_subcommand = [&app](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    Options opt;
    if (const char* env = std::getenv("PAUCITY_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) opt.threads = static_cast<unsigned>(v);
    }
    app.add_option("--threads", opt.threads, "worker count (default 1 or PAUCITY_THREADS)");
    app.add_option("--format", opt.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    auto* cmd_verify = add_subcommand(
        "verify", "certify the multiplicative identities and relation polynomials");

    auto* cmd_upsilon =
        add_subcommand("upsilon", "construct the odd power-sum relation polynomial");
    unsigned up_kappa = 2;
    bool up_json = false;
    cmd_upsilon->add_option("--kappa", up_kappa, "relation size (>= 2)")->required();
    cmd_upsilon->add_flag("--json", up_json, "emit JSON regardless of --format");

    auto* cmd_count = add_subcommand("count", "count solutions exactly");
    std::string co_family, co_h, co_method = "both";
    unsigned co_t = 0, co_s = 0, co_k = 0;
    long long co_p = 0;
    cmd_count->add_option("--family", co_family, "vino|quartic|odd")->required();
    cmd_count->add_option("--t", co_t, "pair count (vino/quartic)");
    cmd_count->add_option("--s", co_s, "variable count (odd)");
    cmd_count->add_option("--k", co_k, "equation count (odd)");
    cmd_count->add_option("--p", co_p, "box size P")->required();
    cmd_count->add_option("--h", co_h, "comma-separated coefficients")->required();
    cmd_count->add_option("--method", co_method, "brute|fast|both")
        ->check(CLI::IsMember({"brute", "fast", "both"}));

    auto* cmd_classify = add_subcommand("classify", "Zero/Pair/Generic verdict");
    std::string cl_family, cl_h;
    long long cl_p = 0;
    cmd_classify->add_option("--family", cl_family, "vino|quartic")->required();
    cmd_classify->add_option("--p", cl_p, "box size P")->required();
    cmd_classify->add_option("--h", cl_h, "comma-separated coefficients")->required();

    auto* cmd_types = add_subcommand("types", "type decomposition of U_{s,k}");
    unsigned ty_k = 0, ty_s = 0;
    long long ty_p = 0;
    std::string ty_h;
    cmd_types->add_option("--k", ty_k, "equation count")->required();
    cmd_types->add_option("--s", ty_s, "variable count")->required();
    cmd_types->add_option("--p", ty_p, "box size P")->required();
    cmd_types->add_option("--h", ty_h, "comma-separated coefficients")->required();

    auto* cmd_r0 = add_subcommand("r0", "minimal odd power-sum representation length");
    unsigned r0_k = 0;
    long long r0_p = 0;
    std::string r0_h;
    cmd_r0->add_option("--k", r0_k, "equation count")->required();
    cmd_r0->add_option("--p", r0_p, "box size P")->required();
    cmd_r0->add_option("--h", r0_h, "comma-separated coefficients")->required();

    auto* cmd_sweep = add_subcommand("sweep", "exhaustive h-box comparison table");
    std::string sw_family, sw_out;
    unsigned sw_t = 0, sw_s = 0, sw_k = 0;
    long long sw_p = 0, sw_hmax = 0;
    cmd_sweep->add_option("--family", sw_family, "vino|quartic|odd")->required();
    cmd_sweep->add_option("--t", sw_t, "pair count (vino/quartic)");
    cmd_sweep->add_option("--s", sw_s, "variable count (odd)");
    cmd_sweep->add_option("--k", sw_k, "equation count (odd)");
    cmd_sweep->add_option("--p", sw_p, "box size P")->required();
    cmd_sweep->add_option("--hmax", sw_hmax, "coefficient box radius")->required();
    cmd_sweep->add_option("--out", sw_out, "output file")->required();

    auto* cmd_slope = add_subcommand("slope", "log-log growth exponent over a ladder");
    std::string sl_family, sl_h, sl_ladder;
    unsigned sl_t = 0, sl_s = 0, sl_k = 0;
    cmd_slope->add_option("--family", sl_family, "vino|quartic|odd")->required();
    cmd_slope->add_option("--t", sl_t, "pair count (vino/quartic)");
    cmd_slope->add_option("--s", sl_s, "variable count (odd)");
    cmd_slope->add_option("--k", sl_k, "equation count (odd)");
    cmd_slope->add_option("--h", sl_h, "comma-separated coefficients")->required();
    cmd_slope->add_option("--ladder", sl_ladder, "comma-separated P values")->required();

    auto* cmd_bench = add_subcommand("bench", "timing comparison on sampled tuples");
    std::string be_family, be_out;
    unsigned be_t = 2, be_s = 0, be_k = 0, be_samples = 10;
    long long be_hmax = 1000;
    unsigned long long be_seed = 1;
    std::string be_ladder;
    cmd_bench->add_option("--family", be_family, "vino|quartic|odd")->required();
    cmd_bench->add_option("--t", be_t, "pair count (vino/quartic)");
    cmd_bench->add_option("--s", be_s, "variable count (odd)");
    cmd_bench->add_option("--k", be_k, "equation count (odd)");
    cmd_bench->add_option("--p-ladder", be_ladder, "comma-separated P values")->required();
    cmd_bench->add_option("--samples", be_samples, "number of sampled tuples");
    cmd_bench->add_option("--seed", be_seed, "PRNG seed");
    cmd_bench->add_option("--hmax", be_hmax, "sampling radius for h entries");
    cmd_bench->add_option("--out", be_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_verify)) return run_verify(opt);

        if (app.got_subcommand(cmd_upsilon)) {
            const UpsilonData& u = construct_upsilon(up_kappa);
            if (up_json || opt.format == "json") {
                std::cout << upsilon_json(u).dump(2) << "\n";
            } else {
                std::cout << "Upsilon_" << u.kappa << " = " << upsilon_text(u) << "\n"
                          << "C(" << u.kappa << ") = " << u.c_constant.get_str()
                          << ", kernel_dim = " << u.kernel_dim << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_count)) {
            Family family = parse_family(co_family);
            std::vector<Int> hv = parse_h(co_h);
            unsigned t_or_s = family == Family::Odd ? co_s : co_t;
            if (t_or_s == 0) throw Error("need --t (vino/quartic) or --s (odd)");
            if (family == Family::Odd) {
                if (co_k == 0) co_k = static_cast<unsigned>(hv.size());
                if (co_k != hv.size()) throw Error("--k does not match --h length");
            } else if (hv.size() != 3) {
                throw Error("vino/quartic tuples have three entries");
            }
            CoeffTuple h = CoeffTuple::make(family, hv);
            if (co_method != "brute" && !fast_available(family, t_or_s))
                throw Error("fast counter only defined for vino/quartic with t in {2,3}");

            std::vector<CountResult> results;
            if (co_method == "brute" || co_method == "both")
                results.push_back(run_count(family, t_or_s, co_p, h,
                                            CountResult::Method::Brute, opt.threads));
            if (co_method == "fast" || co_method == "both")
                results.push_back(run_count(family, t_or_s, co_p, h,
                                            CountResult::Method::Fast, opt.threads));
            bool agree = results.size() < 2 || results[0].total == results[1].total;

            if (opt.format == "json") {
                json arr = json::array();
                for (const auto& r : results)
                    arr.push_back(count_json(family, t_or_s, co_p, h, r));
                std::cout << arr.dump(2) << "\n";
            } else if (opt.format == "csv") {
                std::vector<SweepRow> rows;
                for (const auto& r : results)
                    rows.push_back(count_to_row(family, t_or_s, co_p, h, r));
                write_rows_csv(std::cout, rows);
            } else {
                for (const auto& r : results) print_count_text(std::cout, r);
                if (results.size() == 2)
                    std::cout << (agree ? "AGREE" : "DISAGREE") << "\n";
            }
            if (!agree) {
                std::cerr << "error: methods disagree: brute=" << results[0].total
                          << " fast=" << results[1].total << "\n";
                return 1;
            }
            return 0;
        }

        if (app.got_subcommand(cmd_classify)) {
            Family family = parse_family(cl_family);
            if (family == Family::Odd) throw Error("classify applies to vino/quartic");
            std::vector<Int> hv = parse_h(cl_h);
            if (hv.size() != 3) throw Error("vino/quartic tuples have three entries");
            CoeffTuple h = CoeffTuple::make(family, hv);
            Classification c = classify(family, h, cl_p);
            std::string verdict = c.verdict == Classification::Verdict::Zero     ? "zero"
                                  : c.verdict == Classification::Verdict::Pair   ? "pair"
                                                                                 : "generic";
            if (opt.format == "json") {
                json o;
                o["family"] = family_name(family);
                o["P"] = cl_p;
                std::vector<std::string> hs;
                for (const auto& v : h.values) hs.push_back(v.get_str());
                o["h"] = hs;
                o["verdict"] = verdict;
                if (c.verdict == Classification::Verdict::Pair) {
                    o["a"] = c.a;
                    o["b"] = c.b;
                }
                o["discriminant"] = c.discriminant.get_str();
                std::cout << o.dump(2) << "\n";
            } else {
                std::cout << "verdict: " << verdict;
                if (c.verdict == Classification::Verdict::Pair)
                    std::cout << " (a=" << c.a << ", b=" << c.b << ")";
                std::cout << "; discriminant = " << c.discriminant.get_str() << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_types)) {
            std::vector<Int> hv = parse_h(ty_h);
            if (hv.size() != ty_k) throw Error("--k does not match --h length");
            CoeffTuple h = CoeffTuple::odd(hv);
            TypeDecomposition d = type_decompose(ty_k, ty_s, ty_p, h, opt.threads);
            if (opt.format == "json") {
                json o;
                o["k"] = ty_k;
                o["s"] = ty_s;
                o["P"] = ty_p;
                std::vector<std::string> hs;
                for (const auto& v : h.values) hs.push_back(v.get_str());
                o["h"] = hs;
                json counts;
                for (const auto& [j, c] : d.counts) counts[std::to_string(j)] = c;
                o["counts"] = std::move(counts);
                o["i_k"] = d.i_k ? json(*d.i_k) : json(nullptr);
                long long total = 0;
                for (const auto& [j, c] : d.counts) total += c;
                o["total"] = total;
                std::cout << o.dump(2) << "\n";
            } else {
                long long total = 0;
                for (const auto& [j, c] : d.counts) {
                    std::cout << "type " << j << ": " << c << "\n";
                    total += c;
                }
                std::cout << "total: " << total << "; i_k: ";
                if (d.i_k)
                    std::cout << *d.i_k << "\n";
                else
                    std::cout << "none\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_r0)) {
            std::vector<Int> hv = parse_h(r0_h);
            if (hv.size() != r0_k) throw Error("--k does not match --h length");
            CoeffTuple h = CoeffTuple::odd(hv);
            auto r = r0(r0_k, r0_p, h);
            auto tau = tau_k(r0_k, h, r0_p);
            if (opt.format == "json") {
                json o;
                o["k"] = r0_k;
                o["P"] = r0_p;
                std::vector<std::string> hs;
                for (const auto& v : h.values) hs.push_back(v.get_str());
                o["h"] = hs;
                o["r0"] = r ? json(*r) : json(nullptr);
                o["tau"] = tau ? json(*tau) : json(nullptr);
                std::cout << o.dump(2) << "\n";
            } else {
                std::cout << "r0: ";
                if (r)
                    std::cout << *r;
                else
                    std::cout << "none";
                std::cout << "; tau: ";
                if (tau)
                    std::cout << *tau << "\n";
                else
                    std::cout << "none\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_sweep)) {
            Family family = parse_family(sw_family);
            unsigned t_or_s = family == Family::Odd ? sw_s : sw_t;
            if (t_or_s == 0) throw Error("need --t (vino/quartic) or --s (odd)");
            auto rows = sweep(family, t_or_s, sw_p, sw_hmax, sw_k, opt.threads);
            std::ofstream out(sw_out);
            if (!out) throw Error("cannot open output file: " + sw_out);
            if (opt.format == "json")
                out << rows_json(rows).dump(2) << "\n";
            else
                write_rows_csv(out, rows);
            std::cout << "wrote " << rows.size() << " rows to " << sw_out << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_slope)) {
            Family family = parse_family(sl_family);
            unsigned t_or_s = family == Family::Odd ? sl_s : sl_t;
            if (t_or_s == 0) throw Error("need --t (vino/quartic) or --s (odd)");
            std::vector<Int> hv = parse_h(sl_h);
            if (family == Family::Odd && sl_k != 0 && sl_k != hv.size())
                throw Error("--k does not match --h length");
            CoeffTuple h = CoeffTuple::make(family, hv);
            std::vector<long long> ladder;
            for (const auto& v : parse_h(sl_ladder)) ladder.push_back(to_ll(v));
            SlopeFit fit = slope(family, t_or_s, h, ladder, opt.threads);
            if (opt.format == "json") {
                json o;
                o["family"] = family_name(family);
                o["t_or_s"] = t_or_s;
                std::vector<std::string> hs;
                for (const auto& v : h.values) hs.push_back(v.get_str());
                o["h"] = hs;
                json pts = json::array();
                for (const auto& [P, c] : fit.points) pts.push_back({P, c});
                o["points"] = std::move(pts);
                o["slope"] = fit.slope;
                o["residual"] = fit.residual;
                std::cout << o.dump(2) << "\n";
            } else {
                for (const auto& [P, c] : fit.points)
                    std::cout << "P=" << P << " count=" << c << "\n";
                std::cout << "slope: " << fit.slope << " (residual " << fit.residual
                          << ")\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_bench)) {
            Family family = parse_family(be_family);
            unsigned t_or_s = family == Family::Odd ? be_s : be_t;
            if (t_or_s == 0) throw Error("need --t (vino/quartic) or --s (odd)");
            unsigned len = family == Family::Odd ? (be_k == 0 ? 2 : be_k) : 3;
            if (be_hmax < 1) throw Error("--hmax must be positive");
            SeededRng rng(be_seed);
            std::vector<CoeffTuple> sample;
            while (sample.size() < be_samples) {
                std::vector<Int> hv;
                for (unsigned i = 0; i < len; ++i)
                    hv.push_back(to_int(rng.int_in(-be_hmax, be_hmax)));
                CoeffTuple h = CoeffTuple::make(family, hv);
                if (h.is_zero()) continue;
                sample.push_back(std::move(h));
            }
            std::vector<long long> ladder;
            for (const auto& v : parse_h(be_ladder)) ladder.push_back(to_ll(v));
            auto rows = bench_compare(family, t_or_s, sample, ladder, opt.threads);
            std::ofstream out(be_out);
            if (!out) throw Error("cannot open output file: " + be_out);
            if (opt.format == "json")
                out << rows_json(rows).dump(2) << "\n";
            else
                write_rows_csv(out, rows);
            std::cout << "wrote " << rows.size() << " rows to " << be_out << "\n";
            return 0;
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
