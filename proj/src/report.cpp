#include "khash/report.hpp"

#include "khash/primepow.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace khash::report {

using namespace khash::bounds;

namespace {

std::string float17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_row(long q, long k, const char* id, const Rate& rate) {
    std::string exact = rate.exact ? format_rational(*rate.exact) : "";
    return std::to_string(q) + "," + std::to_string(k) + "," + id + "," + exact + "," +
           float17(rate.approx) + "\n";
}

// rows of the standard reference table; later prime powers up to 64 are
// computed as well but marked as additions
const std::set<long> kReferenceRows = {3,  4,  5,  7,  8,  9,  11, 13, 16, 17,
                                       19, 23, 25, 27, 29, 31, 32, 37, 41, 64};

struct BoundRow {
    BoundId id;
    Rate rate;
    bool is_lower;
};

std::vector<BoundId> default_selection() {
    return {BoundId::PlotkinCor, BoundId::AaltonenCor, BoundId::KornerMarton,
            BoundId::BlackburnWild, BoundId::LinearLower};
}

Rate eval_bound(BoundId id, long q, long k) {
    switch (id) {
        case BoundId::Recursive: return rate_recursive(q, k);
        case BoundId::FredmanKomlos: return rate_fredman_komlos(q, k);
        case BoundId::FKLower: return rate_lower_fk(q, k);
        case BoundId::KornerMarton: return rate_korner_marton(q, k).rate;
        case BoundId::BlackburnWild: return rate_blackburn_wild(q, k);
        case BoundId::PlotkinCor: return rate_plotkin_corollary(q, k);
        case BoundId::AaltonenCor: return rate_aaltonen_corollary(q, k).rate;
        case BoundId::LinearLower: return rate_linear_lower(q, k).rate;
        case BoundId::MainTheorem: break;
    }
    throw std::invalid_argument("bound not evaluable in a (q,k) sweep");
}

bool is_lower_bound(BoundId id) {
    return id == BoundId::FKLower || id == BoundId::LinearLower;
}

}  // namespace

std::string render_table(long q_max) {
    if (q_max < 3) throw std::invalid_argument("require q_max >= 3");
    std::ostringstream out;
    out << "upper bounds on the rate of linear (q,3)-hash codes\n";
    out << "floats rounded upward at the 4th decimal; exact values as fractions\n";
    out << "\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%4s  %-8s %-8s  %-8s  %-13s\n", "q", "plotkin", "(float)",
                  "aaltonen", "korner_marton");
    out << line;
    bool any_extra = false;
    for (long q : prime_powers_in(3, q_max)) {
        const Rate cor4 = rate_plotkin_corollary(q, 3);
        const Rate cor5 = rate_aaltonen_corollary(q, 3).rate;
        const Rate km = rate_korner_marton(q, 3).rate;
        const bool extra = q <= 64 && !kReferenceRows.count(q);
        any_extra |= extra;
        std::snprintf(line, sizeof(line), "%4ld  %-8s %-8s  %-8s  %-13s%s\n", q,
                      format_rational(*cor4.exact).c_str(), format_ceil4(*cor4.exact).c_str(),
                      format_ceil4(cor5.approx).c_str(), format_rate(km).c_str(),
                      extra ? "  +" : "");
        out << line;
    }
    if (any_extra) out << "\n+ row added beyond the standard reference table\n";
    return out.str();
}

std::string table_csv(long q_max) {
    if (q_max < 3) throw std::invalid_argument("require q_max >= 3");
    std::string out = "q,k,bound_id,value_exact,value_float\n";
    for (long q : prime_powers_in(3, q_max)) {
        out += csv_row(q, 3, bound_id_name(BoundId::PlotkinCor), rate_plotkin_corollary(q, 3));
        out += csv_row(q, 3, bound_id_name(BoundId::AaltonenCor),
                       rate_aaltonen_corollary(q, 3).rate);
        out += csv_row(q, 3, bound_id_name(BoundId::KornerMarton), rate_korner_marton(q, 3).rate);
    }
    return out;
}

std::vector<std::string> sweep_bound_names() {
    return {"recursive",     "fredman_komlos", "fk_lower",    "korner_marton",
            "blackburn_wild", "plotkin_cor",    "aaltonen_cor", "linear_lower"};
}

std::string sweep_csv(const SweepConfig& cfg) {
    if (cfg.k_min < 3 || cfg.k_max < cfg.k_min)
        throw std::invalid_argument("require 3 <= k_min <= k_max");
    if (cfg.q_cap < 2 * cfg.k_min - 3)
        throw std::invalid_argument("require q_cap >= 2*k_min - 3");
    const auto selection = cfg.selection.empty() ? default_selection() : cfg.selection;
    std::string out = "q,k,bound_id,value_exact,value_float\n";
    for (long k = cfg.k_min; k <= cfg.k_max; ++k) {
        for (long q : prime_powers_in(k, cfg.q_cap)) {
            if (k > 3 && q <= 2 * k - 4) {
                // no dimension-2 linear k-hash codes exist in this regime
                // (Blackburn-Wild; Ng), so the asymptotic rate is 0
                out += csv_row(q, k, "linear_rate_zero", Rate{Rational(0), 0.0});
                continue;
            }
            std::vector<BoundRow> rows;
            for (BoundId id : selection) {
                if (id == BoundId::LinearLower && q < k * (k - 1) / 2) continue;
                rows.push_back(BoundRow{id, eval_bound(id, q, k), is_lower_bound(id)});
            }
            for (const auto& lo : rows) {
                if (!lo.is_lower) continue;
                for (const auto& up : rows) {
                    if (up.is_lower) continue;
                    if (lo.rate.approx > up.rate.approx + 1e-12)
                        throw std::logic_error("lower bound exceeds an upper bound at q=" +
                                               std::to_string(q) + " k=" + std::to_string(k));
                }
            }
            for (const auto& row : rows) out += csv_row(q, k, bound_id_name(row.id), row.rate);
        }
    }
    return out;
}

ConjectureResult run_conjecture(const ConjectureConfig& cfg) {
    if (cfg.k_min < 3 || cfg.k_max < cfg.k_min)
        throw std::invalid_argument("require 3 <= k_min <= k_max");
    ConjectureResult res;
    res.pass = true;
    std::ostringstream out;
    out << "claim: plotkin_cor(q,k) < korner_marton(q,k)\n";
    out << "k in [" << cfg.k_min << "," << cfg.k_max
        << "]; per-k range: prime powers q in [2k-3, max(k^2, " << cfg.q_cap << ")]\n";
    out << "chain grid for k >= 4: q in {k^2, 2k^2, 10k^2, 100k^2} "
        << "(km >= half((q-k+2)/q)^(k-2) >= half(1-(k-2)^2/q) >= 1/(k-1) > plotkin_cor)\n";
    char line[256];
    for (long k = cfg.k_min; k <= cfg.k_max; ++k) {
        const long hi = std::max(cfg.q_cap, k * k);
        const auto qs = prime_powers_in(2 * k - 3, hi);
        double min_margin = 2.0;
        long min_q = 0;
        double first_margin = 0.0, last_margin = 0.0;
        long violations = 0;
        for (long q : qs) {
            const auto cmp = km_vs_corollary4(q, k);
            if (!cmp.plotkin_improves) {
                ++violations;
                if (res.pass) {
                    res.pass = false;
                    std::snprintf(line, sizeof(line),
                                  "first violation: k=%ld q=%ld plotkin=%.12g km=%.12g\n", k, q,
                                  cmp.plotkin.rate.approx, cmp.korner_marton.rate.approx);
                    out << line;
                }
            }
            if (cmp.margin < min_margin) { min_margin = cmp.margin; min_q = q; }
            if (q == qs.front()) first_margin = cmp.margin;
            if (q == qs.back()) last_margin = cmp.margin;
        }
        res.pairs_checked += static_cast<long>(qs.size());
        bool chain_ok = true;
        if (k >= 4) {
            for (long mult : {1L, 2L, 10L, 100L}) {
                const long q = mult * k * k;
                ++res.chain_points;
                if (!theorem7_chain_check(q, k)) {
                    chain_ok = false;
                    res.pass = false;
                    out << "chain check failed at k=" << k << " q=" << q << "\n";
                }
            }
        }
        std::snprintf(line, sizeof(line),
                      "k=%-3ld %s  q_pairs=%-4zu min_margin=%.3e at q=%ld", k,
                      violations == 0 && chain_ok ? "OK  " : "FAIL", qs.size(), min_margin,
                      min_q);
        out << line;
        if (k == 3) {
            std::snprintf(line, sizeof(line), "  margin growth: %.3e at q=%ld -> %.3e at q=%ld",
                          first_margin, qs.front(), last_margin, qs.back());
            out << line;
        }
        out << "\n";
    }
    out << "result: " << (res.pass ? "PASS" : "FAIL") << " (" << res.pairs_checked
        << " (q,k) pairs, " << res.chain_points << " chain points)\n";
    res.report = out.str();
    return res;
}

}  // namespace khash::report
