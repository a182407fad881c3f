#pragma once

#include "khash/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace khash::bounds {

/// A rate in units of log_q(|C|)/n. `exact` is present when the bound has a
/// closed rational form; `approx` is then derived from it, so the two agree
/// to the last double bit.
struct Rate {
    std::optional<Rational> exact;
    double approx = 0.0;
};

enum class BoundId {
    Recursive,
    FredmanKomlos,
    FKLower,
    KornerMarton,
    BlackburnWild,
    MainTheorem,
    PlotkinCor,
    AaltonenCor,
    LinearLower,
};

const char* bound_id_name(BoundId id);

/// A computed bound plus named diagnostics: "j" (minimizing index) for
/// KornerMarton, "delta_star"/"residual" for AaltonenCor, "term" (1 or 2)
/// for LinearLower.
struct BoundReport {
    long q = 0;
    long k = 0;
    BoundId id{};
    Rate rate;
    std::map<std::string, double> detail;
};

/// Relative minimum distance delta = d/n in [0,1], optionally exact.
struct DeltaValue {
    double value = 0.0;
    std::optional<Rational> exact;

    DeltaValue(double v) : value(v) {}
    DeltaValue(const Rational& r) : value(to_double(r)), exact(r) {}
};

/// a(a-1)...(a-i+1); 1 for i = 0.
BigInt falling_factorial(long a, long i);

/// S(q,k) = sum_{i=1}^{k-2} (q-1)^i / (q-2)^falling(i), exact.
Rational hash_sum_S(long q, long k);

Rate rate_recursive(long q, long k);
Rate rate_fredman_komlos(long q, long k);
Rate rate_lower_fk(long q, long k);
BoundReport rate_korner_marton(long q, long k);
Rate rate_blackburn_wild(long q, long k);
BigInt size_blackburn_wild(long q, long k, long n);
Rate rate_main_theorem(long q, long k, const DeltaValue& delta);

/// q-ary entropy H_q(t) with the convention 0 log 0 = 0. Requires t in [0,1].
double entropy_q(long q, double t);

/// H_q((1/q)(q - 1 - (q-2)x - 2 sqrt((q-1)x(1-x)))). Requires x in
/// [0, (q-1)/q].
double aaltonen_rhs(long q, double x);

Rate rate_plotkin_corollary(long q, long k);
BoundReport rate_aaltonen_corollary(long q, long k);
BoundReport rate_linear_lower(long q, long k);

struct KmComparison {
    BoundReport plotkin;
    BoundReport korner_marton;
    bool plotkin_improves = false;  // Cor4 < KM
    double margin = 0.0;            // KM - Cor4
};

KmComparison km_vs_corollary4(long q, long k);

/// Verifies KM(q,k) >= (1/2)((q-k+2)/q)^(k-2) >= (1/2)(1 - (k-2)^2/q)
/// >= 1/(k-1) > Cor4(q,k). Requires q >= k^2 and k >= 4.
bool theorem7_chain_check(long q, long k);

/// Sign changes of f(x) = x/S - aaltonen_rhs(q,x) over a uniform grid of
/// `grid_points` samples of (0, (q-1)/q]. A well-behaved instance has
/// exactly one.
int aaltonen_sign_changes(long q, long k, int grid_points);

/// log_q of a positive rational, as an exact rational when one exists
/// (q = g^t with g not a proper power, and x a power of g).
std::optional<Rational> log_q_exact(long q, const Rational& x);

double log_q_approx(long q, const Rational& x);

std::string format_rate(const Rate& r);        // "p/q" or 4-decimal ceiling
std::string format_rate_float(const Rate& r);  // always the 4-decimal form

}  // namespace khash::bounds
