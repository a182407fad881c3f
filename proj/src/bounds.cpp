#include "khash/bounds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace khash::bounds {

namespace {

void require_domain(long q, long k) {
    if (k < 3 || q < k) throw std::invalid_argument("require q >= k >= 3");
}

// q = g^t with t maximal (so g is not a proper power).
std::pair<long, long> primitive_power(long q) {
    long t = 0;
    long m = q;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        long a = 0;
        while (m % p == 0) { m /= p; ++a; }
        t = std::gcd(t, a);
    }
    if (m > 1) t = std::gcd(t, 1L);
    if (t == 0) t = 1;
    long g = 1;
    m = q;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        long a = 0;
        while (m % p == 0) { m /= p; ++a; }
        for (long i = 0; i < a / t; ++i) g *= p;
    }
    if (m > 1) g *= m;
    return {g, t};
}

// x = g^s -> s, for x >= 1.
std::optional<long> power_index(BigInt x, long g) {
    long s = 0;
    while (x > 1) {
        if (x % g != 0) return std::nullopt;
        x /= g;
        ++s;
    }
    return s;
}

Rate from_exact(const Rational& r) { return Rate{r, to_double(r)}; }

Rate from_parts(std::optional<Rational> exact, double approx) {
    if (exact) return from_exact(*exact);
    return Rate{std::nullopt, approx};
}

}  // namespace

const char* bound_id_name(BoundId id) {
    switch (id) {
        case BoundId::Recursive: return "recursive";
        case BoundId::FredmanKomlos: return "fredman_komlos";
        case BoundId::FKLower: return "fk_lower";
        case BoundId::KornerMarton: return "korner_marton";
        case BoundId::BlackburnWild: return "blackburn_wild";
        case BoundId::MainTheorem: return "main_theorem";
        case BoundId::PlotkinCor: return "plotkin_cor";
        case BoundId::AaltonenCor: return "aaltonen_cor";
        case BoundId::LinearLower: return "linear_lower";
    }
    return "unknown";
}

std::optional<Rational> log_q_exact(long q, const Rational& x) {
    if (x <= 0) throw std::domain_error("log of non-positive value");
    if (x == 1) return Rational(0);
    const auto [g, t] = primitive_power(q);
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) {
        if (auto s = power_index(num, g)) return Rational(*s, t);
    } else if (num == 1) {
        if (auto s = power_index(den, g)) return Rational(-*s, t);
    }
    return std::nullopt;
}

double log_q_approx(long q, const Rational& x) {
    if (x <= 0) throw std::domain_error("log of non-positive value");
    return log_big(x) / std::log(static_cast<double>(q));
}

BigInt falling_factorial(long a, long i) {
    if (i < 0) throw std::invalid_argument("falling factorial needs i >= 0");
    BigInt out = 1;
    for (long j = 0; j < i; ++j) out *= (a - j);
    return out;
}

Rational hash_sum_S(long q, long k) {
    require_domain(q, k);
    // single-denominator form: S = N / (q-2)^falling(k-2) with
    // N = sum_i (q-1)^i * (q-i-2)^falling(k-2-i)
    const BigInt den = falling_factorial(q - 2, k - 2);
    BigInt num = 0;
    BigInt power = 1;
    for (long i = 1; i <= k - 2; ++i) {
        power *= (q - 1);
        num += power * falling_factorial(q - i - 2, k - 2 - i);
    }
    return Rational(num, den);
}

Rate rate_recursive(long q, long k) {
    require_domain(q, k);
    const Rational arg(k - 1);
    std::optional<Rational> exact;
    if (auto lg = log_q_exact(q, arg)) exact = 1 - *lg;
    return from_parts(exact, 1.0 - log_q_approx(q, arg));
}

Rate rate_fredman_komlos(long q, long k) {
    require_domain(q, k);
    const Rational factor(falling_factorial(q, k - 1), pow_big(q, k - 1));
    const Rational arg(q - k + 2);
    std::optional<Rational> exact;
    if (auto lg = log_q_exact(q, arg)) exact = factor * *lg;
    return from_parts(exact, to_double(factor) * log_q_approx(q, arg));
}

Rate rate_lower_fk(long q, long k) {
    require_domain(q, k);
    const Rational arg = 1 - Rational(falling_factorial(q, k), pow_big(q, k));
    std::optional<Rational> exact;
    if (auto lg = log_q_exact(q, arg)) exact = -*lg / (k - 1);
    return from_parts(exact, -log_q_approx(q, arg) / (k - 1));
}

BoundReport rate_korner_marton(long q, long k) {
    require_domain(q, k);
    BoundReport rep{q, k, BoundId::KornerMarton, {}, {}};
    long best_j = -1;
    Rate best;
    for (long j = 0; j <= k - 2; ++j) {
        const Rational factor(falling_factorial(q, j + 1), pow_big(q, j + 1));
        const Rational arg(q - j, k - j - 1);
        std::optional<Rational> exact;
        if (auto lg = log_q_exact(q, arg)) exact = factor * *lg;
        const Rate term = from_parts(exact, to_double(factor) * log_q_approx(q, arg));
        if (best_j < 0 || term.approx < best.approx) {
            best_j = j;
            best = term;
        }
    }
    rep.rate = best;
    rep.detail["j"] = static_cast<double>(best_j);
    return rep;
}

Rate rate_blackburn_wild(long q, long k) {
    require_domain(q, k);
    return from_exact(Rational(1, k - 1));
}

BigInt size_blackburn_wild(long q, long k, long n) {
    require_domain(q, k);
    if (n < 1) throw std::invalid_argument("require n >= 1");
    const long exp = (n + k - 2) / (k - 1);  // ceil(n/(k-1))
    return (k - 1) * pow_big(q, exp);
}

Rate rate_main_theorem(long q, long k, const DeltaValue& delta) {
    require_domain(q, k);
    if (delta.value < 0.0 || delta.value > 1.0)
        throw std::invalid_argument("relative distance outside [0,1]");
    const Rational S = hash_sum_S(q, k);
    if (delta.exact) return from_exact(*delta.exact / S);
    return Rate{std::nullopt, delta.value / to_double(S)};
}

double entropy_q(long q, double t) {
    if (q < 2) throw std::invalid_argument("entropy base requires q >= 2");
    if (t < 0.0 || t > 1.0) throw std::domain_error("entropy argument outside [0,1]");
    const double lq = std::log(static_cast<double>(q));
    if (t == 0.0) return 0.0;
    if (t == 1.0) return std::log(static_cast<double>(q - 1)) / lq;
    return (t * std::log(static_cast<double>(q - 1)) - t * std::log(t) -
            (1.0 - t) * std::log1p(-t)) /
           lq;
}

double aaltonen_rhs(long q, double x) {
    const double hi = static_cast<double>(q - 1) / q;
    if (x < 0.0 || x > hi + 1e-12) throw std::domain_error("argument outside [0,(q-1)/q]");
    x = std::min(x, hi);
    double t = (q - 1.0 - (q - 2.0) * x - 2.0 * std::sqrt((q - 1.0) * x * (1.0 - x))) / q;
    // the algebraic value lies in [0,1]; rounding can push it a hair outside
    t = std::min(std::max(t, 0.0), 1.0);
    return entropy_q(q, t);
}

Rate rate_plotkin_corollary(long q, long k) {
    require_domain(q, k);
    const Rational S = hash_sum_S(q, k);
    return from_exact(1 / (1 + Rational(q, q - 1) * S));
}

BoundReport rate_aaltonen_corollary(long q, long k) {
    require_domain(q, k);
    BoundReport rep{q, k, BoundId::AaltonenCor, {}, {}};
    const double Sd = to_double(hash_sum_S(q, k));
    const auto f = [&](double x) { return x / Sd - aaltonen_rhs(q, x); };
    double lo = 1e-12;
    double hi = static_cast<double>(q - 1) / q;
    if (!(f(lo) < 0.0) || !(f(hi) > 0.0))
        throw std::logic_error("root bracket lost its sign change");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double delta = 0.5 * (lo + hi);
    rep.rate = Rate{std::nullopt, delta / Sd};
    rep.detail["delta_star"] = delta;
    rep.detail["residual"] = std::abs(f(delta));
    return rep;
}

int aaltonen_sign_changes(long q, long k, int grid_points) {
    const double Sd = to_double(hash_sum_S(q, k));
    const double hi = static_cast<double>(q - 1) / q;
    int changes = 0;
    int last_sign = 0;
    for (int i = 1; i <= grid_points; ++i) {
        const double x = hi * i / grid_points;
        const double f = x / Sd - aaltonen_rhs(q, x);
        const int sign = f > 0.0 ? 1 : (f < 0.0 ? -1 : 0);
        if (sign != 0) {
            if (last_sign != 0 && sign != last_sign) ++changes;
            last_sign = sign;
        }
    }
    return changes;
}

BoundReport rate_linear_lower(long q, long k) {
    require_domain(q, k);
    const long pairs = k * (k - 1) / 2;
    if (q < pairs)
        throw std::invalid_argument("rate_linear_lower requires q >= k(k-1)/2");
    BoundReport rep{q, k, BoundId::LinearLower, {}, {}};

    const Rational arg1 = 1 - Rational(falling_factorial(q, k), pow_big(q, k));
    std::optional<Rational> exact1;
    if (auto lg = log_q_exact(q, arg1)) exact1 = -*lg / (k - 1);
    const Rate term1 = from_parts(exact1, -log_q_approx(q, arg1) / (k - 1));

    const Rational arg2(pairs);
    std::optional<Rational> exact2;
    if (auto lg = log_q_exact(q, arg2)) exact2 = (1 - *lg) / (k - 2);
    const Rate term2 = from_parts(exact2, (1.0 - log_q_approx(q, arg2)) / (k - 2));

    if (term2.approx < term1.approx) {
        rep.rate = term2;
        rep.detail["term"] = 2;
    } else {
        rep.rate = term1;
        rep.detail["term"] = 1;
    }
    return rep;
}

KmComparison km_vs_corollary4(long q, long k) {
    require_domain(q, k);
    KmComparison cmp;
    cmp.korner_marton = rate_korner_marton(q, k);
    const Rate cor4 = rate_plotkin_corollary(q, k);
    cmp.plotkin = BoundReport{q, k, BoundId::PlotkinCor, cor4, {}};
    if (cmp.korner_marton.rate.exact)
        cmp.plotkin_improves = *cor4.exact < *cmp.korner_marton.rate.exact;
    else
        cmp.plotkin_improves = cor4.approx < cmp.korner_marton.rate.approx;
    cmp.margin = cmp.korner_marton.rate.approx - cor4.approx;
    return cmp;
}

bool theorem7_chain_check(long q, long k) {
    if (k < 4 || q < k * k) throw std::invalid_argument("require q >= k^2 and k >= 4");
    const double km = rate_korner_marton(q, k).rate.approx;
    const Rational a = Rational(pow_big(q - k + 2, k - 2), 2 * pow_big(q, k - 2));
    const Rational b = (1 - Rational((k - 2) * (k - 2), q)) / 2;
    const Rational c(1, k - 1);
    const Rational cor4 = *rate_plotkin_corollary(q, k).exact;
    return km >= to_double(a) && a >= b && b >= c && c > cor4;
}

std::string format_rate(const Rate& r) {
    if (r.exact) return format_rational(*r.exact);
    return format_ceil4(r.approx);
}

std::string format_rate_float(const Rate& r) {
    if (r.exact) return format_ceil4(*r.exact);
    return format_ceil4(r.approx);
}

}  // namespace khash::bounds
