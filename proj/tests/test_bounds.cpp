#include <doctest.h>

#include "khash/bounds.hpp"
#include "khash/primepow.hpp"

#include <cmath>
#include <stdexcept>

using namespace khash;
using namespace khash::bounds;
using doctest::Approx;

namespace {

// Reference values below were computed independently with 60-digit interval
// arithmetic (tests/gen_reference_values.py) and frozen here.
constexpr double kRel = 1e-11;

void check_exact(const Rate& r, long num, long den) {
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == Rational(num, den));
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("falling factorials") {
    CHECK(falling_factorial(5, 3) == 60);
    CHECK(falling_factorial(3, 3) == 6);
    CHECK(falling_factorial(3, 4) == 0);
    CHECK(falling_factorial(7, 0) == 1);
    CHECK(falling_factorial(0, 0) == 1);
}

TEST_CASE("hash sum S(q,k)") {
    CHECK(hash_sum_S(3, 3) == Rational(2));
    CHECK(hash_sum_S(5, 4) == Rational(4));
    CHECK(hash_sum_S(4, 3) == Rational(3, 2));
    // S(q,k) >= k-2 with equality only in degenerate corners.
    for (long k = 3; k <= 6; ++k)
        for (long q = k; q <= 32; ++q)
            CHECK(hash_sum_S(q, k) >= Rational(k - 2));
    CHECK_THROWS_AS(hash_sum_S(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(hash_sum_S(5, 2), std::invalid_argument);
}

TEST_CASE("recursive bound") {
    CHECK(rate_recursive(3, 3).approx == Approx(0.369070246428543).epsilon(kRel));
    CHECK(rate_recursive(9, 9).approx == Approx(0.0536053696428138).epsilon(kRel));
    check_exact(rate_recursive(4, 3), 1, 2);  // log_4 2
    CHECK_FALSE(rate_recursive(3, 3).exact.has_value());
    CHECK_THROWS_AS(rate_recursive(2, 3), std::invalid_argument);
}

TEST_CASE("fredman-komlos upper and lower bounds") {
    CHECK(rate_fredman_komlos(3, 3).approx == Approx(0.420619835714305).epsilon(kRel));
    check_exact(rate_fredman_komlos(4, 4), 3, 16);  // (24/64) log_4 2
    CHECK(rate_lower_fk(3, 3).approx == Approx(0.114378125419289).epsilon(kRel));
    // The lower bound must not exceed the upper bounds it accompanies.
    for (long q : {3L, 4L, 5L, 9L, 16L, 64L})
        CHECK(rate_lower_fk(q, 3).approx < rate_plotkin_corollary(q, 3).approx);
}

TEST_CASE("korner-marton bound and its minimizing index") {
    const auto r33 = rate_korner_marton(3, 3);
    CHECK(r33.rate.approx == Approx(0.369070246428543).epsilon(kRel));
    CHECK(r33.detail.at("j") == 0.0);

    const auto r54 = rate_korner_marton(5, 4);
    CHECK(r54.rate.approx == Approx(0.317393805514015).epsilon(kRel));
    CHECK(r54.detail.at("j") == 0.0);

    // Exact when q = 2^e, k = 3: the j = 0 term is 1 - 1/e.
    check_exact(rate_korner_marton(4, 3).rate, 1, 2);
    check_exact(rate_korner_marton(8, 3).rate, 2, 3);
    check_exact(rate_korner_marton(16, 3).rate, 3, 4);
    check_exact(rate_korner_marton(32, 3).rate, 4, 5);
    check_exact(rate_korner_marton(64, 3).rate, 5, 6);
    check_exact(rate_korner_marton(9, 4).rate, 1, 2);  // j = 0: log_9 3

    CHECK_THROWS_AS(rate_korner_marton(3, 4), std::invalid_argument);
}

TEST_CASE("blackburn-wild rate and size") {
    check_exact(rate_blackburn_wild(4, 3), 1, 2);
    check_exact(rate_blackburn_wild(9, 5), 1, 4);
    CHECK(size_blackburn_wild(4, 3, 5) == 128);  // 2 * 4^ceil(5/2)
    CHECK(size_blackburn_wild(7, 4, 3) == 21);   // 3 * 7^1
    CHECK(size_blackburn_wild(3, 3, 1) == 6);
}

TEST_CASE("main theorem rate from a relative distance") {
    check_exact(rate_main_theorem(3, 3, DeltaValue(Rational(1, 2))), 1, 4);
    check_exact(rate_main_theorem(5, 4, DeltaValue(Rational(1))), 1, 4);
    check_exact(rate_main_theorem(7, 3, DeltaValue(Rational(0))), 0, 1);
    const auto r = rate_main_theorem(3, 3, DeltaValue(0.25));
    CHECK_FALSE(r.exact.has_value());
    CHECK(r.approx == Approx(0.125).epsilon(kRel));
}

TEST_CASE("q-ary entropy") {
    CHECK(entropy_q(3, 0.0) == 0.0);
    CHECK(entropy_q(3, 2.0 / 3.0) == Approx(1.0).epsilon(kRel));
    CHECK(entropy_q(3, 1.0) == Approx(std::log(2.0) / std::log(3.0)).epsilon(kRel));
    CHECK(entropy_q(3, 1.0 / 3.0) == Approx(0.789690082142848).epsilon(kRel));
    CHECK(entropy_q(2, 0.5) == Approx(1.0).epsilon(kRel));
    CHECK_THROWS_AS(entropy_q(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(entropy_q(3, -0.1), std::domain_error);
    CHECK_THROWS_AS(entropy_q(3, 1.1), std::domain_error);
}

TEST_CASE("aaltonen entropy expression") {
    CHECK(aaltonen_rhs(3, 0.0) == Approx(1.0).epsilon(kRel));
    CHECK(aaltonen_rhs(3, 2.0 / 3.0) == Approx(0.0).epsilon(1e-7));
    CHECK(aaltonen_rhs(3, 0.5) == Approx(0.136213997289847).epsilon(kRel));
    CHECK(aaltonen_rhs(4, 0.75) == Approx(0.0).epsilon(1e-7));
    CHECK_THROWS_AS(aaltonen_rhs(3, 0.7), std::domain_error);
}

TEST_CASE("plotkin corollary") {
    check_exact(rate_plotkin_corollary(3, 3), 1, 4);
    check_exact(rate_plotkin_corollary(5, 4), 1, 6);
    // k = 3 closed form (q-2)/(2q-2) for every prime power up to 64.
    for (long q : prime_powers_in(3, 64)) {
        const auto r = rate_plotkin_corollary(q, 3);
        REQUIRE(r.exact.has_value());
        CHECK(*r.exact == Rational(q - 2, 2 * q - 2));
    }
    // k = 4 leading values.
    check_exact(rate_plotkin_corollary(7, 4), 2, 9);
    check_exact(rate_plotkin_corollary(8, 4), 5, 21);
    check_exact(rate_plotkin_corollary(9, 4), 1, 4);
    // k = 5 leading values.
    check_exact(rate_plotkin_corollary(7, 5), 10, 87);
    check_exact(rate_plotkin_corollary(9, 5), 35, 236);
    // Strictly increasing in q at fixed k, exactly.
    for (long k = 3; k <= 5; ++k) {
        std::optional<Rational> prev;
        for (long q : prime_powers_in(2 * k - 3, 64)) {
            const auto r = rate_plotkin_corollary(q, k);
            REQUIRE(r.exact.has_value());
            if (prev) CHECK(*prev < *r.exact);
            prev = r.exact;
        }
    }
}

TEST_CASE("aaltonen corollary root finding") {
    const auto r33 = rate_aaltonen_corollary(3, 3);
    CHECK(r33.rate.approx == Approx(0.219703139067035).epsilon(kRel));
    CHECK(r33.detail.at("delta_star") == Approx(0.439406278134069).epsilon(kRel));
    CHECK(std::abs(r33.detail.at("residual")) <= 1e-12);
    CHECK(std::pow(3.0, r33.rate.approx) == Approx(1.272990133).epsilon(1e-9));

    // Certified 4th-decimal ceilings for the k = 3 reference column.
    struct Row { long q; const char* ceil4; };
    for (const auto& row : {Row{3, "0.2198"}, Row{9, "0.4198"}, Row{41, "0.5014"},
                            Row{64, "0.5119"}}) {
        const auto r = rate_aaltonen_corollary(row.q, 3);
        CHECK(format_rate_float(r.rate) == row.ceil4);
    }

    // The bracketed function has exactly one sign change for every sweep pair.
    for (long k = 3; k <= 5; ++k)
        for (long q : prime_powers_in(2 * k - 3, 64))
            CHECK(aaltonen_sign_changes(q, k, 1000) == 1);
}

TEST_CASE("corollary crossover along the k = 3 table") {
    // Aaltonen sharper through q = 19, Plotkin sharper from q = 23 on.
    for (long q : prime_powers_in(3, 19))
        CHECK(rate_aaltonen_corollary(q, 3).rate.approx <
              rate_plotkin_corollary(q, 3).approx);
    for (long q : prime_powers_in(23, 64))
        CHECK(rate_plotkin_corollary(q, 3).approx <
              rate_aaltonen_corollary(q, 3).rate.approx);
}

TEST_CASE("bounds approach their large-q limits") {
    const long q = 1 << 16;
    // Limits: Cor4 -> 1/(k-1), Cor5 has a positive standoff that shrinks in k.
    CHECK(rate_plotkin_corollary(q, 3).approx == Approx(0.4999923705).epsilon(1e-8));
    CHECK(rate_aaltonen_corollary(q, 3).rate.approx == Approx(0.5291974249).epsilon(1e-8));
    CHECK(rate_plotkin_corollary(q, 4).approx == Approx(0.3333231607).epsilon(1e-8));
    CHECK(rate_aaltonen_corollary(q, 4).rate.approx == Approx(0.350383478).epsilon(1e-8));
    CHECK(rate_plotkin_corollary(q, 5).approx == Approx(0.249987602).epsilon(1e-8));
    CHECK(rate_aaltonen_corollary(q, 5).rate.approx == Approx(0.2608927441).epsilon(1e-8));
    CHECK(std::abs(rate_plotkin_corollary(q, 3).approx - 0.5) < 1e-4);
    CHECK(rate_aaltonen_corollary(q, 3).rate.approx - 0.5 < 0.03);
    CHECK(rate_aaltonen_corollary(q, 4).rate.approx - 1.0 / 3.0 < 0.02);
    CHECK(rate_aaltonen_corollary(q, 5).rate.approx - 0.25 < 0.02);
}

TEST_CASE("linear code lower bound") {
    const auto r93 = rate_linear_lower(9, 3);
    CHECK(r93.rate.approx == Approx(0.267513239641).epsilon(1e-10));
    CHECK(r93.detail.at("term") == 1.0);

    const auto r33 = rate_linear_lower(3, 3);
    CHECK(r33.detail.at("term") == 2.0);
    check_exact(r33.rate, 0, 1);  // (1 - log_3 3)/(k-2)

    const auto r94 = rate_linear_lower(9, 4);  // term 2: (1 - log_9 6)/2
    CHECK(r94.rate.approx == Approx(0.0922675616071355).epsilon(1e-10));
    CHECK(r94.detail.at("term") == 2.0);

    CHECK_THROWS_AS(rate_linear_lower(9, 5), std::invalid_argument);
    CHECK_THROWS_AS(rate_linear_lower(5, 4), std::invalid_argument);
}

TEST_CASE("km versus plotkin comparison") {
    const auto c33 = km_vs_corollary4(3, 3);
    CHECK(c33.plotkin_improves);
    CHECK(c33.margin == Approx(0.369070246428543 - 0.25).epsilon(1e-9));
    CHECK(km_vs_corollary4(5, 4).plotkin_improves);
    CHECK(km_vs_corollary4(197, 100).plotkin_improves);
}

TEST_CASE("theorem7_chain_check") {
    CHECK(theorem7_chain_check(16, 4));
    CHECK(theorem7_chain_check(25, 5));
    CHECK(theorem7_chain_check(100, 4));
    CHECK(theorem7_chain_check(10000, 10));
    CHECK_THROWS_AS(theorem7_chain_check(15, 4), std::invalid_argument);
    CHECK_THROWS_AS(theorem7_chain_check(16, 3), std::invalid_argument);
}

TEST_CASE("exact logs base q") {
    const auto half = log_q_exact(4, Rational(2));
    REQUIRE(half.has_value());
    CHECK(*half == Rational(1, 2));
    const auto neg = log_q_exact(8, Rational(1, 2));
    REQUIRE(neg.has_value());
    CHECK(*neg == Rational(-1, 3));
    const auto r9 = log_q_exact(9, Rational(3));
    REQUIRE(r9.has_value());
    CHECK(*r9 == Rational(1, 2));
    const auto r6 = log_q_exact(6, Rational(36));
    REQUIRE(r6.has_value());
    CHECK(*r6 == Rational(2));
    CHECK_FALSE(log_q_exact(3, Rational(5)).has_value());
    CHECK_FALSE(log_q_exact(4, Rational(2, 3)).has_value());
    CHECK_THROWS_AS(log_q_exact(3, Rational(0)), std::domain_error);
    CHECK(log_q_approx(3, Rational(3, 2)) == Approx(0.369070246428543).epsilon(kRel));
}

TEST_CASE("exact and floating sides of a rate agree to 2^-40") {
    for (long q : prime_powers_in(3, 64)) {
        for (const Rate& r : {rate_plotkin_corollary(q, 3), rate_blackburn_wild(q, 3),
                              rate_korner_marton(q, 3).rate}) {
            if (!r.exact) continue;
            CHECK(std::abs(r.approx - to_double(*r.exact)) <= std::ldexp(1.0, -40));
        }
    }
}

TEST_CASE("rate formatting") {
    Rate exact{Rational(1, 3), to_double(Rational(1, 3))};
    CHECK(format_rate(exact) == "1/3");
    CHECK(format_rate_float(exact) == "0.3334");

    Rate whole{Rational(2), 2.0};
    CHECK(format_rate(whole) == "2");
    CHECK(format_rate_float(whole) == "2.0000");

    Rate quarter{Rational(1, 4), 0.25};
    CHECK(format_rate_float(quarter) == "0.2500");

    Rate inexact{std::nullopt, 0.41977224519285555};
    CHECK(format_rate(inexact) == "0.4198");
    CHECK(format_rate_float(inexact) == "0.4198");
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(rate_fredman_komlos(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(rate_plotkin_corollary(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(rate_aaltonen_corollary(3, 2), std::invalid_argument);
}

}  // TEST_SUITE
