#include <doctest.h>

#include "khash/gf.hpp"
#include "khash/primepow.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

using khash::gf::Felt;
using khash::gf::Field;

namespace {

// Independent reducibility oracle for degree 2 and 3: reducible iff it has a
// root in GF(p). Coefficients are constant-term first, monic, length e+1.
bool has_root(const std::vector<int>& poly, long p) {
    for (long x = 0; x < p; ++x) {
        long acc = 0, xp = 1;
        for (int c : poly) {
            acc = (acc + c * xp) % p;
            xp = (xp * x) % p;
        }
        if (acc == 0) return true;
    }
    return false;
}

std::vector<int> lex_first_rootless(long p, int e) {
    for (long idx = 0;; ++idx) {
        std::vector<int> f(e + 1);
        f[e] = 1;
        long rest = idx;
        for (int i = e - 1; i >= 0; --i) {
            f[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        if (rest != 0) break;
        if (!has_root(f, p)) return f;
    }
    throw std::logic_error("no rootless polynomial found");
}

}  // namespace

TEST_SUITE("gf") {

TEST_CASE("canonical moduli are the lexicographically smallest irreducibles") {
    // For e in {2,3} irreducible == rootless, so the oracle is independent.
    for (const auto& [p, e] : std::vector<std::pair<long, int>>{
             {2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
        const auto field = Field::make(p, e);
        const auto expect = lex_first_rootless(p, e);
        REQUIRE(field.modulus().size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(field.modulus()[i] == static_cast<Felt>(expect[i]));
    }

    CHECK(Field::make(2, 2).modulus() == std::vector<Felt>{1, 1, 1});   // x^2+x+1
    CHECK(Field::make(3, 2).modulus() == std::vector<Felt>{1, 0, 1});   // x^2+1
    CHECK(Field::make(2, 3).modulus() == std::vector<Felt>{1, 0, 1, 1});  // x^3+x^2+1
    CHECK(Field::make(5, 1).modulus() == std::vector<Felt>{0, 1});
}

TEST_CASE("prime field arithmetic") {
    const auto f3 = Field::make(3, 1);
    CHECK(f3.add(1, 2) == 0);
    CHECK(f3.mul(2, 2) == 1);
    CHECK(f3.neg(1) == 2);
    CHECK(f3.sub(0, 2) == 1);
    CHECK(f3.q_token() == "3");
}

TEST_CASE("extension field arithmetic uses the canonical modulus") {
    const auto f4 = Field::make(2, 2);  // index 2 = x, 3 = x+1
    CHECK(f4.mul(2, 2) == 3);           // x^2 = x+1
    CHECK(f4.add(2, 3) == 1);
    CHECK(f4.mul(2, 3) == 1);           // x(x+1) = x^2+x = 1
    CHECK(f4.q_token() == "2^2");

    const auto f9 = Field::make(3, 2);  // index 3 = x, modulus x^2+1
    CHECK(f9.mul(3, 3) == 2);           // x^2 = -1
    CHECK(f9.mul(3, 4) == 5);           // x(x+1) = x^2+x = x+2 -> 2+3
}

TEST_CASE("field axioms hold exhaustively for every prime power q <= 64") {
    const auto qs = khash::prime_powers_in(2, 64);
    REQUIRE(qs.size() == 27);
    for (long q : qs) {
        const auto pe = khash::prime_power_decompose(q);
        REQUIRE(pe.has_value());
        const auto f = Field::make(pe->first, pe->second);
        REQUIRE(f.q() == q);
        for (long a = 0; a < q; ++a) {
            const auto fa = static_cast<Felt>(a);
            CHECK(f.add(fa, 0) == fa);
            CHECK(f.mul(fa, 1) == fa);
            CHECK(f.add(fa, f.neg(fa)) == 0);
            if (a != 0) CHECK(f.mul(fa, f.inv(fa)) == 1);
            for (long b = 0; b < q; ++b) {
                const auto fb = static_cast<Felt>(b);
                CHECK(f.add(fa, fb) == f.add(fb, fa));
                CHECK(f.mul(fa, fb) == f.mul(fb, fa));
            }
        }
        // Associativity and distributivity on a coarser grid to keep runtime sane.
        const long step = q <= 9 ? 1 : 5;
        for (long a = 0; a < q; a += step)
            for (long b = 0; b < q; b += step)
                for (long c = 0; c < q; c += step) {
                    const auto fa = static_cast<Felt>(a), fb = static_cast<Felt>(b),
                               fc = static_cast<Felt>(c);
                    CHECK(f.mul(f.mul(fa, fb), fc) == f.mul(fa, f.mul(fb, fc)));
                    CHECK(f.add(f.add(fa, fb), fc) == f.add(fa, f.add(fb, fc)));
                    CHECK(f.mul(fa, f.add(fb, fc)) == f.add(f.mul(fa, fb), f.mul(fa, fc)));
                }
    }
}

TEST_CASE("dot products") {
    const auto f3 = Field::make(3, 1);
    const std::vector<Felt> u{1, 2}, v{2, 2};
    CHECK(f3.dot(u, v) == 0);  // 2 + 4 = 6 = 0 mod 3
    const std::vector<Felt> w{1, 0};
    CHECK(f3.dot(u, w) == 1);
}

TEST_CASE("large fields skip tables but stay consistent") {
    const auto f67 = Field::make(67, 1);
    CHECK(f67.mul(66, 66) == 1);  // (-1)^2
    CHECK(f67.mul(13, f67.inv(13)) == 1);

    const auto f128 = Field::make(2, 7);
    for (Felt a : {1, 2, 5, 77, 127})
        CHECK(f128.mul(a, f128.inv(a)) == 1);

    const auto fbig = Field::make(2, 16);
    CHECK(fbig.q() == 65536);
    CHECK(fbig.mul(2, fbig.inv(2)) == 1);
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);   // p not prime
    CHECK_THROWS_AS(Field::make(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(2, 17), std::invalid_argument);  // q > 2^16
    CHECK_THROWS_AS(Field::with_modulus(2, 2, {1, 0, 1}), std::invalid_argument);  // (x+1)^2
    CHECK_THROWS_AS(Field::with_modulus(2, 2, {1, 1}), std::invalid_argument);     // wrong length
    CHECK_THROWS_AS(Field::with_modulus(3, 2, {1, 0, 2}), std::invalid_argument);  // not monic
    CHECK_THROWS_AS(Field::with_modulus(3, 2, {3, 0, 1}), std::invalid_argument);  // coeff >= p

    const auto f3 = Field::make(3, 1);
    CHECK_THROWS_AS(f3.inv(0), std::domain_error);
    CHECK_THROWS_AS(f3.add(3, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)f3.dot(std::vector<Felt>{1}, std::vector<Felt>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("explicit modulus variant accepts any irreducible") {
    // x^3 + x + 1 over GF(2): Conway's choice, not the canonical one here.
    const auto f8 = Field::with_modulus(2, 3, {1, 1, 0, 1});
    CHECK(f8.mul(2, 2) == 4);  // x^2
    CHECK(f8.mul(4, 2) == 3);  // x^3 = x+1
    for (Felt a = 1; a < 8; ++a) CHECK(f8.mul(a, f8.inv(a)) == 1);
    CHECK(f8 != Field::make(2, 3));
    CHECK(Field::make(2, 3) == Field::make(2, 3));
}

TEST_CASE("prime power helpers") {
    CHECK(khash::is_prime(2));
    CHECK(khash::is_prime(61));
    CHECK_FALSE(khash::is_prime(1));
    CHECK_FALSE(khash::is_prime(57));

    const auto d8 = khash::prime_power_decompose(8);
    REQUIRE(d8.has_value());
    CHECK(d8->first == 2);
    CHECK(d8->second == 3);
    CHECK_FALSE(khash::prime_power_decompose(12).has_value());
    CHECK_FALSE(khash::prime_power_decompose(1).has_value());

    const auto qs = khash::prime_powers_in(3, 16);
    CHECK(qs == std::vector<long>{3, 4, 5, 7, 8, 9, 11, 13, 16});
}

}  // TEST_SUITE
