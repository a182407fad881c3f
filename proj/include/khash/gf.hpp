#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace khash::gf {

/// Field element, encoded as an index in 0..q-1. The index digits in base p
/// are the polynomial coefficients: index = sum c_i p^i with c_i the
/// coefficient of x^i.
using Felt = std::uint16_t;

/// GF(p^e) for prime p, q = p^e in [2, 65536]. Extension fields reduce
/// modulo a monic irreducible polynomial; the default constructor picks the
/// lexicographically smallest one (coefficients compared constant term
/// first). Operations are table-driven for q <= 64.
class Field {
public:
    /// Field with the canonical modulus.
    static Field make(long p, int e);

    /// Field with a caller-supplied modulus: e+1 coefficients, constant
    /// term first, monic, irreducible over GF(p).
    static Field with_modulus(long p, int e, std::vector<Felt> modulus);

    long p() const { return p_; }
    int e() const { return e_; }
    long q() const { return q_; }

    /// e+1 coefficients, constant term first. {0, 1} (the polynomial x)
    /// when e == 1.
    const std::vector<Felt>& modulus() const { return modulus_; }

    Felt add(Felt a, Felt b) const;
    Felt sub(Felt a, Felt b) const;
    Felt neg(Felt a) const;
    Felt mul(Felt a, Felt b) const;
    Felt inv(Felt a) const;  // throws std::domain_error on 0

    Felt dot(std::span<const Felt> u, std::span<const Felt> v) const;

    /// "p" for prime fields, "p^e" otherwise.
    std::string q_token() const;

    bool operator==(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

private:
    Field() = default;

    Felt add_slow(Felt a, Felt b) const;
    Felt mul_slow(Felt a, Felt b) const;
    void check_element(Felt a) const;
    void build_tables();

    long p_ = 0;
    int e_ = 0;
    long q_ = 0;
    std::vector<Felt> modulus_;
    // direct-indexed q*q tables, empty for q > 64
    std::vector<Felt> add_table_, mul_table_;
};

}  // namespace khash::gf
