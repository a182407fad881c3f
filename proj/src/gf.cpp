#include "khash/gf.hpp"

#include "khash/primepow.hpp"

#include <stdexcept>

namespace khash::gf {

namespace {

// Polynomials over GF(p) as coefficient vectors, constant term first.
// Leading zeros permitted; degree is the last nonzero position.

int poly_degree(const std::vector<int>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// Remainder of f by a monic divisor g.
std::vector<int> poly_mod(std::vector<int> f, const std::vector<int>& g, long p) {
    const int dg = poly_degree(g);
    for (int i = poly_degree(f); i >= dg; i = poly_degree(f)) {
        const long c = f[i];
        if (c == 0) continue;
        f[i] = 0;
        for (int j = 0; j < dg; ++j)
            f[i - dg + j] = static_cast<int>(((f[i - dg + j] - c * g[j]) % p + p) % p);
    }
    return f;
}

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool poly_irreducible(const std::vector<int>& f, long p) {
    const int df = poly_degree(f);
    if (df < 1) return false;
    for (int d = 1; 2 * d <= df; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            std::vector<int> g(d + 1, 0);
            g[d] = 1;
            long rest = idx;
            for (int i = 0; i < d; ++i) { g[i] = static_cast<int>(rest % p); rest /= p; }
            if (poly_degree(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree e, comparing
// coefficient tuples (c_0, ..., c_{e-1}) with the constant term first.
std::vector<Felt> canonical_modulus(long p, int e) {
    if (e == 1) return {0, 1};
    long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
        std::vector<int> f(e + 1, 0);
        f[e] = 1;
        long rest = idx;
        for (int i = e - 1; i >= 0; --i) { f[i] = static_cast<int>(rest % p); rest /= p; }
        if (poly_irreducible(f, p)) return std::vector<Felt>(f.begin(), f.end());
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

Field Field::make(long p, int e) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("field extension degree must be >= 1");
    return with_modulus(p, e, canonical_modulus(p, e));
}

Field Field::with_modulus(long p, int e, std::vector<Felt> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("field extension degree must be >= 1");
    long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > 65536) throw std::invalid_argument("field order must be <= 2^16");
    }
    if (modulus.size() != static_cast<std::size_t>(e) + 1)
        throw std::invalid_argument("modulus must have e+1 coefficients");
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    for (Felt c : modulus)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    std::vector<int> f(modulus.begin(), modulus.end());
    if (e > 1 && !poly_irreducible(f, p))
        throw std::invalid_argument("modulus is reducible");

    Field fld;
    fld.p_ = p;
    fld.e_ = e;
    fld.q_ = q;
    fld.modulus_ = std::move(modulus);
    if (q <= 64) fld.build_tables();
    return fld;
}

void Field::check_element(Felt a) const {
    if (a >= q_) throw std::invalid_argument("element index out of range");
}

Felt Field::add_slow(Felt a, Felt b) const {
    if (e_ == 1) return static_cast<Felt>((a + b) % p_);
    long out = 0, scale = 1;
    long x = a, y = b;
    for (int i = 0; i < e_; ++i) {
        out += ((x + y) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return static_cast<Felt>(out);
}

Felt Field::mul_slow(Felt a, Felt b) const {
    if (e_ == 1) return static_cast<Felt>((static_cast<long>(a) * b) % p_);
    std::vector<long> da(e_), db(e_), prod(2 * e_ - 1, 0);
    long x = a, y = b;
    for (int i = 0; i < e_; ++i) { da[i] = x % p_; x /= p_; db[i] = y % p_; y /= p_; }
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] += da[i] * db[j];
    // x^e == -sum modulus_[j] x^j
    for (int i = 2 * e_ - 2; i >= e_; --i) {
        const long c = prod[i] % p_;
        prod[i] = 0;
        if (c == 0) continue;
        for (int j = 0; j < e_; ++j)
            prod[i - e_ + j] -= c * modulus_[j];
    }
    long out = 0, scale = 1;
    for (int i = 0; i < e_; ++i) {
        out += ((prod[i] % p_ + p_) % p_) * scale;
        scale *= p_;
    }
    return static_cast<Felt>(out);
}

void Field::build_tables() {
    add_table_.resize(q_ * q_);
    mul_table_.resize(q_ * q_);
    for (long a = 0; a < q_; ++a)
        for (long b = 0; b < q_; ++b) {
            add_table_[a * q_ + b] = add_slow(static_cast<Felt>(a), static_cast<Felt>(b));
            mul_table_[a * q_ + b] = mul_slow(static_cast<Felt>(a), static_cast<Felt>(b));
        }
}

Felt Field::add(Felt a, Felt b) const {
    check_element(a);
    check_element(b);
    if (!add_table_.empty()) return add_table_[static_cast<long>(a) * q_ + b];
    return add_slow(a, b);
}

Felt Field::neg(Felt a) const {
    check_element(a);
    if (a == 0) return 0;
    if (e_ == 1) return static_cast<Felt>(p_ - a);
    long out = 0, scale = 1;
    long x = a;
    for (int i = 0; i < e_; ++i) {
        const long d = x % p_;
        out += (d == 0 ? 0 : p_ - d) * scale;
        x /= p_;
        scale *= p_;
    }
    return static_cast<Felt>(out);
}

Felt Field::sub(Felt a, Felt b) const { return add(a, neg(b)); }

Felt Field::mul(Felt a, Felt b) const {
    check_element(a);
    check_element(b);
    if (!mul_table_.empty()) return mul_table_[static_cast<long>(a) * q_ + b];
    return mul_slow(a, b);
}

Felt Field::inv(Felt a) const {
    check_element(a);
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    // a^(q-2); the multiplicative group has order q-1
    Felt result = 1;
    Felt base = a;
    long exp = q_ - 2;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

Felt Field::dot(std::span<const Felt> u, std::span<const Felt> v) const {
    if (u.size() != v.size()) throw std::invalid_argument("dot of unequal lengths");
    Felt acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = add(acc, mul(u[i], v[i]));
    return acc;
}

std::string Field::q_token() const {
    if (e_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(e_);
}

}  // namespace khash::gf
