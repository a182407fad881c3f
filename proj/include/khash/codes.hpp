#pragma once

#include "khash/gf.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace khash::codes {

/// Full-rank m x n generator matrix over a field; the code is its row space.
struct GeneratorMatrix {
    gf::Field field;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::vector<gf::Felt>> rows;
};

/// Validates shape (1 <= m <= n), element ranges, and rank(rows) = m.
GeneratorMatrix make_generator(gf::Field field, std::vector<std::vector<gf::Felt>> rows);

/// Row rank by Gaussian elimination; does not modify the input.
std::size_t matrix_rank(const gf::Field& field, std::vector<std::vector<gf::Felt>> rows);

/// True iff word lies in the row space of G.
bool in_code(const GeneratorMatrix& G, std::span<const gf::Felt> word);

/// All q^m codewords uG, ordered by u's base-q index (digit j of the index
/// is the coefficient of row j). Requires q^m <= 2^20.
std::vector<std::vector<gf::Felt>> enumerate_codewords(const GeneratorMatrix& G);

/// Minimum Hamming weight over nonzero codewords. Requires q^m <= 2^20.
std::size_t min_distance(const GeneratorMatrix& G);

/// k distinct codewords that collide (some pair agrees) in every coordinate.
struct HashWitness {
    std::vector<std::vector<gf::Felt>> codewords;
};

/// Distinctness of the k codewords plus a colliding pair in every
/// coordinate, checked straight from the definition; optionally also
/// membership of each codeword in G's row space.
bool witness_valid(const GeneratorMatrix& G, const HashWitness& w, std::size_t k);

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(double progress_fraction)
        : std::runtime_error("verification work budget exceeded"),
          progress(progress_fraction) {}
    double progress;  // fraction of the search space covered before stopping
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

/// Empty result iff the code is (q,k)-hash. Otherwise the first witness in
/// enumeration order. Linearity lets it scan only subsets containing 0:
/// translating a failing k-subset by any member gives a failing subset
/// through 0, so it tests {0} plus each (k-1)-subset of nonzero codewords.
/// Requires k >= 3 and q <= 64 (k > q is legal and always fails by
/// pigeonhole once q^m >= k); budget counts coordinate comparisons.
std::optional<HashWitness> is_k_hash(const GeneratorMatrix& G, int k,
                                     std::uint64_t budget = kDefaultBudget);

/// Oracle for is_k_hash: scans all C(q^m, k) subsets directly.
/// Requires q^m <= 200.
std::optional<HashWitness> is_k_hash_naive(const GeneratorMatrix& G, int k);

struct SearchOptions {
    bool exhaustive = true;
    long trials = 0;          // random mode
    std::uint64_t seed = 0;   // random mode
    std::uint64_t budget = kDefaultBudget;
};

struct SearchResult {
    std::size_t best_m = 0;
    GeneratorMatrix code;
};

/// Largest m with an [n,m] linear k-hash code over the field (exhaustive
/// mode: exact, by enumerating systematic G = [I_m | A] with each A-column's
/// first nonzero entry scaled to 1 — complete up to column permutation and
/// scaling, which preserve the k-hash property). Random mode reports the
/// best m found over `trials` random codes per dimension, a lower bound.
/// Exhaustive mode requires q <= 4 and n <= 6.
SearchResult max_linear_khash_dimension(const gf::Field& field, std::size_t n, int k,
                                        const SearchOptions& opts);

/// Uniformly random full-rank m x n matrix, deterministic per seed.
/// Rejection-samples rank deficiency; errors after 1000 rejections.
GeneratorMatrix random_linear_code(const gf::Field& field, std::size_t n, std::size_t m,
                                   std::uint64_t seed);

/// Text format: line 1 "q n m" (q as "p^e" plus " mod c0 c1 ... ce" when
/// e > 1), then m lines of n element indices.
GeneratorMatrix read_code(std::istream& in);
void write_code(std::ostream& out, const GeneratorMatrix& G);

}  // namespace khash::codes
