#pragma once

#include "khash/codes.hpp"
#include "khash/gf.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace khash::covering {

/// Affine hyperplane {v : v . normal = offset} in F_q^m.
struct Hyperplane {
    std::vector<gf::Felt> normal;
    gf::Felt offset;
};

/// A multiset of hyperplanes, none through the origin (normal != 0,
/// offset != 0), the hypothesis of the Jamison and Bruen bounds.
struct HyperplaneMultiset {
    gf::Field field;
    std::size_t m = 0;
    std::vector<Hyperplane> planes;
};

HyperplaneMultiset make_multiset(gf::Field field, std::size_t m,
                                 std::vector<Hyperplane> planes);

/// t = min over nonzero v of the number of planes containing v (0 if some
/// nonzero point is uncovered). Exhaustive over q^m points; requires m <= 6
/// and q <= 9.
long min_coverage(const HyperplaneMultiset& H);

/// |H| >= (m + t - 1)(q - 1) with t = min_coverage(H). At t = 1 this is
/// Jamison's bound |H| >= (q-1)m.
bool bruen_holds(const HyperplaneMultiset& H);

/// Instance of the multicover statement: a code C of dimension m and length
/// d, pivot codewords x_1..x_l that are linearly independent, zero-free and
/// pairwise distinct in every coordinate, and a complementary subcode C'
/// with C' intersecting span(x_i) only in 0.
struct MulticoverInstance {
    gf::Field field;
    std::size_t d = 0;
    codes::GeneratorMatrix code;                       // m x d
    std::vector<std::vector<gf::Felt>> pivots;         // l rows
    std::vector<std::vector<gf::Felt>> subcode_rows;   // m - l rows, may be empty
};

/// Validates every instance invariant; throws std::invalid_argument naming
/// the first failing one.
MulticoverInstance make_multicover_instance(gf::Field field, codes::GeneratorMatrix code,
                                            std::vector<std::vector<gf::Felt>> pivots,
                                            std::vector<std::vector<gf::Felt>> subcode_rows);

struct MulticoverCheck {
    long t = 0;
    bool holds = false;
};

/// With S_i = F_q minus {0, x_{1,i}, ..., x_{l,i}} per coordinate and
/// t = min over nonzero c in C' of |{i : c_i in S_i}| (0 for an empty C'),
/// checks m - l <= ((q-l-1)/(q-1)) d - t + 1. True on every valid instance;
/// false signals a bug. Requires q^(m-l) <= 2^20 and q <= 64.
MulticoverCheck lemma3_holds(const MulticoverInstance& inst);

/// Random multiset covering every nonzero point at least target_t times:
/// adds uniform origin-avoiding planes until coverage is reached, plus a
/// few extras. Deterministic per seed.
HyperplaneMultiset random_cover(const gf::Field& field, std::size_t m, long target_t,
                                std::uint64_t seed);

/// Random valid instance: per-coordinate distinct nonzero pivot values and
/// a random complementary subcode, both rank-checked by rejection.
/// Requires l <= q - 1 <= m <= d. Deterministic per seed.
MulticoverInstance random_multicover_instance(const gf::Field& field, std::size_t l,
                                              std::size_t m, std::size_t d,
                                              std::uint64_t seed);

/// Searches all multisets (repetition allowed) of exactly (m + t - 1)(q - 1)
/// origin-avoiding hyperplanes for one with min_coverage >= t, i.e. a
/// witness that the Bruen bound is tight. Errors when the multiset space
/// exceeds a few million candidates.
std::optional<HyperplaneMultiset> find_tight_cover(const gf::Field& field, std::size_t m,
                                                   long t);

}  // namespace khash::covering
