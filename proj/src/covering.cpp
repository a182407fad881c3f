#include "khash/covering.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace khash::covering {

namespace {

using gf::Felt;

std::vector<Felt> decode_point(long idx, long q, std::size_t m) {
    std::vector<Felt> v(m);
    for (std::size_t j = 0; j < m; ++j) {
        v[j] = static_cast<Felt>(idx % q);
        idx /= q;
    }
    return v;
}

long pow_checked(long q, std::size_t m, long cap) {
    long total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > cap / q) return -1;
        total *= q;
    }
    return total;
}

}  // namespace

HyperplaneMultiset make_multiset(gf::Field field, std::size_t m,
                                 std::vector<Hyperplane> planes) {
    if (m < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    for (const auto& h : planes) {
        if (h.normal.size() != m) throw std::invalid_argument("normal length mismatch");
        if (h.offset == 0 || h.offset >= field.q())
            throw std::invalid_argument("plane offset must be nonzero (origin-avoiding)");
        bool nonzero = false;
        for (Felt g : h.normal) {
            if (g >= field.q()) throw std::invalid_argument("normal entry out of range");
            nonzero |= (g != 0);
        }
        if (!nonzero) throw std::invalid_argument("plane normal must be nonzero");
    }
    return HyperplaneMultiset{std::move(field), m, std::move(planes)};
}

long min_coverage(const HyperplaneMultiset& H) {
    const long q = H.field.q();
    if (H.m > 6 || q > 9)
        throw std::invalid_argument("coverage check limited to m <= 6, q <= 9");
    const long total = pow_checked(q, H.m, 1L << 20);
    long t = -1;
    for (long idx = 1; idx < total; ++idx) {
        const auto v = decode_point(idx, q, H.m);
        long count = 0;
        for (const auto& h : H.planes)
            if (H.field.dot(v, h.normal) == h.offset) ++count;
        if (t < 0 || count < t) t = count;
        if (t == 0) break;
    }
    return t < 0 ? 0 : t;
}

bool bruen_holds(const HyperplaneMultiset& H) {
    const long t = min_coverage(H);
    const long q = H.field.q();
    return static_cast<long>(H.planes.size()) >=
           (static_cast<long>(H.m) + t - 1) * (q - 1);
}

MulticoverInstance make_multicover_instance(gf::Field field, codes::GeneratorMatrix code,
                                            std::vector<std::vector<Felt>> pivots,
                                            std::vector<std::vector<Felt>> subcode_rows) {
    const long q = field.q();
    const std::size_t m = code.m;
    const std::size_t d = code.n;
    const std::size_t l = pivots.size();
    if (!(code.field == field)) throw std::invalid_argument("code field mismatch");
    if (l < 1) throw std::invalid_argument("invariant failed: at least one pivot required");
    if (l > static_cast<std::size_t>(q - 1))
        throw std::invalid_argument("invariant failed: pivot count exceeds q-1");
    if (static_cast<std::size_t>(q - 1) > m)
        throw std::invalid_argument("invariant failed: q-1 exceeds code dimension m");
    for (const auto& x : pivots) {
        if (x.size() != d) throw std::invalid_argument("invariant failed: pivot length mismatch");
        for (Felt v : x)
            if (v == 0) throw std::invalid_argument("invariant failed: pivot has a zero coordinate");
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < l; ++a)
            for (std::size_t b = a + 1; b < l; ++b)
                if (pivots[a][i] == pivots[b][i])
                    throw std::invalid_argument(
                        "invariant failed: pivots collide in a coordinate");
    if (codes::matrix_rank(field, pivots) != l)
        throw std::invalid_argument("invariant failed: pivots are linearly dependent");
    for (const auto& x : pivots)
        if (!codes::in_code(code, x))
            throw std::invalid_argument("invariant failed: pivot outside the code");
    if (subcode_rows.size() != m - l)
        throw std::invalid_argument("invariant failed: subcode dimension must be m-l");
    for (const auto& r : subcode_rows) {
        if (r.size() != d) throw std::invalid_argument("invariant failed: subcode row length mismatch");
        if (!codes::in_code(code, r))
            throw std::invalid_argument("invariant failed: subcode row outside the code");
    }
    if (!subcode_rows.empty()) {
        if (codes::matrix_rank(field, subcode_rows) != subcode_rows.size())
            throw std::invalid_argument("invariant failed: subcode rows are linearly dependent");
        auto stacked = pivots;
        stacked.insert(stacked.end(), subcode_rows.begin(), subcode_rows.end());
        if (codes::matrix_rank(field, stacked) != m)
            throw std::invalid_argument("invariant failed: subcode meets the pivot span");
    }
    return MulticoverInstance{std::move(field), d, std::move(code), std::move(pivots),
                              std::move(subcode_rows)};
}

MulticoverCheck lemma3_holds(const MulticoverInstance& inst) {
    const long q = inst.field.q();
    if (q > 64) throw std::invalid_argument("multicover check limited to q <= 64");
    const std::size_t m = inst.code.m;
    const std::size_t l = inst.pivots.size();
    const long d = static_cast<long>(inst.d);

    long t = 0;
    if (!inst.subcode_rows.empty()) {
        // S_i as a value bitmask: nonzero elements minus the pivot values
        std::vector<std::uint64_t> allowed(inst.d);
        const std::uint64_t nonzero = ((q == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1)) & ~std::uint64_t{1};
        for (std::size_t i = 0; i < inst.d; ++i) {
            std::uint64_t s = nonzero;
            for (const auto& x : inst.pivots) s &= ~(std::uint64_t{1} << x[i]);
            allowed[i] = s;
        }
        const auto sub = codes::make_generator(
            inst.field, inst.subcode_rows);  // rank validated at construction
        const auto words = codes::enumerate_codewords(sub);
        t = -1;
        for (std::size_t c = 1; c < words.size(); ++c) {
            long hits = 0;
            for (std::size_t i = 0; i < inst.d; ++i)
                if (allowed[i] >> words[c][i] & 1) ++hits;
            if (t < 0 || hits < t) t = hits;
        }
        if (t < 0) t = 0;
    }

    // m - l <= ((q-l-1)/(q-1)) d - t + 1, cleared of denominators
    const long lhs = (static_cast<long>(m - l) + t - 1) * (q - 1);
    const long rhs = (q - static_cast<long>(l) - 1) * d;
    return MulticoverCheck{t, lhs <= rhs};
}

HyperplaneMultiset random_cover(const gf::Field& field, std::size_t m, long target_t,
                                std::uint64_t seed) {
    if (target_t < 1) throw std::invalid_argument("coverage target must be >= 1");
    const long q = field.q();
    const long total = pow_checked(q, m, 1L << 20);
    if (total < 0 || m > 6 || q > 9)
        throw std::invalid_argument("random cover limited to m <= 6, q <= 9");
    std::mt19937_64 rng(seed);
    std::vector<long> count(total, 0);
    std::vector<Hyperplane> planes;
    const long cap = 64 * (target_t + 1) * static_cast<long>(m) * q;
    auto coverage_met = [&] {
        for (long idx = 1; idx < total; ++idx)
            if (count[idx] < target_t) return false;
        return true;
    };
    while (!coverage_met()) {
        if (static_cast<long>(planes.size()) > cap)
            throw std::logic_error("random cover failed to converge");
        Hyperplane h;
        h.normal.resize(m);
        do {
            for (auto& g : h.normal) g = static_cast<Felt>(rng() % q);
        } while (std::all_of(h.normal.begin(), h.normal.end(), [](Felt g) { return g == 0; }));
        h.offset = static_cast<Felt>(1 + rng() % (q - 1));
        for (long idx = 1; idx < total; ++idx)
            if (field.dot(decode_point(idx, q, m), h.normal) == h.offset) ++count[idx];
        planes.push_back(std::move(h));
    }
    // a few redundant extras so sizes are not always minimal
    const long extras = static_cast<long>(rng() % 3);
    for (long x = 0; x < extras; ++x) {
        Hyperplane h;
        h.normal.resize(m);
        do {
            for (auto& g : h.normal) g = static_cast<Felt>(rng() % q);
        } while (std::all_of(h.normal.begin(), h.normal.end(), [](Felt g) { return g == 0; }));
        h.offset = static_cast<Felt>(1 + rng() % (q - 1));
        planes.push_back(std::move(h));
    }
    return make_multiset(field, m, std::move(planes));
}

MulticoverInstance random_multicover_instance(const gf::Field& field, std::size_t l,
                                              std::size_t m, std::size_t d,
                                              std::uint64_t seed) {
    const long q = field.q();
    if (l < 1 || l > static_cast<std::size_t>(q - 1) ||
        static_cast<std::size_t>(q - 1) > m || m > d)
        throw std::invalid_argument("require 1 <= l <= q-1 <= m <= d");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // per coordinate: l distinct nonzero values via a partial shuffle
        std::vector<std::vector<Felt>> pivots(l, std::vector<Felt>(d));
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<Felt> pool;
            for (long v = 1; v < q; ++v) pool.push_back(static_cast<Felt>(v));
            for (std::size_t j = 0; j < l; ++j) {
                const std::size_t pickIdx = j + rng() % (pool.size() - j);
                std::swap(pool[j], pool[pickIdx]);
                pivots[j][i] = pool[j];
            }
        }
        if (codes::matrix_rank(field, pivots) != l) continue;
        std::vector<std::vector<Felt>> rows(m - l, std::vector<Felt>(d));
        for (auto& r : rows)
            for (auto& v : r) v = static_cast<Felt>(rng() % q);
        auto stacked = pivots;
        stacked.insert(stacked.end(), rows.begin(), rows.end());
        if (codes::matrix_rank(field, stacked) != m) continue;
        auto code = codes::make_generator(field, stacked);
        return make_multicover_instance(field, std::move(code), std::move(pivots),
                                        std::move(rows));
    }
    throw std::runtime_error("instance generation exceeded the rejection cap");
}

std::optional<HyperplaneMultiset> find_tight_cover(const gf::Field& field, std::size_t m,
                                                   long t) {
    const long q = field.q();
    const long total = pow_checked(q, m, 1L << 20);
    if (total < 0 || m > 6 || q > 9)
        throw std::invalid_argument("tight-cover search limited to m <= 6, q <= 9");
    // every origin-avoiding plane once: normals up to scale, all offsets
    std::vector<Hyperplane> all;
    for (long idx = 1; idx < total; ++idx) {
        const auto g = decode_point(idx, q, m);
        Felt lead = 0;
        for (Felt v : g)
            if (v != 0) { lead = v; break; }
        if (lead != 1) continue;
        for (long b = 1; b < q; ++b) all.push_back(Hyperplane{g, static_cast<Felt>(b)});
    }
    const std::size_t size = static_cast<std::size_t>((static_cast<long>(m) + t - 1) * (q - 1));
    if (all.empty() || size == 0) return std::nullopt;
    double combos = 1;  // multisets with repetition: C(|all|+size-1, size)
    for (std::size_t i = 0; i < size; ++i)
        combos = combos * static_cast<double>(all.size() + i) / static_cast<double>(i + 1);
    if (combos > 5e6) throw std::invalid_argument("tight-cover search space too large");

    std::vector<std::size_t> pick(size, 0);  // non-decreasing plane indices
    for (;;) {
        std::vector<Hyperplane> planes;
        planes.reserve(size);
        for (std::size_t i : pick) planes.push_back(all[i]);
        auto H = make_multiset(field, m, std::move(planes));
        if (min_coverage(H) >= t) return H;
        // next multiset in lexicographic order
        long j = static_cast<long>(size) - 1;
        while (j >= 0 && pick[j] == all.size() - 1) --j;
        if (j < 0) return std::nullopt;
        const std::size_t v = pick[static_cast<std::size_t>(j)] + 1;
        for (std::size_t i = static_cast<std::size_t>(j); i < size; ++i) pick[i] = v;
    }
}

}  // namespace khash::covering
