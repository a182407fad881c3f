#include "khash/codes.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <random>

namespace khash::codes {

namespace {

using gf::Felt;

// q^m if it stays within cap, else nullopt.
std::optional<std::size_t> checked_pow(long q, std::size_t m, std::size_t cap) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > cap / static_cast<std::size_t>(q)) return std::nullopt;
        total *= static_cast<std::size_t>(q);
    }
    return total;
}

std::vector<Felt> scaled_row(const gf::Field& f, const std::vector<Felt>& row, Felt c) {
    std::vector<Felt> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = f.mul(c, row[i]);
    return out;
}

}  // namespace

std::size_t matrix_rank(const gf::Field& field, std::vector<std::vector<Felt>> rows) {
    const std::size_t m = rows.size();
    if (m == 0) return 0;
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[rank], rows[pivot]);
        const Felt inv = field.inv(rows[rank][col]);
        for (std::size_t j = col; j < n; ++j) rows[rank][j] = field.mul(inv, rows[rank][j]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Felt c = rows[r][col];
            for (std::size_t j = col; j < n; ++j)
                rows[r][j] = field.sub(rows[r][j], field.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

GeneratorMatrix make_generator(gf::Field field, std::vector<std::vector<Felt>> rows) {
    if (rows.empty()) throw std::invalid_argument("generator matrix needs at least one row");
    const std::size_t m = rows.size();
    const std::size_t n = rows[0].size();
    if (n == 0) throw std::invalid_argument("generator matrix needs at least one column");
    if (m > n) throw std::invalid_argument("generator matrix requires m <= n");
    for (const auto& row : rows) {
        if (row.size() != n) throw std::invalid_argument("ragged generator matrix");
        for (Felt v : row)
            if (v >= field.q()) throw std::invalid_argument("matrix entry out of field range");
    }
    if (matrix_rank(field, rows) != m)
        throw std::invalid_argument("generator matrix is rank deficient");
    return GeneratorMatrix{std::move(field), m, n, std::move(rows)};
}

bool in_code(const GeneratorMatrix& G, std::span<const Felt> word) {
    if (word.size() != G.n) throw std::invalid_argument("word length mismatch");
    auto rows = G.rows;
    rows.emplace_back(word.begin(), word.end());
    return matrix_rank(G.field, std::move(rows)) == G.m;
}

std::vector<std::vector<Felt>> enumerate_codewords(const GeneratorMatrix& G) {
    const auto total = checked_pow(G.field.q(), G.m, std::size_t{1} << 20);
    if (!total) throw std::invalid_argument("codeword enumeration limited to q^m <= 2^20");
    const gf::Field& f = G.field;
    std::vector<std::vector<Felt>> out;
    out.reserve(*total);
    out.emplace_back(G.n, 0);
    // index d*base + r encodes u with digit j equal to d and lower digits r
    std::size_t base = 1;
    for (std::size_t j = 0; j < G.m; ++j) {
        for (long d = 1; d < f.q(); ++d) {
            const auto scaled = scaled_row(f, G.rows[j], static_cast<Felt>(d));
            for (std::size_t r = 0; r < base; ++r) {
                std::vector<Felt> w(G.n);
                for (std::size_t i = 0; i < G.n; ++i) w[i] = f.add(out[r][i], scaled[i]);
                out.push_back(std::move(w));
            }
        }
        base *= static_cast<std::size_t>(f.q());
    }
    return out;
}

std::size_t min_distance(const GeneratorMatrix& G) {
    const auto words = enumerate_codewords(G);
    std::size_t best = G.n + 1;
    for (std::size_t c = 1; c < words.size(); ++c) {
        std::size_t w = 0;
        for (Felt v : words[c]) w += (v != 0);
        best = std::min(best, w);
    }
    return best;
}

bool witness_valid(const GeneratorMatrix& G, const HashWitness& w, std::size_t k) {
    if (w.codewords.size() != k) return false;
    for (const auto& cw : w.codewords) {
        if (cw.size() != G.n) return false;
        if (!in_code(G, cw)) return false;
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (w.codewords[a] == w.codewords[b]) return false;
    for (std::size_t i = 0; i < G.n; ++i) {
        bool collides = false;
        for (std::size_t a = 0; a < k && !collides; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (w.codewords[a][i] == w.codewords[b][i]) { collides = true; break; }
        if (!collides) return false;
    }
    return true;
}

namespace {

// Depth-first scan over index subsets of [first_candidate, N), extending a
// fixed root set, looking for a subset where every coordinate has a
// colliding pair. State per depth: the list of still collision-free
// ("alive") coordinates and, per alive coordinate, the bitmask of values
// seen. A dead coordinate stays dead below, so only alive ones are touched;
// the work per node is one mask probe per alive coordinate, which is the
// budgeted unit.
class SubsetScanner {
public:
    SubsetScanner(const std::vector<Felt>& flat, std::size_t N, std::size_t n,
                  std::size_t pick, std::uint64_t budget)
        : flat_(flat), N_(N), n_(n), pick_(pick), budget_(budget),
          alive_(pick + 1), seen_(pick + 1, std::vector<std::uint64_t>(n, 0)),
          chosen_() {
        alive_[0].resize(n);
        for (std::size_t i = 0; i < n; ++i) alive_[0][i] = static_cast<std::uint32_t>(i);
    }

    // Roots the scan at the given codeword indices (collisions accounted).
    void seed_root(const std::vector<std::uint32_t>& root) {
        for (std::uint32_t c : root) absorb(0, c);
        root_ = root;
    }

    std::optional<std::vector<std::uint32_t>> run(std::size_t first_candidate) {
        if (pick_ > N_ - first_candidate) return std::nullopt;  // not enough codewords
        first_ = first_candidate;
        auto found = descend(0, first_candidate);
        if (!found) return std::nullopt;
        auto full = root_;
        full.insert(full.end(), chosen_.begin(), chosen_.end());
        return full;
    }

private:
    // Adds codeword c at depth d in place (used only for the root).
    void absorb(std::size_t d, std::uint32_t c) {
        auto& alive = alive_[d];
        auto& seen = seen_[d];
        std::vector<std::uint32_t> next;
        next.reserve(alive.size());
        for (std::uint32_t i : alive) {
            const std::uint64_t bit = std::uint64_t{1} << flat_[static_cast<std::size_t>(c) * n_ + i];
            if (seen[i] & bit) continue;
            seen[i] |= bit;
            next.push_back(i);
        }
        alive = std::move(next);
    }

    // Extends depth d with codeword c, writing state for depth d+1.
    // Returns the number of coordinates still alive.
    std::size_t extend(std::size_t d, std::uint32_t c) {
        const auto& alive = alive_[d];
        const auto& seen = seen_[d];
        auto& calive = alive_[d + 1];
        auto& cseen = seen_[d + 1];
        calive.clear();
        for (std::uint32_t i : alive) {
            const std::uint64_t bit = std::uint64_t{1} << flat_[static_cast<std::size_t>(c) * n_ + i];
            if (seen[i] & bit) continue;
            cseen[i] = seen[i] | bit;
            calive.push_back(i);
        }
        work_ += alive.size();
        return calive.size();
    }

    bool descend(std::size_t depth, std::size_t from) {
        const std::size_t remaining = pick_ - depth;
        for (std::size_t c = from; c + remaining <= N_; ++c) {
            if (work_ > budget_) {
                const double progress =
                    static_cast<double>(chosen_.empty() ? c : chosen_[0] - first_) /
                    static_cast<double>(N_ - first_);
                throw BudgetExceeded(progress);
            }
            chosen_.resize(depth);
            chosen_.push_back(static_cast<std::uint32_t>(c));
            if (extend(depth, static_cast<std::uint32_t>(c)) == 0) {
                // every coordinate already collides; the lexicographically
                // first completion uses the next consecutive indices
                for (std::size_t x = c + 1; chosen_.size() < pick_; ++x)
                    chosen_.push_back(static_cast<std::uint32_t>(x));
                return true;
            }
            if (depth + 1 == pick_) continue;  // some coordinate all-distinct
            if (descend(depth + 1, c + 1)) return true;
        }
        return false;
    }

    const std::vector<Felt>& flat_;
    std::size_t N_, n_, pick_;
    std::uint64_t budget_;
    std::uint64_t work_ = 0;
    std::size_t first_ = 0;
    std::vector<std::vector<std::uint32_t>> alive_;
    std::vector<std::vector<std::uint64_t>> seen_;
    std::vector<std::uint32_t> chosen_;
    std::vector<std::uint32_t> root_;
};

std::vector<Felt> flatten(const std::vector<std::vector<Felt>>& words, std::size_t n) {
    std::vector<Felt> flat(words.size() * n);
    for (std::size_t c = 0; c < words.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) flat[c * n + i] = words[c][i];
    return flat;
}

HashWitness expand_witness(const std::vector<std::vector<Felt>>& words,
                           const std::vector<std::uint32_t>& indices) {
    HashWitness w;
    for (std::uint32_t c : indices) w.codewords.push_back(words[c]);
    return w;
}

void check_k_hash_args(const GeneratorMatrix& G, int k) {
    if (k < 3) throw std::invalid_argument("require k >= 3");
    if (G.field.q() > 64) throw std::invalid_argument("k-hash check limited to q <= 64");
}

}  // namespace

std::optional<HashWitness> is_k_hash(const GeneratorMatrix& G, int k, std::uint64_t budget) {
    check_k_hash_args(G, k);
    const auto words = enumerate_codewords(G);
    const auto flat = flatten(words, G.n);
    // a failing k-subset translated by one of its members is a failing
    // k-subset through 0, so scanning (k-1)-subsets of nonzero codewords
    // with 0 pinned is complete
    SubsetScanner scan(flat, words.size(), G.n, static_cast<std::size_t>(k) - 1, budget);
    scan.seed_root({0});
    const auto found = scan.run(1);
    if (!found) return std::nullopt;
    HashWitness w = expand_witness(words, *found);
    if (!witness_valid(G, w, static_cast<std::size_t>(k)))
        throw std::logic_error("internal witness failed re-validation");
    return w;
}

std::optional<HashWitness> is_k_hash_naive(const GeneratorMatrix& G, int k) {
    check_k_hash_args(G, k);
    const auto total = checked_pow(G.field.q(), G.m, 200);
    if (!total) throw std::invalid_argument("naive k-hash check limited to q^m <= 200");
    const auto words = enumerate_codewords(G);
    const auto flat = flatten(words, G.n);
    SubsetScanner scan(flat, words.size(), G.n, static_cast<std::size_t>(k),
                       std::numeric_limits<std::uint64_t>::max());
    const auto found = scan.run(0);
    if (!found) return std::nullopt;
    HashWitness w = expand_witness(words, *found);
    if (!witness_valid(G, w, static_cast<std::size_t>(k)))
        throw std::logic_error("internal witness failed re-validation");
    return w;
}

GeneratorMatrix random_linear_code(const gf::Field& field, std::size_t n, std::size_t m,
                                   std::uint64_t seed) {
    if (m < 1 || m > n) throw std::invalid_argument("require 1 <= m <= n");
    std::mt19937_64 rng(seed);
    const long q = field.q();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<Felt>> rows(m, std::vector<Felt>(n));
        for (auto& row : rows)
            for (auto& v : row) v = static_cast<Felt>(rng() % static_cast<std::uint64_t>(q));
        if (matrix_rank(field, rows) == m) return GeneratorMatrix{field, m, n, std::move(rows)};
    }
    throw std::runtime_error("random code generation exceeded the rejection cap");
}

namespace {

// Column vectors in F_q^m that are zero or have first nonzero entry 1:
// exactly one representative per scaling class.
std::vector<std::vector<Felt>> canonical_columns(const gf::Field& f, std::size_t m) {
    const auto total = checked_pow(f.q(), m, std::size_t{1} << 20);
    if (!total) throw std::invalid_argument("column space too large");
    std::vector<std::vector<Felt>> cols;
    for (std::size_t idx = 0; idx < *total; ++idx) {
        std::vector<Felt> v(m);
        std::size_t rest = idx;
        for (std::size_t j = 0; j < m; ++j) {
            v[j] = static_cast<Felt>(rest % static_cast<std::size_t>(f.q()));
            rest /= static_cast<std::size_t>(f.q());
        }
        Felt lead = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (v[j] != 0) { lead = v[j]; break; }
        if (lead == 0 || lead == 1) cols.push_back(std::move(v));
    }
    return cols;
}

GeneratorMatrix systematic_matrix(const gf::Field& f, std::size_t n, std::size_t m,
                                  const std::vector<const std::vector<Felt>*>& acols) {
    std::vector<std::vector<Felt>> rows(m, std::vector<Felt>(n, 0));
    for (std::size_t i = 0; i < m; ++i) rows[i][i] = 1;
    for (std::size_t j = 0; j < acols.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) rows[i][m + j] = (*acols[j])[i];
    return GeneratorMatrix{f, m, n, std::move(rows)};  // [I|A] is full rank
}

// Exhaustive over systematic [I_m | A] with canonical A-columns, in
// lexicographic A order (leftmost column most significant). Complete for
// the existence question: every [n,m] code has a systematic form up to
// column permutation, and permutation plus column scaling preserve the
// k-hash property.
std::optional<GeneratorMatrix> find_khash_systematic(const gf::Field& f, std::size_t n,
                                                     std::size_t m, int k,
                                                     std::uint64_t budget) {
    const auto cols = canonical_columns(f, m);
    const std::size_t slots = n - m;
    std::vector<std::size_t> pick(slots, 0);
    std::vector<const std::vector<Felt>*> acols(slots);
    for (;;) {
        for (std::size_t j = 0; j < slots; ++j) acols[j] = &cols[pick[j]];
        GeneratorMatrix G = systematic_matrix(f, n, m, acols);
        if (!is_k_hash(G, k, budget)) return G;
        std::size_t j = slots;
        while (j > 0) {
            --j;
            if (++pick[j] < cols.size()) break;
            pick[j] = 0;
            if (j == 0) return std::nullopt;
        }
        if (slots == 0) return std::nullopt;  // single matrix I_m
    }
}

}  // namespace

SearchResult max_linear_khash_dimension(const gf::Field& field, std::size_t n, int k,
                                        const SearchOptions& opts) {
    if (n < 1) throw std::invalid_argument("require n >= 1");
    if (k < 3) throw std::invalid_argument("require k >= 3");
    if (opts.exhaustive) {
        if (field.q() > 4 || n > 6)
            throw std::invalid_argument("exhaustive search limited to q <= 4, n <= 6");
        for (std::size_t m = n; m >= 1; --m) {
            if (auto G = find_khash_systematic(field, n, m, k, opts.budget))
                return SearchResult{m, std::move(*G)};
        }
    } else {
        std::size_t m_max = 0;
        while (m_max < n && checked_pow(field.q(), m_max + 1, std::size_t{1} << 20)) ++m_max;
        for (std::size_t m = m_max; m >= 1; --m) {
            for (long trial = 0; trial < opts.trials; ++trial) {
                const auto seed = opts.seed + static_cast<std::uint64_t>(trial) * 0x9e3779b97f4a7c15ULL +
                                  static_cast<std::uint64_t>(m);
                GeneratorMatrix G = random_linear_code(field, n, m, seed);
                if (!is_k_hash(G, k, opts.budget)) return SearchResult{m, std::move(G)};
            }
        }
    }
    throw std::logic_error("dimension search found no code at any m");  // m=1 always succeeds
}

GeneratorMatrix read_code(std::istream& in) {
    std::string qtok;
    long n = 0, m = 0;
    if (!(in >> qtok >> n >> m)) throw std::runtime_error("malformed code header");
    long p = 0;
    int e = 1;
    const auto caret = qtok.find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stol(qtok);
        } else {
            p = std::stol(qtok.substr(0, caret));
            e = std::stoi(qtok.substr(caret + 1));
        }
    } catch (const std::exception&) {
        throw std::runtime_error("malformed field token '" + qtok + "'");
    }
    gf::Field field = [&] {
        try {
            if (e == 1) return gf::Field::make(p, 1);
            std::string kw;
            if (!(in >> kw) || kw != "mod")
                throw std::runtime_error("extension field header needs 'mod c0 c1 ... ce'");
            std::vector<gf::Felt> coeffs(static_cast<std::size_t>(e) + 1);
            for (auto& c : coeffs) {
                long v;
                if (!(in >> v) || v < 0)
                    throw std::runtime_error("malformed modulus coefficient");
                c = static_cast<gf::Felt>(v);
            }
            return gf::Field::with_modulus(p, e, std::move(coeffs));
        } catch (const std::invalid_argument& err) {
            throw std::runtime_error("bad field in code header: " + std::string(err.what()));
        }
    }();
    if (m < 1 || n < m) throw std::runtime_error("code header requires 1 <= m <= n");
    std::vector<std::vector<Felt>> rows(static_cast<std::size_t>(m),
                                        std::vector<Felt>(static_cast<std::size_t>(n)));
    for (auto& row : rows)
        for (auto& v : row) {
            long x;
            if (!(in >> x)) throw std::runtime_error("truncated matrix body");
            if (x < 0 || x >= field.q()) throw std::runtime_error("matrix entry out of range");
            v = static_cast<Felt>(x);
        }
    try {
        return make_generator(std::move(field), std::move(rows));
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error("bad matrix in code file: " + std::string(err.what()));
    }
}

void write_code(std::ostream& out, const GeneratorMatrix& G) {
    out << G.field.q_token() << " " << G.n << " " << G.m;
    if (G.field.e() > 1) {
        out << " mod";
        for (gf::Felt c : G.field.modulus()) out << " " << c;
    }
    out << "\n";
    for (const auto& row : G.rows) {
        for (std::size_t i = 0; i < G.n; ++i) out << (i ? " " : "") << row[i];
        out << "\n";
    }
}

}  // namespace khash::codes
