#pragma once

#include "khash/bounds.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace khash::report {

/// Rendered k=3 bound table for prime powers q in [3, q_max]: exact and
/// ceiling-rounded Plotkin-corollary columns, the LP-corollary float, and
/// the Korner-Marton column (exact fraction when one exists). Rows beyond
/// the standard reference list are marked.
std::string render_table(long q_max = 64);

/// Same data as CSV (schema: q,k,bound_id,value_exact,value_float).
std::string table_csv(long q_max = 64);

struct SweepConfig {
    long k_min = 3;
    long k_max = 3;
    long q_cap = 64;
    std::vector<bounds::BoundId> selection;  // empty = default bound set
};

/// Bounds eligible for sweep selection, as bound_id strings.
std::vector<std::string> sweep_bound_names();

/// One CSV row per (k, q, bound): prime powers q in [k, q_cap] for each k.
/// For 3 < k and q <= 2k-4 a single informational rate-0 row replaces the
/// upper bounds (no dimension-2 linear k-hash codes exist there). Asserts
/// lower <= upper on every row where both are defined.
std::string sweep_csv(const SweepConfig& cfg);

struct ConjectureConfig {
    long k_min = 3;
    long k_max = 100;
    long q_cap = 4096;  // per-k ceiling is max(k^2, q_cap)
};

struct ConjectureResult {
    bool pass = false;
    long pairs_checked = 0;
    long chain_points = 0;
    std::string report;
};

/// For each k, checks Cor4(q,k) < KM(q,k) over prime powers
/// q in [2k-3, max(k^2, q_cap)], plus the inequality-chain check on
/// q in {k^2, 2k^2, 10k^2, 100k^2} for k >= 4.
ConjectureResult run_conjecture(const ConjectureConfig& cfg);

}  // namespace khash::report
