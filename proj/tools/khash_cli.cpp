#include "khash/bounds.hpp"
#include "khash/codes.hpp"
#include "khash/covering.hpp"
#include "khash/primepow.hpp"
#include "khash/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

khash::gf::Field field_for(long q) {
    const auto pe = khash::prime_power_decompose(q);
    if (!pe) throw std::runtime_error("q = " + std::to_string(q) + " is not a prime power");
    return khash::gf::Field::make(pe->first, pe->second);
}

khash::codes::GeneratorMatrix load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return khash::codes::read_code(in);
}

std::vector<khash::bounds::BoundId> parse_bounds(const std::string& list) {
    static const std::map<std::string, khash::bounds::BoundId> names = {
        {"recursive", khash::bounds::BoundId::Recursive},
        {"fredman_komlos", khash::bounds::BoundId::FredmanKomlos},
        {"fk_lower", khash::bounds::BoundId::FKLower},
        {"korner_marton", khash::bounds::BoundId::KornerMarton},
        {"blackburn_wild", khash::bounds::BoundId::BlackburnWild},
        {"plotkin_cor", khash::bounds::BoundId::PlotkinCor},
        {"aaltonen_cor", khash::bounds::BoundId::AaltonenCor},
        {"linear_lower", khash::bounds::BoundId::LinearLower},
    };
    std::vector<khash::bounds::BoundId> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = list.find(',', pos);
        const std::string name =
            list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto it = names.find(name);
        if (it == names.end()) throw std::runtime_error("unknown bound_id '" + name + "'");
        out.push_back(it->second);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void dump_multiset(std::ostream& out, const khash::covering::HyperplaneMultiset& H) {
    out << "q=" << H.field.q() << " m=" << H.m << " planes=" << H.planes.size() << "\n";
    for (const auto& h : H.planes) {
        out << "  g =";
        for (auto g : h.normal) out << " " << g;
        out << " ; b = " << h.offset << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounds computation and verification for linear (q,k)-hash codes"};
    app.require_subcommand(1);

    long t1_qmax = 64;
    std::string t1_csv;
    auto* t1 = app.add_subcommand("table1", "k=3 bound table for prime powers q in [3, qmax]");
    t1->add_option("--qmax", t1_qmax, "largest q")->capture_default_str();
    t1->add_option("--csv", t1_csv, "also write the rows as CSV to this file");

    long sw_kmin = 0, sw_kmax = 0, sw_qcap = 0;
    std::string sw_bounds, sw_out;
    auto* sw = app.add_subcommand("sweep", "per-(q,k) bound values as CSV");
    sw->add_option("--kmin", sw_kmin, "smallest k")->required();
    sw->add_option("--kmax", sw_kmax, "largest k")->required();
    sw->add_option("--qcap", sw_qcap, "largest q")->required();
    sw->add_option("--bounds", sw_bounds, "comma-separated bound_id list");
    sw->add_option("--out", sw_out, "output CSV path")->required();

    long cj_kmin = 3, cj_kmax = 100, cj_qcap = 4096;
    auto* cj = app.add_subcommand("conjecture",
                                  "check plotkin_cor < korner_marton over the (q,k) grid");
    cj->add_option("--kmin", cj_kmin, "smallest k")->capture_default_str();
    cj->add_option("--kmax", cj_kmax, "largest k")->capture_default_str();
    cj->add_option("--qcap", cj_qcap, "per-k q ceiling is max(k^2, qcap)")->capture_default_str();

    std::string vf_code;
    long vf_k = 0;
    std::uint64_t vf_budget = khash::codes::kDefaultBudget;
    auto* vf = app.add_subcommand("verify", "test the k-hash property of a code file");
    vf->add_option("--code", vf_code, "code file path")->required();
    vf->add_option("--k", vf_k, "subset size k")->required();
    vf->add_option("--budget", vf_budget, "work budget in coordinate comparisons")
        ->capture_default_str();

    std::string md_code;
    auto* md = app.add_subcommand("mindist", "minimum distance of a code file");
    md->add_option("--code", md_code, "code file path")->required();

    long se_q = 0, se_n = 0, se_k = 0, se_trials = 0;
    std::uint64_t se_seed = 0;
    auto* se = app.add_subcommand("search", "largest m with an [n,m] linear k-hash code");
    se->add_option("--q", se_q, "field order (prime power)")->required();
    se->add_option("--n", se_n, "code length")->required();
    se->add_option("--k", se_k, "subset size k")->required();
    auto* se_ex = se->add_flag("--exhaustive", "systematic-form exhaustive search");
    auto* se_rand = se->add_option("--random", se_trials, "random search with this many trials per m");
    se->add_option("--seed", se_seed, "random search seed")->capture_default_str();
    se_ex->excludes(se_rand);

    long bc_q = 0, bc_m = 0, bc_trials = 0;
    std::uint64_t bc_seed = 0;
    auto* bc = app.add_subcommand("bruen-check", "randomized multiple-cover bound checks");
    bc->add_option("--q", bc_q, "field order (prime power)")->required();
    bc->add_option("--m", bc_m, "ambient dimension")->required();
    bc->add_option("--trials", bc_trials, "number of random covers")->required();
    bc->add_option("--seed", bc_seed, "master seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*t1) {
            std::cout << khash::report::render_table(t1_qmax);
            if (!t1_csv.empty()) {
                std::ofstream out(t1_csv);
                if (!out) throw std::runtime_error("cannot write '" + t1_csv + "'");
                out << khash::report::table_csv(t1_qmax);
            }
            return 0;
        }
        if (*sw) {
            khash::report::SweepConfig cfg;
            cfg.k_min = sw_kmin;
            cfg.k_max = sw_kmax;
            cfg.q_cap = sw_qcap;
            if (!sw_bounds.empty()) cfg.selection = parse_bounds(sw_bounds);
            std::ofstream out(sw_out);
            if (!out) throw std::runtime_error("cannot write '" + sw_out + "'");
            out << khash::report::sweep_csv(cfg);
            return 0;
        }
        if (*cj) {
            const auto res =
                khash::report::run_conjecture({cj_kmin, cj_kmax, cj_qcap});
            std::cout << res.report;
            return res.pass ? 0 : 1;
        }
        if (*vf) {
            const auto G = load_code(vf_code);
            try {
                const auto witness = khash::codes::is_k_hash(G, static_cast<int>(vf_k), vf_budget);
                if (!witness) {
                    std::cout << vf_k << "-hash: yes\n";
                    return 0;
                }
                for (const auto& cw : witness->codewords) {
                    for (std::size_t i = 0; i < cw.size(); ++i)
                        std::cout << (i ? " " : "") << cw[i];
                    std::cout << "\n";
                }
                std::cout << vf_k << "-hash: no\n";
                return 1;
            } catch (const khash::codes::BudgetExceeded& e) {
                std::cerr << "error: " << e.what() << " (covered fraction "
                          << e.progress << ")\n";
                return 2;
            }
        }
        if (*md) {
            std::cout << khash::codes::min_distance(load_code(md_code)) << "\n";
            return 0;
        }
        if (*se) {
            if (!*se_ex && se_trials <= 0)
                throw std::runtime_error("pick a mode: --exhaustive or --random TRIALS");
            khash::codes::SearchOptions opts;
            opts.exhaustive = static_cast<bool>(*se_ex);
            opts.trials = se_trials;
            opts.seed = se_seed;
            const auto field = field_for(se_q);
            const auto res = khash::codes::max_linear_khash_dimension(
                field, static_cast<std::size_t>(se_n), static_cast<int>(se_k), opts);
            std::cout << "best m: " << res.best_m
                      << (opts.exhaustive ? "" : " (random-mode lower bound)") << "\n";
            khash::codes::write_code(std::cout, res.code);
            return 0;
        }
        if (*bc) {
            const auto field = field_for(bc_q);
            for (long trial = 0; trial < bc_trials; ++trial) {
                const auto seed = bc_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial);
                const long target_t = 1 + trial % 2;
                const auto H = khash::covering::random_cover(
                    field, static_cast<std::size_t>(bc_m), target_t, seed);
                if (!khash::covering::bruen_holds(H)) {
                    std::cout << "violation at trial " << trial << ":\n";
                    dump_multiset(std::cout, H);
                    return 1;
                }
            }
            std::cout << "bruen-check q=" << bc_q << " m=" << bc_m << " trials=" << bc_trials
                      << ": all covers satisfy |H| >= (m+t-1)(q-1)\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
