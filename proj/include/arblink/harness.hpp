#pragma once

#include "arblink/engine.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace arblink::harness {

// Built-in corpus spanning the gcd/lcm branches of the closed formula:
// rational fractions, pretzels and mixed Montesinos entries.
inline std::vector<tangle::MontesinosSpec> builtin_corpus() {
    using tangle::Frac;
    std::vector<tangle::MontesinosSpec> corpus;
    for (auto [p, q] : {std::pair<long long, long long>{1, 3}, {-1, 3}, {2, 5}, {-2, 5},
                        {3, 7}, {5, 2}, {7, 2}, {3, 1}})
        corpus.push_back({Frac(p, q)});
    corpus.push_back({Frac(3, 1), Frac(3, 1), Frac(3, 1)});
    corpus.push_back({Frac(-2, 1), Frac(3, 1), Frac(5, 1)});
    corpus.push_back({Frac(3, 1), Frac(5, 1), Frac(7, 1)});
    corpus.push_back({Frac(5, 1), Frac(5, 1), Frac(5, 1)});
    corpus.push_back({Frac(1, 3), Frac(1, 3)});
    corpus.push_back({Frac(2, 5), Frac(3, 7)});
    return corpus;
}

inline std::vector<long long> default_orders() { return {3, 5, 7, 9, 11, 13, 15}; }

struct CheckRow {
    std::string input;
    long long n = 0;
    long long formula = 0;
    long long engine = 0;
    long long oracle = 0;
    bool agree = false;
    bool invariants_ok = false;
    std::string note;
};

struct CheckReport {
    std::vector<CheckRow> rows;
    bool all_ok = true;
};

// Runs every corpus entry through all three routes and the structural
// invariants.  `opts` lets tests inject corrupted tables.
inline CheckReport run_check(const std::vector<tangle::MontesinosSpec>& corpus,
                             const std::vector<long long>& orders,
                             const engine::EvalOptions& opts = {}) {
    CheckReport report;
    for (const auto& spec : corpus) {
        const tangle::Word word = tangle::montesinos_word(spec);
        for (long long n : orders) {
            CheckRow row;
            row.input = tangle::montesinos_str(spec);
            row.n = n;
            try {
                row.formula = engine::coloring_count_formula(spec, n);
                row.engine = engine::coloring_count_engine(word, n, opts);
                row.oracle = engine::coloring_count_oracle(word, n);
                row.agree = row.formula == row.engine && row.engine == row.oracle;

                const long long f_plus = engine::rt_invariant(word, n, +1, opts);
                const long long f_minus = engine::rt_invariant(word, n, -1, opts);
                bool ok = row.engine % n == 0;
                ok = ok && row.engine == f_plus;
                ok = ok && (f_minus == f_plus || f_minus == -f_plus);
                // mirror invariance of the formula under q_i -> -q_i
                tangle::MontesinosSpec mirrored;
                for (const auto& f : spec) mirrored.emplace_back(-f.num, f.den);
                ok = ok && engine::coloring_count_formula(mirrored, n) == row.formula;
                row.invariants_ok = ok;
            } catch (const Error& e) {
                row.agree = false;
                row.invariants_ok = false;
                row.note = e.what();
            }
            report.all_ok = report.all_ok && row.agree && row.invariants_ok;
            report.rows.push_back(row);
        }
    }
    return report;
}

inline std::string format_table(const CheckReport& report) {
    std::ostringstream os;
    os << "input            n   formula    engine    oracle  status\n";
    for (const auto& row : report.rows) {
        os.width(15);
        os << std::left << row.input << std::right << " ";
        os.width(3);
        os << row.n << " ";
        os.width(9);
        os << row.formula << " ";
        os.width(9);
        os << row.engine << " ";
        os.width(9);
        os << row.oracle << "  ";
        os << (row.agree && row.invariants_ok ? "ok" : "FAIL");
        if (!row.note.empty()) os << "  " << row.note;
        os << "\n";
    }
    os << (report.all_ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace arblink::harness
