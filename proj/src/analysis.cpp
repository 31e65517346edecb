#include "dbsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dbsim/tree.hpp"

namespace dbsim::analysis {

namespace {

long long pow2ll(int e) {
    if (e < 0 || e > 62) throw std::invalid_argument("analysis: 2^e outside long long range");
    return 1ll << e;
}

}  // namespace

double preask_success(int n) {
    if (n < 1) throw std::invalid_argument("preask_success: n must be >= 1");
    return std::ldexp(n / 2.0 + 1.0, -n);
}

Rational preask_success_exact(int n) {
    if (n < 1) throw std::invalid_argument("preask_success: n must be >= 1");
    return Rational(n + 2, pow2ll(n + 1));
}

double no_prover_success(int m, int n) {
    if (m < 0 || n < 1) throw std::invalid_argument("no_prover_success: bad arguments");
    return std::ldexp(1.0, -(m + n));
}

Rational no_prover_success_exact(int m, int n) {
    if (m < 0 || n < 1) throw std::invalid_argument("no_prover_success: bad arguments");
    return Rational(1, pow2ll(m + n));
}

double birthday_bound(std::uint64_t count, int bits) {
    if (count < 1 || bits < 1 || bits > 64) throw std::invalid_argument("birthday: bad arguments");
    const double c = static_cast<double>(count);
    return std::ldexp(c * (c - 1.0), -(bits + 1));
}

double birthday_exact(std::uint64_t count, int bits) {
    if (count < 1 || bits < 1 || bits > 64) throw std::invalid_argument("birthday: bad arguments");
    if (bits < 64 && count > (std::uint64_t(1) << bits)) return 1.0;  // pigeonhole
    double all_distinct = 1.0;
    for (std::uint64_t i = 1; i < count; ++i)
        all_distinct *= 1.0 - std::ldexp(static_cast<double>(i), -bits);
    return 1.0 - all_distinct;
}

double hk_success(int n) {
    if (n < 1) throw std::invalid_argument("hk_success: n must be >= 1");
    return std::pow(0.75, n);
}

Rational hk_success_exact(int n) {
    if (n < 1 || n > 31) throw std::invalid_argument("hk_success: n outside exact range");
    long long num = 1;
    for (int i = 0; i < n; ++i) num *= 3;
    return Rational(num, pow2ll(2 * n));
}

double bc_success(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("bc_success: bad arguments");
    return std::ldexp(1.0, -std::min(m, n));
}

Rational bc_success_exact(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("bc_success: bad arguments");
    return Rational(1, pow2ll(std::min(m, n)));
}

double early_decision_risk(int j) {
    if (j < 0) throw std::invalid_argument("early_decision_risk: j must be >= 0");
    return std::ldexp(j / 2.0 + 1.0, -j);
}

std::vector<ComparisonRow> comparison_table(const ProtocolParams& params) {
    const int n = params.n;
    const int m = params.m;
    const double budget = static_cast<double>(params.budget_n);
    const auto union_bound = [budget](double relay, double no_relay) {
        return std::min(1.0, budget * std::max(relay, no_relay));
    };

    std::vector<ComparisonRow> rows;
    {
        ComparisonRow r{"tree", preask_success(n), no_prover_success(m, n), 0.0,
                        static_cast<double>(DecisionTree::node_count(n))};
        r.n_exec_union_bound = union_bound(r.fa_relay, r.fa_no_relay);
        rows.push_back(r);
    }
    {
        // Without a relay the register attacker cannot reuse a harvested
        // register against a fresh nonce pair, so guessing is optimal.
        ComparisonRow r{"hk", hk_success(n), no_prover_success(0, n), 0.0, 2.0 * n};
        r.n_exec_union_bound = union_bound(r.fa_relay, r.fa_no_relay);
        rows.push_back(r);
    }
    {
        // The signature binds no verifier nonce, so pre-asked transcripts
        // replay without a relay; both columns are 2^-min(m, n).
        ComparisonRow r{"bc", bc_success(m, n), bc_success(m, n), 0.0, 0.0};
        r.n_exec_union_bound = union_bound(r.fa_relay, r.fa_no_relay);
        rows.push_back(r);
    }
    {
        ComparisonRow r{"optimal-bound", no_prover_success(0, n), no_prover_success(m, n), 0.0,
                        0.0};
        r.n_exec_union_bound = union_bound(r.fa_relay, r.fa_no_relay);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace dbsim::analysis
