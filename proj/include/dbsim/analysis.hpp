#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "dbsim/core.hpp"

namespace dbsim::analysis {

using Rational = boost::rational<long long>;

// Best pre-ask attacker against the tree protocol: relay the slow phase,
// query the prover along one challenge path, replay those answers. Per
// trial, 2^-n (n/2 + 1).
double preask_success(int n);
Rational preask_success_exact(int n);  // (n + 2) / 2^(n+1), n <= 61

// Attacker acting alone guesses the m authentication bits and n replies.
double no_prover_success(int m, int n);
Rational no_prover_success_exact(int m, int n);  // m + n <= 62

// Probability that `count` uniform `bits`-bit values are not all distinct:
// the count(count-1)/2^(bits+1) upper bound and the exact product form
// 1 - prod_{i<count} (1 - i/2^bits). Safe for bits up to 64.
double birthday_bound(std::uint64_t count, int bits);
double birthday_exact(std::uint64_t count, int bits);

// Register-based baseline: pre-ask learns one register, per trial (3/4)^n.
double hk_success(int n);
Rational hk_success_exact(int n);  // n <= 31

// Signature baseline: best of challenge guessing and signature guessing,
// per trial 2^-min(m, n).
double bc_success(int m, int n);
Rational bc_success_exact(int m, int n);

// Residual proximity risk when the verifier decides after only j timed
// rounds; the j = 0 value is 1.
double early_decision_risk(int j);

struct ComparisonRow {
    std::string scheme;              // tree | hk | bc | optimal-bound
    double fa_relay = 0.0;           // per-trial false acceptance, relaying attacker
    double fa_no_relay = 0.0;        // per-trial false acceptance, no relay possible
    double n_exec_union_bound = 0.0; // min(1, N * worst per-trial)
    double state_bits = 0.0;         // per-execution fast-phase state
};

std::vector<ComparisonRow> comparison_table(const ProtocolParams& params);

}  // namespace dbsim::analysis
