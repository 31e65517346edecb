#include "dbsim/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dbsim {

ProtocolParams validate_params(int n, int m, int l_a, int l_b, std::uint64_t budget_n) {
    if (n < 1) throw std::invalid_argument("params: n must be a positive integer");
    if (n > 60) throw std::invalid_argument("params: n too large, key length 2^(n+2)-2 overflows");
    if (m < 1) throw std::invalid_argument("params: m must be a positive integer");
    if (l_a < 1) throw std::invalid_argument("params: l_a must be a positive integer");
    if (l_b < 1) throw std::invalid_argument("params: l_b must be a positive integer");
    if (budget_n < 1) throw std::invalid_argument("params: N must be at least 1");

    const std::uint64_t leaves = std::uint64_t(1) << (n + 1);
    if (static_cast<std::uint64_t>(m) > leaves)
        throw std::invalid_argument("params: m = " + std::to_string(m) + " exceeds the " +
                                    std::to_string(leaves) + " leaves at depth n+1");
    if (l_a != m + n)
        throw std::invalid_argument("params: l_a must equal m + n = " + std::to_string(m + n));
    if (l_b < n) throw std::invalid_argument("params: l_b must be at least n");

    ProtocolParams p;
    p.n = n;
    p.m = m;
    p.l_a = l_a;
    p.l_b = l_b;
    p.l_k = (std::uint64_t(1) << (n + 2)) - 2;
    p.budget_n = budget_n;
    p.key_leakage_warning = 4 * static_cast<std::uint64_t>(m + n) > p.l_k;
    return p;
}

ProtocolParams make_params(int n, std::uint64_t budget_n) { return make_params(n, n, budget_n); }

ProtocolParams make_params(int n, int m, std::uint64_t budget_n) {
    return validate_params(n, m, m + n, n, budget_n);
}

Key random_key(const ProtocolParams& params, Rng& rng) {
    return Key{BitString::random(params.l_k, rng)};
}

Nonce random_nonce_a(const ProtocolParams& params, Rng& rng) {
    return Nonce{BitString::random(params.l_a, rng), NonceRole::VerifierA};
}

Nonce random_nonce_b(const ProtocolParams& params, Rng& rng) {
    return Nonce{BitString::random(params.l_b, rng), NonceRole::ProverB};
}

void check_nonce(const ProtocolParams& params, const Nonce& nonce) {
    const std::size_t want =
        nonce.role == NonceRole::VerifierA ? static_cast<std::size_t>(params.l_a)
                                           : static_cast<std::size_t>(params.l_b);
    if (nonce.bits.size() != want)
        throw std::invalid_argument("nonce: expected " + std::to_string(want) + " bits, got " +
                                    std::to_string(nonce.bits.size()));
}

TrialReport make_trial_report(std::uint64_t successes, std::uint64_t trials, double predicted) {
    if (trials == 0) throw std::invalid_argument("trial report: trials must be >= 1");
    if (successes > trials) throw std::invalid_argument("trial report: successes exceed trials");

    TrialReport r;
    r.trials = trials;
    r.successes = successes;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
    r.predicted = predicted;

    const double se_null = std::sqrt(predicted * (1.0 - predicted) / static_cast<double>(trials));
    if (se_null > 0.0)
        r.z_score = (r.estimate - predicted) / se_null;
    else if (r.estimate == predicted)
        r.z_score = 0.0;
    else
        r.z_score = r.estimate > predicted ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace dbsim
