#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dbsim/bitstring.hpp"
#include "dbsim/rng.hpp"

namespace dbsim {

// Parameter set shared by both parties. The key length is tied to the
// number of fast-phase rounds: l_k = 2^(n+2) - 2, the node count of a full
// binary tree of depth n+1 (root excluded). The verifier nonce carries
// l_a = m + n bits, the prover nonce at least n.
struct ProtocolParams {
    int n = 0;                  // timed challenge-response rounds
    int m = 0;                  // authentication bits (leftmost leaves)
    int l_a = 0;                // verifier nonce length, = m + n
    int l_b = 0;                // prover nonce length, >= n
    std::uint64_t l_k = 0;      // key length, = 2^(n+2) - 2
    std::uint64_t budget_n = 1; // adversary's execution budget N

    // Set when m + n > l_k / 4; a single execution then exposes a
    // non-negligible fraction of the key material. Advisory only.
    bool key_leakage_warning = false;

    std::uint64_t leaf_count() const { return std::uint64_t(1) << (n + 1); }
};

// Total: every integer tuple either yields a valid ProtocolParams or
// throws std::invalid_argument with a specific reason.
ProtocolParams validate_params(int n, int m, int l_a, int l_b, std::uint64_t budget_n);

// Conventional defaults: m = n, l_a = m + n, l_b = n.
ProtocolParams make_params(int n, std::uint64_t budget_n = 1);
ProtocolParams make_params(int n, int m, std::uint64_t budget_n = 1);

struct Key {
    BitString bits;
};

Key random_key(const ProtocolParams& params, Rng& rng);

enum class NonceRole { VerifierA, ProverB };

struct Nonce {
    BitString bits;
    NonceRole role = NonceRole::VerifierA;
};

Nonce random_nonce_a(const ProtocolParams& params, Rng& rng);
Nonce random_nonce_b(const ProtocolParams& params, Rng& rng);

// Throws std::invalid_argument when the nonce length does not match the
// parameter set for its role.
void check_nonce(const ProtocolParams& params, const Nonce& nonce);

enum class TranscriptVerdict { Accept, Reject, Incomplete };

struct TimedRound {
    int challenge = 0;
    std::optional<int> reply;  // empty on channel failure
    double round_trip_time = 0.0;
};

// Full message record of one execution, verifier's view.
struct Transcript {
    BitString nonce_a;
    BitString nonce_b;
    BitString auth_bits;
    std::vector<TimedRound> rounds;
    TranscriptVerdict verdict = TranscriptVerdict::Incomplete;
    int rounds_completed = 0;
};

// Aggregate of a Monte Carlo batch. std_error is the empirical binomial
// standard error; z_score measures estimate - predicted in units of the
// standard error under the predicted rate (0 when both are degenerate and
// equal, infinite when degenerate and different).
struct TrialReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double predicted = 0.0;
    double z_score = 0.0;
};

TrialReport make_trial_report(std::uint64_t successes, std::uint64_t trials, double predicted);

}  // namespace dbsim
