#pragma once

#include <cstdint>
#include <optional>

#include "dbsim/adversary.hpp"
#include "dbsim/analysis.hpp"
#include "dbsim/channel.hpp"
#include "dbsim/core.hpp"
#include "dbsim/tree.hpp"

namespace dbsim {

enum class ProtocolKind { Tree, Hk, Bc };

const char* to_string(ProtocolKind kind);

// One fully specified experiment. Identical specs (seed included) produce
// bit-identical reports; trial t always draws from stream (seed, t), so any
// partitioning across workers leaves the outcome multiset unchanged.
struct ExperimentSpec {
    ProtocolParams params;
    ProtocolKind protocol = ProtocolKind::Tree;
    AdversaryKind adversary = AdversaryKind::None;
    std::uint64_t trials = 1;
    std::uint64_t batch_n = 1;  // executions per batch; must equal params.budget_n
    std::uint64_t seed = 0;
    ChannelConfig channel;
    TreeMode tree_mode = TreeMode::IdealUniform;
    ProbeSpec probe;
    int prover_session_budget = 1;
    int threads = 1;
    bool force_replay_nonce_match = false;  // test hook: harvest under the verifier's nonce
};

// Throws std::invalid_argument on inconsistent specs, including
// protocol/adversary pairings that have no defined attack.
void check_experiment(const ExperimentSpec& spec);

struct TrialOutcome {
    bool accepted = false;
    bool auth_passed = false;
    BitString nonce_a;  // verifier nonce; empty where the protocol has none
};

TrialOutcome run_one_trial(const ExperimentSpec& spec, Rng& rng);

// Closed-form per-trial prediction for the spec's protocol/adversary pair.
double predicted_success(const ExperimentSpec& spec);

// Independent executions with fresh nonces (and, in IdealUniform mode, a
// fresh tree) per trial. The replay adversary is scored on its
// authentication step; every other strategy on the full verdict.
TrialReport run_trials(const ExperimentSpec& spec);

struct CollisionStats {
    std::uint64_t batches = 0;
    std::uint64_t collided = 0;
    double frequency = 0.0;
    double exact = 0.0;  // 1 - prod_{i<N} (1 - i/2^l_a)
    double bound = 0.0;  // N(N-1) / 2^(l_a+1)
    double z_score = 0.0;
};

struct BatchReport {
    TrialReport accept;  // batch-level: success = accepted at least once in N executions
    std::optional<CollisionStats> collisions;
};

// Disjoint batches of batch_n executions; trials must be a multiple of
// batch_n. Also measures within-batch verifier-nonce collisions against the
// exact birthday product and its quadratic bound.
BatchReport run_batches(const ExperimentSpec& spec);

// Exact success probability by full enumeration of the equiprobable
// (tree-or-register, challenge-sequence) space. Supported: tree/preask for
// n <= 2, hk/hk-preask for n <= 8, bc/bc-guess for n, m <= 20; anything
// larger or different is refused with std::invalid_argument.
analysis::Rational exact_enumeration(ProtocolKind protocol, AdversaryKind adversary, int n,
                                     int m = 0);

struct Confidence {
    double estimate = 0.0;
    double std_error = 0.0;
    double lower = 0.0;  // 95% interval
    double upper = 0.0;
};

// Binomial point estimate with a normal-approximation interval, switching
// to exact Clopper-Pearson tail inversion when either count is below 10.
Confidence confidence(std::uint64_t successes, std::uint64_t trials);

}  // namespace dbsim
