#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "dbsim/channel.hpp"
#include "dbsim/core.hpp"
#include "dbsim/tree.hpp"

namespace dbsim {

enum class RejectReason { Ok, BadAuth, BadReply, Timeout, Incomplete };

struct Verdict {
    bool accepted = false;
    RejectReason reason = RejectReason::Incomplete;
    int round = 0;  // first failing round for BadReply/Timeout, 1-based
};

const char* to_string(RejectReason reason);

// Prover side. Builds the tree on receipt of the verifier nonce and then
// answers fast-phase challenges in order along the realized path. The
// prover does not measure time.
class ProverSession {
public:
    enum class State { AwaitA, Ready, FastPhase, Done };

    ProverSession(ProtocolParams params, Key key, TreeMode mode);

    struct InitReply {
        Nonce nonce_b;
        BitString auth_bits;
    };

    InitReply respond_init(const Nonce& nonce_a, Rng& rng);

    int reply(int challenge);

    State state() const { return state_; }
    int rounds_answered() const { return round_; }
    const DecisionTree& tree() const;

private:
    ProtocolParams params_;
    Key key_;
    TreeMode mode_;
    State state_ = State::AwaitA;
    std::optional<DecisionTree> tree_;
    std::uint64_t path_value_ = 0;
    int round_ = 0;
};

// Verifier side. Emits the session nonce, checks the authentication string,
// drives the timed rounds, and renders the final verdict against its own
// copy of the tree.
class VerifierSession {
public:
    enum class State { Fresh, SentA, AuthReceived, RoundsDone, Decided };

    VerifierSession(ProtocolParams params, Key key, TreeMode mode, double timing_threshold);

    Nonce start(Rng& rng);

    // In Prf mode the verifier derives the tree from (k, a, b). IdealUniform
    // has no key-derived tree, so the caller supplies the session tree
    // shared with the prover, or leaves it null to draw a fresh one (no
    // honest prover in the execution).
    void receive_init(const Nonce& nonce_b, const BitString& auth_bits, Rng& rng,
                      const DecisionTree* shared_tree = nullptr);

    int next_challenge(Rng& rng);
    void record_reply(std::optional<int> reply, double round_trip_time);

    // Requires all n rounds recorded; otherwise the verdict is Incomplete.
    Verdict final_decision();

    // Decision over the first rounds_done rounds only, together with the
    // residual false-acceptance risk 2^-j (j/2 + 1) left by the shortened
    // proximity check. Does not finalize the transcript.
    std::pair<Verdict, double> early_decision(int rounds_done) const;

    State state() const { return state_; }
    int rounds_recorded() const { return static_cast<int>(transcript_.rounds.size()); }
    bool auth_matched() const;
    double timing_threshold() const { return threshold_; }
    const DecisionTree& tree() const;
    const Transcript& transcript() const { return transcript_; }
    const ProtocolParams& params() const { return params_; }

private:
    Verdict decide(int rounds_considered) const;

    ProtocolParams params_;
    Key key_;
    TreeMode mode_;
    double threshold_ = 0.0;
    State state_ = State::Fresh;
    bool open_round_ = false;
    std::optional<DecisionTree> tree_;
    std::uint64_t path_value_ = 0;
    Transcript transcript_;
};

struct FastRoundResult {
    int challenge = 0;
    std::optional<int> reply;
    double round_trip_time = 0.0;
};

// One timed round: draw the challenge, obtain the claimant's reply, record
// it with the channel's round-trip time. A responder returning nullopt
// models channel failure and is recorded as a timed-out round.
FastRoundResult fast_round(VerifierSession& verifier,
                           const std::function<std::optional<int>(int)>& responder,
                           const ChannelConfig& channel, bool relayed, Rng& rng);

}  // namespace dbsim
