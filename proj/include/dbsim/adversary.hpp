#pragma once

#include <memory>
#include <string_view>
#include <utility>

#include "dbsim/core.hpp"

namespace dbsim {

enum class AdversaryKind { None, RandomGuess, Preask, Relay, Replay, HkPreask, BcGuess };

const char* to_string(AdversaryKind kind);

// Probe sequence the attacker feeds the prover ahead of the timed phase.
struct ProbeSpec {
    enum class Choice { Zeros, Ones, Random, Explicit };
    Choice choice = Choice::Zeros;
    BitString explicit_bits;

    BitString make(int n, Rng& rng) const;
};

// What the attacker can see. Active strategies observe their own sessions;
// eavesdropped honest traffic uses the same stream.
struct ObservedEvent {
    enum class Kind { VerifierNonce, ProverNonce, AuthString, ProbeReply };
    Kind kind;
    int round = 0;  // 1-based, ProbeReply only
    BitString bits;
    int bit = -1;   // ProbeReply only
};

// Behavioral interface consumed by the trial drivers. A strategy never
// holds a key or a tree; everything it knows arrives through observe().
// Replies produced during the fast phase may depend on anything observed
// before the fast phase started, and on nothing later: the driver closes
// the prover session before the first timed challenge.
class AdversaryStrategy {
public:
    virtual ~AdversaryStrategy() = default;

    virtual std::string_view name() const = 0;

    // Slow-phase shape: whether a prover session is wanted at all, whether
    // the verifier's nonce is relayed into it (as opposed to a nonce of the
    // adversary's own choosing), and whether the fast phase is transparently
    // forwarded to the prover rather than answered locally.
    virtual bool wants_prover_session() const { return false; }
    virtual bool relays_nonce_a() const { return true; }
    virtual bool forwards_fast_phase() const { return false; }

    // Replay only: the replayed authentication string is accepted exactly
    // when the verifier's nonce matches the one used with the prover, since
    // distinct nonces index distinct trees.
    virtual bool auth_by_nonce_match() const { return false; }

    // Nonce presented to the prover when relays_nonce_a() is false.
    virtual Nonce own_nonce_a(const ProtocolParams& params, Rng& rng);

    // Challenge sequence for the untimed prover probe.
    virtual BitString prover_queries(const ProtocolParams& params, Rng& rng);

    virtual void observe(const ObservedEvent& event);

    // The (nonce_b, authentication string) pair presented to the verifier.
    virtual std::pair<Nonce, BitString> produce_init(const ProtocolParams& params, Rng& rng) = 0;

    // Fast-phase reply to challenge q_i; called once per round, in order.
    virtual int produce_reply(int challenge, Rng& rng) = 0;
};

std::unique_ptr<AdversaryStrategy> random_guess_strategy();
std::unique_ptr<AdversaryStrategy> preask_strategy(ProbeSpec probe = {});
// The relayed prover's extra distance is channel configuration, not
// strategy state; the driver applies it to every forwarded round.
std::unique_ptr<AdversaryStrategy> relay_strategy();
std::unique_ptr<AdversaryStrategy> replay_strategy(ProbeSpec probe = {});

}  // namespace dbsim
