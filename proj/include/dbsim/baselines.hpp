#pragma once

#include <cstdint>

#include "dbsim/adversary.hpp"
#include "dbsim/channel.hpp"
#include "dbsim/core.hpp"
#include "dbsim/protocol.hpp"
#include "dbsim/tree.hpp"

namespace dbsim {

// Register pair for the Hancke-Kuhn baseline: the round-i reply is x_i for
// challenge 0 and y_i for challenge 1, independent of earlier challenges.
struct HkRegisters {
    BitString x;
    BitString y;
};

// Prf mode derives both registers from (k, a, b) with the same expansion
// primitive as the tree; IdealUniform draws them fresh from rng.
HkRegisters hk_registers(const ProtocolParams& params, const Key& key, const Nonce& nonce_a,
                         const Nonce& nonce_b, TreeMode mode, Rng& rng);

int hk_reply(const HkRegisters& regs, int round /*1-based*/, int challenge);

enum class HkAttack { None, Preask, RandomGuess, Relay };

struct BaselineOutcome {
    Verdict verdict;
    bool auth_passed = true;
    BitString nonce_a;  // empty for bc, which exchanges no nonces
};

BaselineOutcome hk_run(const ProtocolParams& params, const Key& key, TreeMode mode,
                       const ChannelConfig& channel, HkAttack attack, Rng& rng);

// Brands-Chaum abstraction: n timed rounds of key-independent reply bits,
// then an m-bit keyed signature of the ordered transcript. Only the
// signature depends on the key.
struct BcParams {
    int n = 0;
    int m = 0;
};

BcParams bc_params(const ProtocolParams& params);

// Signature over the ordered (challenge, reply) bits.
BitString bc_signature(const Key& key, const BitString& challenges, const BitString& replies,
                       int m);

enum class BcAttack {
    None,
    ChallengeGuess,  // pre-ask the prover, replay transcript and signature
    SigGuess,        // play the fast phase, guess the signature
    Optimal,         // the better of the two for (m, n)
    Relay,
};

BaselineOutcome bc_run(const BcParams& params, const Key& key, TreeMode mode,
                       const ChannelConfig& channel, BcAttack attack, const ProbeSpec& probe,
                       Rng& rng);

}  // namespace dbsim
