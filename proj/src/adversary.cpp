#include "dbsim/adversary.hpp"

#include <stdexcept>
#include <vector>

namespace dbsim {

const char* to_string(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::None: return "none";
        case AdversaryKind::RandomGuess: return "random";
        case AdversaryKind::Preask: return "preask";
        case AdversaryKind::Relay: return "relay";
        case AdversaryKind::Replay: return "replay";
        case AdversaryKind::HkPreask: return "hk-preask";
        case AdversaryKind::BcGuess: return "bc-guess";
    }
    return "unknown";
}

BitString ProbeSpec::make(int n, Rng& rng) const {
    switch (choice) {
        case Choice::Zeros: return BitString(static_cast<std::size_t>(n));
        case Choice::Ones: {
            BitString s(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) s.set(i, 1);
            return s;
        }
        case Choice::Random: return BitString::random(static_cast<std::size_t>(n), rng);
        case Choice::Explicit:
            if (explicit_bits.size() != static_cast<std::size_t>(n))
                throw std::invalid_argument("probe: explicit sequence length differs from n");
            return explicit_bits;
    }
    throw std::logic_error("probe: unknown choice");
}

Nonce AdversaryStrategy::own_nonce_a(const ProtocolParams&, Rng&) {
    throw std::logic_error("adversary: strategy relays the verifier nonce");
}

BitString AdversaryStrategy::prover_queries(const ProtocolParams&, Rng&) {
    throw std::logic_error("adversary: strategy does not probe the prover");
}

void AdversaryStrategy::observe(const ObservedEvent&) {}

namespace {

class RandomGuessStrategy final : public AdversaryStrategy {
public:
    std::string_view name() const override { return "random"; }

    std::pair<Nonce, BitString> produce_init(const ProtocolParams& params, Rng& rng) override {
        return {random_nonce_b(params, rng), BitString::random(params.m, rng)};
    }

    int produce_reply(int, Rng& rng) override { return rng.coin(); }
};

// Harvests one prover session (nonce b, authentication string, replies
// along a probe path) and replays it against the verifier.
class HarvestingStrategy : public AdversaryStrategy {
public:
    explicit HarvestingStrategy(ProbeSpec probe) : probe_(std::move(probe)) {}

    bool wants_prover_session() const override { return true; }

    BitString prover_queries(const ProtocolParams& params, Rng& rng) override {
        return probe_.make(params.n, rng);
    }

    void observe(const ObservedEvent& event) override {
        switch (event.kind) {
            case ObservedEvent::Kind::ProverNonce: harvested_b_ = event.bits; break;
            case ObservedEvent::Kind::AuthString: harvested_auth_ = event.bits; break;
            case ObservedEvent::Kind::ProbeReply:
                if (static_cast<std::size_t>(event.round) > probe_replies_.size())
                    probe_replies_.resize(static_cast<std::size_t>(event.round), 0);
                probe_replies_[static_cast<std::size_t>(event.round) - 1] = event.bit;
                break;
            case ObservedEvent::Kind::VerifierNonce: break;
        }
    }

    std::pair<Nonce, BitString> produce_init(const ProtocolParams&, Rng&) override {
        if (harvested_b_.empty() && harvested_auth_.empty())
            throw std::logic_error("adversary: nothing harvested yet");
        return {Nonce{harvested_b_, NonceRole::ProverB}, harvested_auth_};
    }

    // The recorded answer for this round of the probe path, whatever the
    // actual challenge turns out to be.
    int produce_reply(int, Rng&) override {
        if (next_round_ >= probe_replies_.size())
            throw std::logic_error("adversary: no recorded reply left");
        return probe_replies_[next_round_++];
    }

private:
    ProbeSpec probe_;
    BitString harvested_b_;
    BitString harvested_auth_;
    std::vector<int> probe_replies_;
    std::size_t next_round_ = 0;
};

class PreaskStrategy final : public HarvestingStrategy {
public:
    using HarvestingStrategy::HarvestingStrategy;
    std::string_view name() const override { return "preask"; }
};

class RelayStrategy final : public AdversaryStrategy {
public:
    std::string_view name() const override { return "relay"; }
    bool wants_prover_session() const override { return true; }
    bool forwards_fast_phase() const override { return true; }

    void observe(const ObservedEvent& event) override {
        if (event.kind == ObservedEvent::Kind::ProverNonce) forwarded_b_ = event.bits;
        if (event.kind == ObservedEvent::Kind::AuthString) forwarded_auth_ = event.bits;
    }

    std::pair<Nonce, BitString> produce_init(const ProtocolParams&, Rng&) override {
        return {Nonce{forwarded_b_, NonceRole::ProverB}, forwarded_auth_};
    }

    int produce_reply(int, Rng&) override {
        throw std::logic_error("adversary: relay forwards the fast phase");
    }

private:
    BitString forwarded_b_;
    BitString forwarded_auth_;
};

class ReplayStrategy final : public HarvestingStrategy {
public:
    using HarvestingStrategy::HarvestingStrategy;
    std::string_view name() const override { return "replay"; }
    bool relays_nonce_a() const override { return false; }
    bool auth_by_nonce_match() const override { return true; }

    Nonce own_nonce_a(const ProtocolParams& params, Rng& rng) override {
        return random_nonce_a(params, rng);
    }
};

}  // namespace

std::unique_ptr<AdversaryStrategy> random_guess_strategy() {
    return std::make_unique<RandomGuessStrategy>();
}

std::unique_ptr<AdversaryStrategy> preask_strategy(ProbeSpec probe) {
    return std::make_unique<PreaskStrategy>(std::move(probe));
}

std::unique_ptr<AdversaryStrategy> relay_strategy() { return std::make_unique<RelayStrategy>(); }

std::unique_ptr<AdversaryStrategy> replay_strategy(ProbeSpec probe) {
    return std::make_unique<ReplayStrategy>(std::move(probe));
}

}  // namespace dbsim
