#include "dbsim/protocol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dbsim {

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::Ok: return "ok";
        case RejectReason::BadAuth: return "bad-auth";
        case RejectReason::BadReply: return "bad-reply";
        case RejectReason::Timeout: return "timeout";
        case RejectReason::Incomplete: return "incomplete";
    }
    return "unknown";
}

ProverSession::ProverSession(ProtocolParams params, Key key, TreeMode mode)
    : params_(params), key_(std::move(key)), mode_(mode) {}

ProverSession::InitReply ProverSession::respond_init(const Nonce& nonce_a, Rng& rng) {
    if (state_ != State::AwaitA) throw std::logic_error("prover: init already answered");
    check_nonce(params_, nonce_a);

    Nonce nonce_b = random_nonce_b(params_, rng);
    tree_ = build_tree(params_, key_, nonce_a, nonce_b, mode_, rng);
    state_ = State::Ready;
    return InitReply{std::move(nonce_b), tree_->auth_string(params_.m)};
}

int ProverSession::reply(int challenge) {
    if (state_ != State::Ready && state_ != State::FastPhase)
        throw std::logic_error("prover: fast phase not active");
    if (round_ >= params_.n) throw std::logic_error("prover: all rounds already answered");

    path_value_ = (path_value_ << 1) | static_cast<std::uint64_t>(challenge & 1);
    ++round_;
    state_ = round_ == params_.n ? State::Done : State::FastPhase;
    return tree_->node(round_, path_value_);
}

const DecisionTree& ProverSession::tree() const {
    if (!tree_) throw std::logic_error("prover: tree not built yet");
    return *tree_;
}

VerifierSession::VerifierSession(ProtocolParams params, Key key, TreeMode mode,
                                 double timing_threshold)
    : params_(params), key_(std::move(key)), mode_(mode), threshold_(timing_threshold) {
    if (timing_threshold < 0) throw std::invalid_argument("verifier: negative timing threshold");
}

Nonce VerifierSession::start(Rng& rng) {
    if (state_ != State::Fresh) throw std::logic_error("verifier: session already started");
    Nonce a = random_nonce_a(params_, rng);
    transcript_.nonce_a = a.bits;
    state_ = State::SentA;
    return a;
}

void VerifierSession::receive_init(const Nonce& nonce_b, const BitString& auth_bits, Rng& rng,
                                   const DecisionTree* shared_tree) {
    if (state_ != State::SentA) throw std::logic_error("verifier: not awaiting init");
    check_nonce(params_, nonce_b);
    if (auth_bits.size() != static_cast<std::size_t>(params_.m))
        throw std::invalid_argument("verifier: authentication string has wrong length");

    if (mode_ == TreeMode::Prf) {
        Nonce a{transcript_.nonce_a, NonceRole::VerifierA};
        tree_ = build_tree(params_, key_, a, nonce_b, mode_, rng);
    } else if (shared_tree != nullptr) {
        tree_ = *shared_tree;
    } else {
        tree_ = DecisionTree(BitString::random(params_.l_k, rng), params_.n);
    }

    transcript_.nonce_b = nonce_b.bits;
    transcript_.auth_bits = auth_bits;
    state_ = State::AuthReceived;
}

int VerifierSession::next_challenge(Rng& rng) {
    if (state_ != State::AuthReceived) throw std::logic_error("verifier: fast phase not active");
    if (open_round_) throw std::logic_error("verifier: previous round still open");
    if (rounds_recorded() >= params_.n) throw std::logic_error("verifier: all rounds done");

    const int q = rng.coin();
    path_value_ = (path_value_ << 1) | static_cast<std::uint64_t>(q);
    transcript_.rounds.push_back(TimedRound{q, std::nullopt, 0.0});
    open_round_ = true;
    return q;
}

void VerifierSession::record_reply(std::optional<int> reply, double round_trip_time) {
    if (!open_round_) throw std::logic_error("verifier: no open round");
    TimedRound& round = transcript_.rounds.back();
    open_round_ = false;
    round.reply = reply;
    round.round_trip_time =
        reply.has_value() ? round_trip_time : std::numeric_limits<double>::infinity();
    transcript_.rounds_completed = static_cast<int>(transcript_.rounds.size());
    if (transcript_.rounds_completed == params_.n) state_ = State::RoundsDone;
}

bool VerifierSession::auth_matched() const {
    if (!tree_) throw std::logic_error("verifier: init not received");
    return transcript_.auth_bits == tree_->auth_string(params_.m);
}

Verdict VerifierSession::decide(int rounds_considered) const {
    if (!auth_matched()) return Verdict{false, RejectReason::BadAuth, 0};

    std::uint64_t value = 0;
    for (int i = 0; i < rounds_considered; ++i) {
        const TimedRound& round = transcript_.rounds[static_cast<std::size_t>(i)];
        value = (value << 1) | static_cast<std::uint64_t>(round.challenge);
        if (!round.reply.has_value() || round.round_trip_time > threshold_)
            return Verdict{false, RejectReason::Timeout, i + 1};
        if (*round.reply != tree_->node(i + 1, value))
            return Verdict{false, RejectReason::BadReply, i + 1};
    }
    return Verdict{true, RejectReason::Ok, 0};
}

Verdict VerifierSession::final_decision() {
    if (state_ == State::Decided) return decide(params_.n);
    if (state_ != State::RoundsDone) return Verdict{false, RejectReason::Incomplete, 0};

    Verdict v = decide(params_.n);
    transcript_.verdict = v.accepted ? TranscriptVerdict::Accept : TranscriptVerdict::Reject;
    state_ = State::Decided;
    return v;
}

std::pair<Verdict, double> VerifierSession::early_decision(int rounds_done) const {
    if (state_ != State::AuthReceived && state_ != State::RoundsDone && state_ != State::Decided)
        throw std::logic_error("verifier: authentication not yet received");
    if (rounds_done < 0 || rounds_done > rounds_recorded())
        throw std::out_of_range("verifier: rounds_done exceeds recorded rounds");

    const double residual_risk = std::ldexp(rounds_done / 2.0 + 1.0, -rounds_done);
    return {decide(rounds_done), residual_risk};
}

const DecisionTree& VerifierSession::tree() const {
    if (!tree_) throw std::logic_error("verifier: tree not built yet");
    return *tree_;
}

FastRoundResult fast_round(VerifierSession& verifier,
                           const std::function<std::optional<int>(int)>& responder,
                           const ChannelConfig& channel, bool relayed, Rng& rng) {
    const int q = verifier.next_challenge(rng);
    const std::optional<int> reply = responder(q);
    const double rtt = reply.has_value() ? sample_round_trip_time(channel, relayed, rng)
                                         : std::numeric_limits<double>::infinity();
    verifier.record_reply(reply, rtt);
    return FastRoundResult{q, reply, rtt};
}

}  // namespace dbsim
