#include "dbsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

#include "dbsim/baselines.hpp"
#include "dbsim/protocol.hpp"

namespace dbsim {

const char* to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Tree: return "tree";
        case ProtocolKind::Hk: return "hk";
        case ProtocolKind::Bc: return "bc";
    }
    return "unknown";
}

namespace {

bool combo_supported(ProtocolKind protocol, AdversaryKind adversary) {
    switch (protocol) {
        case ProtocolKind::Tree:
            return adversary == AdversaryKind::None || adversary == AdversaryKind::RandomGuess ||
                   adversary == AdversaryKind::Preask || adversary == AdversaryKind::Relay ||
                   adversary == AdversaryKind::Replay;
        case ProtocolKind::Hk:
            return adversary == AdversaryKind::None || adversary == AdversaryKind::RandomGuess ||
                   adversary == AdversaryKind::HkPreask || adversary == AdversaryKind::Relay;
        case ProtocolKind::Bc:
            return adversary == AdversaryKind::None || adversary == AdversaryKind::BcGuess ||
                   adversary == AdversaryKind::Relay;
    }
    return false;
}

bool relay_beats_threshold(const ChannelConfig& channel) {
    return round_trip_time(channel, true) <= decision_threshold(channel);
}

ObservedEvent nonce_event(ObservedEvent::Kind kind, const BitString& bits) {
    return ObservedEvent{kind, 0, bits, -1};
}

TrialOutcome run_tree_trial(const ExperimentSpec& spec, Rng& rng) {
    const ProtocolParams& params = spec.params;
    const TreeMode mode = spec.tree_mode;
    const bool ideal = mode == TreeMode::IdealUniform;
    const double threshold = decision_threshold(spec.channel);
    const Key key = random_key(params, rng);

    switch (spec.adversary) {
        case AdversaryKind::None: {
            VerifierSession verifier(params, key, mode, threshold);
            ProverSession prover(params, key, mode);
            const Nonce a = verifier.start(rng);
            const auto init = prover.respond_init(a, rng);
            verifier.receive_init(init.nonce_b, init.auth_bits, rng,
                                  ideal ? &prover.tree() : nullptr);
            for (int i = 0; i < params.n; ++i)
                fast_round(
                    verifier, [&](int q) { return std::optional<int>(prover.reply(q)); },
                    spec.channel, false, rng);
            const Verdict verdict = verifier.final_decision();
            return TrialOutcome{verdict.accepted, verifier.auth_matched(),
                                verifier.transcript().nonce_a};
        }

        case AdversaryKind::RandomGuess: {
            auto strategy = random_guess_strategy();
            VerifierSession verifier(params, key, mode, threshold);
            const Nonce a = verifier.start(rng);
            strategy->observe(nonce_event(ObservedEvent::Kind::VerifierNonce, a.bits));
            auto [nonce_b, auth] = strategy->produce_init(params, rng);
            verifier.receive_init(nonce_b, auth, rng, nullptr);
            for (int i = 0; i < params.n; ++i)
                fast_round(
                    verifier,
                    [&](int q) { return std::optional<int>(strategy->produce_reply(q, rng)); },
                    spec.channel, false, rng);
            const Verdict verdict = verifier.final_decision();
            return TrialOutcome{verdict.accepted, verifier.auth_matched(),
                                verifier.transcript().nonce_a};
        }

        case AdversaryKind::Preask: {
            auto strategy = preask_strategy(spec.probe);
            VerifierSession verifier(params, key, mode, threshold);
            const Nonce a = verifier.start(rng);
            strategy->observe(nonce_event(ObservedEvent::Kind::VerifierNonce, a.bits));

            // Slow-phase man-in-the-middle: relay a, harvest (b, auth), probe
            // one untimed path. Extra budget sessions see a fresh b and hence
            // a fresh tree; the strategy keeps the last harvest.
            std::optional<ProverSession> prover;
            for (int s = 0; s < spec.prover_session_budget; ++s) {
                prover.emplace(params, key, mode);
                const auto init = prover->respond_init(a, rng);
                strategy->observe(nonce_event(ObservedEvent::Kind::ProverNonce, init.nonce_b.bits));
                strategy->observe(nonce_event(ObservedEvent::Kind::AuthString, init.auth_bits));
                const BitString probe = strategy->prover_queries(params, rng);
                for (int i = 0; i < params.n; ++i)
                    strategy->observe(ObservedEvent{ObservedEvent::Kind::ProbeReply, i + 1,
                                                    BitString(), prover->reply(probe.get(i))});
            }

            auto [nonce_b, auth] = strategy->produce_init(params, rng);
            verifier.receive_init(nonce_b, auth, rng, ideal ? &prover->tree() : nullptr);
            for (int i = 0; i < params.n; ++i)
                fast_round(
                    verifier,
                    [&](int q) { return std::optional<int>(strategy->produce_reply(q, rng)); },
                    spec.channel, false, rng);
            const Verdict verdict = verifier.final_decision();
            return TrialOutcome{verdict.accepted, verifier.auth_matched(),
                                verifier.transcript().nonce_a};
        }

        case AdversaryKind::Relay: {
            auto strategy = relay_strategy();
            VerifierSession verifier(params, key, mode, threshold);
            ProverSession prover(params, key, mode);
            const Nonce a = verifier.start(rng);
            // Slow phase forwarded verbatim; untimed, so never rejected.
            const auto init = prover.respond_init(a, rng);
            strategy->observe(nonce_event(ObservedEvent::Kind::ProverNonce, init.nonce_b.bits));
            strategy->observe(nonce_event(ObservedEvent::Kind::AuthString, init.auth_bits));
            auto [nonce_b, auth] = strategy->produce_init(params, rng);
            verifier.receive_init(nonce_b, auth, rng, ideal ? &prover.tree() : nullptr);
            // Fast phase forwarded too: content from the prover, time paid
            // over the extra distance.
            for (int i = 0; i < params.n; ++i)
                fast_round(
                    verifier, [&](int q) { return std::optional<int>(prover.reply(q)); },
                    spec.channel, true, rng);
            const Verdict verdict = verifier.final_decision();
            return TrialOutcome{verdict.accepted, verifier.auth_matched(),
                                verifier.transcript().nonce_a};
        }

        case AdversaryKind::Replay: {
            auto strategy = replay_strategy(spec.probe);
            VerifierSession verifier(params, key, mode, threshold);
            ProverSession prover(params, key, mode);

            Nonce verifier_a;
            Nonce harvest_a;
            if (spec.force_replay_nonce_match) {
                verifier_a = verifier.start(rng);
                harvest_a = verifier_a;
            } else {
                harvest_a = strategy->own_nonce_a(params, rng);
            }

            const auto init = prover.respond_init(harvest_a, rng);
            strategy->observe(nonce_event(ObservedEvent::Kind::ProverNonce, init.nonce_b.bits));
            strategy->observe(nonce_event(ObservedEvent::Kind::AuthString, init.auth_bits));
            const BitString probe = strategy->prover_queries(params, rng);
            for (int i = 0; i < params.n; ++i)
                strategy->observe(ObservedEvent{ObservedEvent::Kind::ProbeReply, i + 1,
                                                BitString(), prover.reply(probe.get(i))});

            if (!spec.force_replay_nonce_match) verifier_a = verifier.start(rng);

            // The tree is keyed on the nonce pair, so a fresh verifier nonce
            // indexes a different tree and the replayed authentication
            // string is rejected.
            if (verifier_a.bits != harvest_a.bits)
                return TrialOutcome{false, false, verifier_a.bits};

            auto [nonce_b, auth] = strategy->produce_init(params, rng);
            verifier.receive_init(nonce_b, auth, rng, ideal ? &prover.tree() : nullptr);
            for (int i = 0; i < params.n; ++i)
                fast_round(
                    verifier,
                    [&](int q) { return std::optional<int>(strategy->produce_reply(q, rng)); },
                    spec.channel, false, rng);
            const Verdict verdict = verifier.final_decision();
            return TrialOutcome{verdict.accepted, verifier.auth_matched(), verifier_a.bits};
        }

        default: throw std::invalid_argument("trial: unsupported tree adversary");
    }
}

HkAttack hk_attack_for(AdversaryKind adversary) {
    switch (adversary) {
        case AdversaryKind::None: return HkAttack::None;
        case AdversaryKind::HkPreask: return HkAttack::Preask;
        case AdversaryKind::RandomGuess: return HkAttack::RandomGuess;
        case AdversaryKind::Relay: return HkAttack::Relay;
        default: throw std::invalid_argument("trial: unsupported hk adversary");
    }
}

BcAttack bc_attack_for(AdversaryKind adversary) {
    switch (adversary) {
        case AdversaryKind::None: return BcAttack::None;
        case AdversaryKind::BcGuess: return BcAttack::Optimal;
        case AdversaryKind::Relay: return BcAttack::Relay;
        default: throw std::invalid_argument("trial: unsupported bc adversary");
    }
}

bool trial_success(const ExperimentSpec& spec, const TrialOutcome& outcome) {
    // The replay attack is scored on its authentication step; the proximity
    // game that follows a nonce match is the pre-ask game already measured.
    if (spec.protocol == ProtocolKind::Tree && spec.adversary == AdversaryKind::Replay)
        return outcome.auth_passed;
    return outcome.accepted;
}

std::uint64_t count_successes(const ExperimentSpec& spec, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
        Rng rng = trial_rng(spec.seed, t);
        count += trial_success(spec, run_one_trial(spec, rng)) ? 1 : 0;
    }
    return count;
}

template <class Worker>
std::uint64_t parallel_count(std::uint64_t jobs, int threads, Worker&& worker) {
    if (threads <= 1 || jobs < 2) return worker(0, jobs);

    const auto nworkers = static_cast<std::uint64_t>(threads);
    const std::uint64_t chunk = (jobs + nworkers - 1) / nworkers;
    std::vector<std::future<std::uint64_t>> parts;
    for (std::uint64_t lo = 0; lo < jobs; lo += chunk) {
        const std::uint64_t hi = std::min(jobs, lo + chunk);
        parts.push_back(std::async(std::launch::async, [=, &worker] { return worker(lo, hi); }));
    }
    std::uint64_t total = 0;
    for (auto& part : parts) total += part.get();  // rethrows any trial failure
    return total;
}

}  // namespace

void check_experiment(const ExperimentSpec& spec) {
    check_channel(spec.channel);
    if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (spec.batch_n != spec.params.budget_n)
        throw std::invalid_argument("experiment: batch size must equal the params budget N");
    if (spec.prover_session_budget < 1)
        throw std::invalid_argument("experiment: prover session budget must be >= 1");
    if (spec.threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
    if (!combo_supported(spec.protocol, spec.adversary))
        throw std::invalid_argument("experiment: no defined attack for this protocol/adversary");
}

TrialOutcome run_one_trial(const ExperimentSpec& spec, Rng& rng) {
    switch (spec.protocol) {
        case ProtocolKind::Tree: return run_tree_trial(spec, rng);
        case ProtocolKind::Hk: {
            const Key key = random_key(spec.params, rng);
            const BaselineOutcome out = hk_run(spec.params, key, spec.tree_mode, spec.channel,
                                               hk_attack_for(spec.adversary), rng);
            return TrialOutcome{out.verdict.accepted, out.auth_passed, out.nonce_a};
        }
        case ProtocolKind::Bc: {
            const Key key = random_key(spec.params, rng);
            const BaselineOutcome out = bc_run(bc_params(spec.params), key, spec.tree_mode,
                                               spec.channel, bc_attack_for(spec.adversary),
                                               spec.probe, rng);
            return TrialOutcome{out.verdict.accepted, out.auth_passed, out.nonce_a};
        }
    }
    throw std::invalid_argument("trial: unknown protocol");
}

double predicted_success(const ExperimentSpec& spec) {
    const ProtocolParams& params = spec.params;
    switch (spec.protocol) {
        case ProtocolKind::Tree:
            switch (spec.adversary) {
                case AdversaryKind::None: return 1.0;
                case AdversaryKind::RandomGuess:
                    return analysis::no_prover_success(params.m, params.n);
                case AdversaryKind::Preask: return analysis::preask_success(params.n);
                case AdversaryKind::Relay: return relay_beats_threshold(spec.channel) ? 1.0 : 0.0;
                case AdversaryKind::Replay:
                    return spec.force_replay_nonce_match ? 1.0 : std::ldexp(1.0, -params.l_a);
                default: break;
            }
            break;
        case ProtocolKind::Hk:
            switch (spec.adversary) {
                case AdversaryKind::None: return 1.0;
                case AdversaryKind::HkPreask: return analysis::hk_success(params.n);
                case AdversaryKind::RandomGuess: return analysis::no_prover_success(0, params.n);
                case AdversaryKind::Relay: return relay_beats_threshold(spec.channel) ? 1.0 : 0.0;
                default: break;
            }
            break;
        case ProtocolKind::Bc:
            switch (spec.adversary) {
                case AdversaryKind::None: return 1.0;
                case AdversaryKind::BcGuess: return analysis::bc_success(params.m, params.n);
                case AdversaryKind::Relay: return relay_beats_threshold(spec.channel) ? 1.0 : 0.0;
                default: break;
            }
            break;
    }
    throw std::invalid_argument("prediction: no defined attack for this protocol/adversary");
}

TrialReport run_trials(const ExperimentSpec& spec) {
    check_experiment(spec);
    const double predicted = predicted_success(spec);
    const std::uint64_t successes =
        parallel_count(spec.trials, spec.threads, [&spec](std::uint64_t lo, std::uint64_t hi) {
            return count_successes(spec, lo, hi);
        });
    return make_trial_report(successes, spec.trials, predicted);
}

BatchReport run_batches(const ExperimentSpec& spec) {
    check_experiment(spec);
    const std::uint64_t batch_n = spec.batch_n;
    if (spec.trials % batch_n != 0)
        throw std::invalid_argument("experiment: trials must be a multiple of the batch size");
    const std::uint64_t batches = spec.trials / batch_n;

    struct BatchCounts {
        std::uint64_t accepted = 0;
        std::uint64_t collided = 0;
        std::uint64_t with_nonces = 0;
    };

    const auto run_range = [&spec, batch_n](std::uint64_t lo, std::uint64_t hi) {
        BatchCounts counts;
        std::vector<BitString> nonces;
        for (std::uint64_t b = lo; b < hi; ++b) {
            bool any_accept = false;
            bool have_nonces = true;
            nonces.clear();
            for (std::uint64_t j = 0; j < batch_n; ++j) {
                Rng rng = trial_rng(spec.seed, b * batch_n + j);
                const TrialOutcome out = run_one_trial(spec, rng);
                any_accept = any_accept || trial_success(spec, out);
                if (out.nonce_a.empty())
                    have_nonces = false;
                else
                    nonces.push_back(out.nonce_a);
            }
            counts.accepted += any_accept ? 1 : 0;
            if (have_nonces) {
                counts.with_nonces += 1;
                bool collision = false;
                for (std::size_t i = 0; i < nonces.size() && !collision; ++i)
                    for (std::size_t j = i + 1; j < nonces.size() && !collision; ++j)
                        collision = nonces[i] == nonces[j];
                counts.collided += collision ? 1 : 0;
            }
        }
        return counts;
    };

    BatchCounts totals;
    if (spec.threads <= 1 || batches < 2) {
        totals = run_range(0, batches);
    } else {
        const auto nworkers = static_cast<std::uint64_t>(spec.threads);
        const std::uint64_t chunk = (batches + nworkers - 1) / nworkers;
        std::vector<std::future<BatchCounts>> parts;
        for (std::uint64_t lo = 0; lo < batches; lo += chunk) {
            const std::uint64_t hi = std::min(batches, lo + chunk);
            parts.push_back(
                std::async(std::launch::async, [=, &run_range] { return run_range(lo, hi); }));
        }
        for (auto& part : parts) {
            const BatchCounts c = part.get();
            totals.accepted += c.accepted;
            totals.collided += c.collided;
            totals.with_nonces += c.with_nonces;
        }
    }

    const double per_trial = predicted_success(spec);
    const double predicted_batch =
        1.0 - std::pow(1.0 - per_trial, static_cast<double>(batch_n));

    BatchReport report;
    report.accept = make_trial_report(totals.accepted, batches, predicted_batch);

    if (totals.with_nonces == batches && spec.params.l_a <= 64) {
        CollisionStats stats;
        stats.batches = batches;
        stats.collided = totals.collided;
        stats.frequency = static_cast<double>(totals.collided) / static_cast<double>(batches);
        stats.exact = analysis::birthday_exact(batch_n, spec.params.l_a);
        stats.bound = analysis::birthday_bound(batch_n, spec.params.l_a);
        const double se_null =
            std::sqrt(stats.exact * (1.0 - stats.exact) / static_cast<double>(batches));
        stats.z_score = se_null > 0.0 ? (stats.frequency - stats.exact) / se_null
                                      : (stats.frequency == stats.exact ? 0.0 : HUGE_VAL);
        report.collisions = stats;
    }
    return report;
}

analysis::Rational exact_enumeration(ProtocolKind protocol, AdversaryKind adversary, int n,
                                     int m) {
    using analysis::Rational;

    if (protocol == ProtocolKind::Tree && adversary == AdversaryKind::Preask) {
        if (n < 1 || n > 2)
            throw std::invalid_argument("enumeration: tree space is 2^(2^(n+2)-2), need n <= 2");
        const int node_bits = (1 << (n + 2)) - 2;
        const std::uint64_t trees = std::uint64_t(1) << node_bits;
        const int sequences = 1 << n;
        // Probe path fixed to all-zeros; success probability is the same
        // for every probe by the symmetry of the uniform tree space.
        std::uint64_t wins = 0;
        for (std::uint64_t tree = 0; tree < trees; ++tree) {
            for (int q = 0; q < sequences; ++q) {
                bool ok = true;
                std::uint64_t path = 0;
                for (int i = 1; i <= n && ok; ++i) {
                    path = (path << 1) | static_cast<std::uint64_t>((q >> (n - i)) & 1);
                    const std::uint64_t level_base = (std::uint64_t(1) << i) - 2;
                    const int along_challenge = static_cast<int>((tree >> (level_base + path)) & 1);
                    const int along_probe = static_cast<int>((tree >> level_base) & 1);
                    ok = along_challenge == along_probe;
                }
                wins += ok ? 1 : 0;
            }
        }
        return Rational(static_cast<long long>(wins),
                        static_cast<long long>(trees) * sequences);
    }

    if (protocol == ProtocolKind::Hk && adversary == AdversaryKind::HkPreask) {
        if (n < 1 || n > 8)
            throw std::invalid_argument("enumeration: hk space is 2^(3n), need n <= 8");
        const std::uint64_t span = std::uint64_t(1) << n;
        // The attacker knows x exactly and must guess y on challenge-1
        // rounds: 2^(#zero challenges) of the 2^n guess strings succeed.
        std::uint64_t wins = 0;
        for (std::uint64_t x = 0; x < span; ++x)
            for (std::uint64_t y = 0; y < span; ++y)
                for (std::uint64_t q = 0; q < span; ++q)
                    wins += std::uint64_t(1) << (n - __builtin_popcountll(q));
        const long long den = 1ll << (4 * n);
        return Rational(static_cast<long long>(wins), den);
    }

    if (protocol == ProtocolKind::Bc && adversary == AdversaryKind::BcGuess) {
        if (n < 1 || m < 1 || n > 20 || m > 20)
            throw std::invalid_argument("enumeration: bc needs 1 <= n, m <= 20");
        // Challenge guessing: verifier sequence vs. the pre-asked one.
        std::uint64_t challenge_wins = 0;
        for (std::uint64_t q = 0; q < (std::uint64_t(1) << n); ++q)
            challenge_wins += q == 0 ? 1 : 0;
        const Rational challenge(static_cast<long long>(challenge_wins), 1ll << n);
        // Signature guessing: independent uniform guess vs. the true tag.
        std::uint64_t sig_wins = 0;
        for (std::uint64_t guess = 0; guess < (std::uint64_t(1) << m); ++guess)
            for (std::uint64_t tag = 0; tag < (std::uint64_t(1) << m); ++tag)
                sig_wins += guess == tag ? 1 : 0;
        const Rational sig(static_cast<long long>(sig_wins), 1ll << (2 * m));
        return std::max(challenge, sig);
    }

    throw std::invalid_argument("enumeration: not supported for this protocol/adversary");
}

namespace {

// P(X <= k) for X ~ Binomial(trials, p), evaluated by direct summation of
// whichever tail is shorter.
double binomial_cdf(std::uint64_t k, std::uint64_t trials, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return k >= trials ? 1.0 : 0.0;
    if (k >= trials) return 1.0;

    const auto log_pmf = [trials, p](std::uint64_t j) {
        const double nd = static_cast<double>(trials);
        const double jd = static_cast<double>(j);
        return std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(nd - jd + 1.0) +
               jd * std::log(p) + (nd - jd) * std::log1p(-p);
    };

    if (k <= trials - k - 1) {
        double acc = 0.0;
        for (std::uint64_t j = 0; j <= k; ++j) acc += std::exp(log_pmf(j));
        return std::min(1.0, acc);
    }
    double acc = 0.0;
    for (std::uint64_t j = k + 1; j <= trials; ++j) acc += std::exp(log_pmf(j));
    return std::max(0.0, 1.0 - acc);
}

// Smallest p with P(X <= k | p) <= target (the CDF is decreasing in p).
double invert_cdf(std::uint64_t k, std::uint64_t trials, double target) {
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (binomial_cdf(k, trials, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace

Confidence confidence(std::uint64_t successes, std::uint64_t trials) {
    if (trials < 1) throw std::invalid_argument("confidence: trials must be >= 1");
    if (successes > trials) throw std::invalid_argument("confidence: successes exceed trials");

    Confidence c;
    c.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    c.std_error = std::sqrt(c.estimate * (1.0 - c.estimate) / static_cast<double>(trials));

    const bool sparse = successes < 10 || trials - successes < 10;
    if (!sparse) {
        c.lower = std::max(0.0, c.estimate - 1.959963984540054 * c.std_error);
        c.upper = std::min(1.0, c.estimate + 1.959963984540054 * c.std_error);
        return c;
    }

    const double alpha = 0.05;
    c.lower = successes == 0 ? 0.0 : invert_cdf(successes - 1, trials, 1.0 - alpha / 2);
    c.upper = successes == trials ? 1.0 : invert_cdf(successes, trials, alpha / 2);
    return c;
}

}  // namespace dbsim
