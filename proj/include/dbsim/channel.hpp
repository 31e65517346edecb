#pragma once

#include <stdexcept>

#include "dbsim/rng.hpp"

namespace dbsim {

// Idealized 1-D timing model. The claimant sits at distance_vp from the
// verifier; a relayed reply additionally crosses extra_distance to the real
// prover and back. Natural units by default (speed 1, so a round trip over
// distance 1 costs time 2).
struct ChannelConfig {
    double distance_vp = 1.0;
    double extra_distance = 0.0;
    double propagation_speed = 1.0;
    double processing_delay = 0.0;
    double epsilon = 0.0;       // threshold slack above the honest round trip
    double jitter_bound = 0.0;  // uniform [0, bound) added per reply; exploration only
};

inline void check_channel(const ChannelConfig& c) {
    if (c.distance_vp < 0 || c.extra_distance < 0 || c.processing_delay < 0 || c.epsilon < 0 ||
        c.jitter_bound < 0)
        throw std::invalid_argument("channel: negative configuration value");
    if (c.propagation_speed <= 0) throw std::invalid_argument("channel: speed must be positive");
}

inline double round_trip_time(const ChannelConfig& c, bool relayed) {
    double t = 2.0 * c.distance_vp / c.propagation_speed + c.processing_delay;
    if (relayed) t += 2.0 * c.extra_distance / c.propagation_speed;
    return t;
}

inline double decision_threshold(const ChannelConfig& c) {
    return 2.0 * c.distance_vp / c.propagation_speed + c.processing_delay + c.epsilon;
}

inline double sample_round_trip_time(const ChannelConfig& c, bool relayed, Rng& rng) {
    double t = round_trip_time(c, relayed);
    if (c.jitter_bound > 0) t += c.jitter_bound * rng.uniform01();
    return t;
}

}  // namespace dbsim
