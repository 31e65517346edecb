#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbsim/core.hpp"

namespace dbsim {

// Prf: node bits are a keyed pseudorandom expansion of (k, a, b); both
// parties derive the same tree locally. IdealUniform: every node bit is an
// independent fair coin from the caller's rng, modelling an expansion that
// leaks nothing between executions.
enum class TreeMode { Prf, IdealUniform };

// Full binary tree of depth n+1 with the root excluded. node_bits holds
// levels 1..n+1 breadth-first, left to right: level i occupies indices
// [2^i - 2, 2^(i+1) - 2). A node is addressed by its level and the integer
// value of the challenge prefix q_1..q_i (left edge 0, right edge 1), so
// lookup is node_bits[(2^i - 2) + value(q^i)]. Levels 1..n carry the
// fast-phase replies; the 2^(n+1) bits of level n+1 are the leaves.
class DecisionTree {
public:
    DecisionTree() = default;
    DecisionTree(BitString node_bits, int n);

    static std::uint64_t node_count(int n) { return (std::uint64_t(1) << (n + 2)) - 2; }

    int rounds() const { return n_; }
    int depth() const { return n_ + 1; }

    int node(int level, std::uint64_t path_value) const;

    // Reply to the final challenge of the sequence, i.e. the node reached
    // by following all edges in `challenges` from the root.
    int reply(std::span<const int> challenges) const;

    // The m leftmost leaves, left to right.
    BitString auth_string(int m) const;

    // Bit-packed node bits, zero-padded to the byte boundary.
    std::vector<std::uint8_t> serialize() const { return node_bits_.bytes(); }
    static DecisionTree deserialize(const std::vector<std::uint8_t>& bytes, int n);

    const BitString& node_bits() const { return node_bits_; }

    friend bool operator==(const DecisionTree& a, const DecisionTree& b) {
        return a.n_ == b.n_ && a.node_bits_ == b.node_bits_;
    }

private:
    BitString node_bits_;
    int n_ = 0;
};

DecisionTree build_tree(const ProtocolParams& params, const Key& key, const Nonce& nonce_a,
                        const Nonce& nonce_b, TreeMode mode, Rng& rng);

}  // namespace dbsim
