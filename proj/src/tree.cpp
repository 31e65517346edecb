#include "dbsim/tree.hpp"

#include <stdexcept>
#include <string>

#include "dbsim/prf.hpp"

namespace dbsim {

namespace {
constexpr int kMaxTreeRounds = 26;  // 2^28 node bits, 32 MiB; guards allocation
}

DecisionTree::DecisionTree(BitString node_bits, int n) : node_bits_(std::move(node_bits)), n_(n) {
    if (n < 1 || n > kMaxTreeRounds) throw std::invalid_argument("tree: n out of range");
    if (node_bits_.size() != node_count(n))
        throw std::invalid_argument("tree: expected " + std::to_string(node_count(n)) +
                                    " node bits, got " + std::to_string(node_bits_.size()));
}

int DecisionTree::node(int level, std::uint64_t path_value) const {
    if (level < 1 || level > n_ + 1) throw std::out_of_range("tree: level out of range");
    if (path_value >= (std::uint64_t(1) << level))
        throw std::out_of_range("tree: path value out of range for level");
    return node_bits_.get((std::uint64_t(1) << level) - 2 + path_value);
}

int DecisionTree::reply(std::span<const int> challenges) const {
    const int level = static_cast<int>(challenges.size());
    if (level < 1 || level > n_) throw std::out_of_range("tree: challenge count out of range");
    std::uint64_t value = 0;
    for (int q : challenges) value = (value << 1) | static_cast<std::uint64_t>(q & 1);
    return node(level, value);
}

BitString DecisionTree::auth_string(int m) const {
    const std::uint64_t leaves = std::uint64_t(1) << (n_ + 1);
    if (m < 0 || static_cast<std::uint64_t>(m) > leaves)
        throw std::out_of_range("tree: m exceeds leaf count");
    const std::uint64_t first_leaf = leaves - 2;
    BitString s(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) s.set(j, node_bits_.get(first_leaf + j));
    return s;
}

DecisionTree DecisionTree::deserialize(const std::vector<std::uint8_t>& bytes, int n) {
    if (n < 1 || n > kMaxTreeRounds) throw std::invalid_argument("tree: n out of range");
    return DecisionTree(BitString::from_bytes(bytes, node_count(n)), n);
}

DecisionTree build_tree(const ProtocolParams& params, const Key& key, const Nonce& nonce_a,
                        const Nonce& nonce_b, TreeMode mode, Rng& rng) {
    if (params.n > kMaxTreeRounds) throw std::invalid_argument("tree: n out of range");
    check_nonce(params, nonce_a);
    check_nonce(params, nonce_b);
    if (nonce_a.role != NonceRole::VerifierA || nonce_b.role != NonceRole::ProverB)
        throw std::invalid_argument("tree: nonce roles mismatched");

    if (mode == TreeMode::IdealUniform)
        return DecisionTree(BitString::random(params.l_k, rng), params.n);

    if (key.bits.size() != params.l_k)
        throw std::invalid_argument("tree: key length does not match params");
    std::vector<std::uint8_t> message;
    append_framed(message, nonce_a.bits);
    append_framed(message, nonce_b.bits);
    return DecisionTree(prf_expand(key.bits.bytes(), "dbsim.tree", message, params.l_k), params.n);
}

}  // namespace dbsim
