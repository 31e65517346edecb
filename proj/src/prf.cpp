#include "dbsim/prf.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace dbsim {

void append_framed(std::vector<std::uint8_t>& message, const BitString& s) {
    const std::uint64_t nbits = s.size();
    for (int shift = 56; shift >= 0; shift -= 8)
        message.push_back(static_cast<std::uint8_t>(nbits >> shift));
    message.insert(message.end(), s.bytes().begin(), s.bytes().end());
}

BitString prf_expand(const std::vector<std::uint8_t>& key_bytes, std::string_view domain,
                     const std::vector<std::uint8_t>& message, std::size_t nbits) {
    if (key_bytes.empty()) throw std::invalid_argument("prf_expand: empty key");

    std::vector<std::uint8_t> data;
    data.reserve(domain.size() + 1 + message.size() + 4);
    data.insert(data.end(), domain.begin(), domain.end());
    data.push_back(0x00);
    data.insert(data.end(), message.begin(), message.end());
    const std::size_t counter_at = data.size();
    data.resize(data.size() + 4);

    std::vector<std::uint8_t> out((nbits + 7) / 8);
    std::uint8_t block[EVP_MAX_MD_SIZE];
    std::size_t filled = 0;
    for (std::uint32_t counter = 0; filled < out.size(); ++counter) {
        data[counter_at + 0] = static_cast<std::uint8_t>(counter >> 24);
        data[counter_at + 1] = static_cast<std::uint8_t>(counter >> 16);
        data[counter_at + 2] = static_cast<std::uint8_t>(counter >> 8);
        data[counter_at + 3] = static_cast<std::uint8_t>(counter);

        std::size_t block_len = 0;
        if (EVP_Q_mac(nullptr, "HMAC", nullptr, "SHA256", nullptr, key_bytes.data(),
                      key_bytes.size(), data.data(), data.size(), block, sizeof(block),
                      &block_len) == nullptr)
            throw std::runtime_error("prf_expand: HMAC evaluation failed");

        for (std::size_t i = 0; i < block_len && filled < out.size(); ++i) out[filled++] = block[i];
    }

    if (nbits % 8 != 0) out.back() &= static_cast<std::uint8_t>(0xFFu << (8 - nbits % 8));
    return BitString::from_bytes(out, nbits);
}

}  // namespace dbsim
