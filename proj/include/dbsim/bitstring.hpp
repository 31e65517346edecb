#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dbsim {

// Fixed-length bit string. Bit 0 is the leftmost bit; bytes pack bits
// MSB-first, so bit i lives in byte i/8 at position 7 - i%8. Unused bits
// of the final byte are kept zero, which makes equality and byte-level
// serialization of equal-length strings exact.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t nbits) : nbits_(nbits), bytes_((nbits + 7) / 8, 0) {}

    static BitString from_string(std::string_view s) {
        BitString out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                out.set(i, 1);
            else if (s[i] != '0')
                throw std::invalid_argument("BitString: expected only '0'/'1' characters");
        }
        return out;
    }

    // Inverse of bytes(): byte count and pad bits must be consistent.
    static BitString from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
        if (bytes.size() != (nbits + 7) / 8)
            throw std::invalid_argument("BitString: byte length does not match bit count");
        if (nbits % 8 != 0) {
            const auto pad_mask = static_cast<std::uint8_t>(0xFFu >> (nbits % 8));
            if ((bytes.back() & pad_mask) != 0)
                throw std::invalid_argument("BitString: nonzero padding bits");
        }
        BitString out;
        out.nbits_ = nbits;
        out.bytes_ = bytes;
        return out;
    }

    template <class Rng>
    static BitString random(std::size_t nbits, Rng& rng) {
        BitString out(nbits);
        std::size_t i = 0;
        const std::size_t nbytes = out.bytes_.size();
        while (i < nbytes) {
            std::uint64_t w = rng();
            for (int k = 0; k < 8 && i < nbytes; ++k, ++i) {
                out.bytes_[i] = static_cast<std::uint8_t>(w >> 56);
                w <<= 8;
            }
        }
        out.mask_padding();
        return out;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    int get(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1; }

    void set(std::size_t i, int bit) {
        if (i >= nbits_) throw std::out_of_range("BitString::set: index out of range");
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
        if (bit)
            bytes_[i >> 3] |= mask;
        else
            bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }

    // Integer value of the whole string, bit 0 most significant.
    std::uint64_t value() const {
        if (nbits_ > 64) throw std::length_error("BitString::value: more than 64 bits");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < nbits_; ++i) v = (v << 1) | static_cast<std::uint64_t>(get(i));
        return v;
    }

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (std::size_t i = 0; i < nbits_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    // Zero-padded to the byte boundary.
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.nbits_ == b.nbits_ && a.bytes_ == b.bytes_;
    }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }

private:
    void mask_padding() {
        if (nbits_ % 8 != 0 && !bytes_.empty())
            bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - nbits_ % 8));
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint8_t> bytes_;
};

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.bytes().size(); ++i)
        d += static_cast<std::size_t>(__builtin_popcount(a.bytes()[i] ^ b.bytes()[i]));
    return d;
}

}  // namespace dbsim
