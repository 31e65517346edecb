#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dbsim/bitstring.hpp"

namespace dbsim {

// Keyed pseudorandom expansion: HMAC-SHA256 over (domain || 0x00 || message
// || counter) in counter mode, truncated to nbits. Deterministic in all
// inputs; distinct domains never share output streams.
BitString prf_expand(const std::vector<std::uint8_t>& key_bytes, std::string_view domain,
                     const std::vector<std::uint8_t>& message, std::size_t nbits);

// Length-prefixed framing so that distinct input tuples never alias under
// concatenation.
void append_framed(std::vector<std::uint8_t>& message, const BitString& s);

}  // namespace dbsim
