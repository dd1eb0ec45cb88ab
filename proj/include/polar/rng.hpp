// Counter-based randomness: every draw is a pure function of
// (master seed, trial id, counter), so trials can run in any order on any
// number of workers and still produce identical streams.

#pragma once

#include <cstdint>

namespace polar::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ull;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
	return x ^ (x >> 31);
}

inline std::uint64_t stream_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t counter) {
	std::uint64_t k = splitmix64(seed ^ (trial * 0xd1342543de82ef95ull));
	return splitmix64(k ^ (counter * 0xaf251af3b0f025b5ull));
}

// Uniform in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t word) {
	return double(word >> 11) * 0x1.0p-53;
}

// Counter tags keep the independent purposes of one trial on disjoint streams.
inline constexpr std::uint64_t kTagChannel = std::uint64_t(0) << 56;
inline constexpr std::uint64_t kTagMessage = std::uint64_t(1) << 56;
inline constexpr std::uint64_t kTagFrozen = std::uint64_t(2) << 56;

} // namespace polar::rng
