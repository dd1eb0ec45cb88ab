// The polar transform algebra on GF(2) vectors: bit-reversal permutation,
// the F = [[1,0],[1,1]] Kronecker-power butterfly, and the block encoder
// x = u * G_N with G_N = B_N F^{(x)n}.

#pragma once

#include <bit>
#include <cstdint>

#include "polar/bitvec.hpp"
#include "polar/errors.hpp"

namespace polar {

// n such that N = 2^n. Rejects zero and non-powers of two.
inline unsigned level_of(std::size_t n) {
	if (n == 0 || (n & (n - 1)) != 0)
		throw invalid_length_error("block length must be a power of two, got " + std::to_string(n));
	return unsigned(std::countr_zero(n));
}

inline std::uint64_t reverse_bits(std::uint64_t v, unsigned n) {
	std::uint64_t r = 0;
	for (unsigned k = 0; k < n; ++k) {
		r = (r << 1) | (v & 1);
		v >>= 1;
	}
	return r;
}

// B_N: the element at bit-index b1..bn moves to bn..b1. Involution.
inline BitVector bit_reverse_permute(const BitVector& u) {
	level_of(u.size());
	std::size_t N = u.size();
	BitVector out(N);
	std::size_t r = 0;
	for (std::size_t i = 0; i < N; ++i) {
		if (u.get(i)) out.set(r, true);
		std::size_t bit = N >> 1;
		while (r & bit) {
			r ^= bit;
			bit >>= 1;
		}
		r |= bit;
	}
	return out;
}

// u * F^{(x)n} by the in-place butterfly network: n stages of N/2 XORs.
// Stages with stride below the word size run as masked shifts, 64 lanes at
// a time; wider strides XOR whole word ranges.
inline BitVector butterfly_transform(BitVector u) {
	unsigned n = level_of(u.size());
	auto& w = u.words();
	static constexpr std::uint64_t lane_mask[6] = {
	    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
	    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
	};
	for (unsigned s = 0; s < n; ++s) {
		std::size_t h = std::size_t(1) << s;
		if (h < 64) {
			std::uint64_t m = lane_mask[s];
			for (auto& word : w) word ^= (word >> h) & m;
		} else {
			std::size_t hw = h >> 6;
			for (std::size_t base = 0; base + hw < w.size(); base += 2 * hw)
				for (std::size_t k = 0; k < hw; ++k) w[base + k] ^= w[base + hw + k];
		}
	}
	return u;
}

// x = u * G_N. Involution: encode(encode(u)) == u.
inline BitVector encode(const BitVector& u) { return butterfly_transform(bit_reverse_permute(u)); }

// Hamming weight of row `row` (0-based) of G_N, N = 2^n: 2^{popcount(row)}.
inline std::uint64_t row_weight(unsigned n, std::uint64_t row) {
	if (n >= 64 || row >= (std::uint64_t(1) << n))
		throw validation_error("row index out of range for level " + std::to_string(n));
	return std::uint64_t(1) << std::popcount(row);
}

// Row `row` of G_N, generated from the bit-indexed product formula; no
// N-by-N matrix is ever materialized. Column c is 1 iff the bit pattern of
// c is covered by the bit-reversed row index.
inline BitVector generator_row(unsigned n, std::uint64_t row) {
	if (n >= 32 || row >= (std::uint64_t(1) << n))
		throw validation_error("row index out of range for level " + std::to_string(n));
	std::uint64_t r = reverse_bits(row, n);
	std::size_t N = std::size_t(1) << n;
	BitVector out(N);
	for (std::size_t c = 0; c < N; ++c)
		if ((c & ~r) == 0) out.set(c, true);
	return out;
}

} // namespace polar
