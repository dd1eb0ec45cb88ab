// Packed GF(2) row vector.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "polar/errors.hpp"

namespace polar {

// Bit i is stored in words()[i / 64] at bit position i % 64.
// Bits past size() in the last word are kept zero.
class BitVector {
public:
	BitVector() = default;
	explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

	BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
		std::size_t i = 0;
		for (int b : bits) set(i++, b != 0);
	}

	static BitVector from_string(std::string_view s) {
		BitVector v(s.size());
		for (std::size_t i = 0; i < s.size(); ++i) {
			if (s[i] == '1')
				v.set(i, true);
			else if (s[i] != '0')
				throw validation_error("bit string may contain only '0' and '1'");
		}
		return v;
	}

	std::size_t size() const { return size_; }
	bool empty() const { return size_ == 0; }

	bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
	bool operator[](std::size_t i) const { return get(i); }

	void set(std::size_t i, bool v) {
		std::uint64_t m = std::uint64_t(1) << (i & 63);
		if (v)
			words_[i >> 6] |= m;
		else
			words_[i >> 6] &= ~m;
	}

	void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

	BitVector& operator^=(const BitVector& o) {
		if (o.size_ != size_) throw invalid_length_error("xor of unequal-length bit vectors");
		for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
		return *this;
	}

	friend BitVector operator^(BitVector a, const BitVector& b) {
		a ^= b;
		return a;
	}

	bool operator==(const BitVector&) const = default;

	std::size_t popcount() const {
		std::size_t c = 0;
		for (std::uint64_t w : words_) c += std::size_t(__builtin_popcountll(w));
		return c;
	}

	std::string to_string() const {
		std::string s(size_, '0');
		for (std::size_t i = 0; i < size_; ++i)
			if (get(i)) s[i] = '1';
		return s;
	}

	std::vector<std::uint64_t>& words() { return words_; }
	const std::vector<std::uint64_t>& words() const { return words_; }

private:
	std::size_t size_ = 0;
	std::vector<std::uint64_t> words_;
};

} // namespace polar
