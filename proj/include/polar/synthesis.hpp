// Channel combining and splitting: the single-step pair transform, exact
// synthesis of the small-N coordinate channels (recursive and brute-force
// routes kept deliberately independent), the O(N) erasure-probability
// recursion for the BEC, and the symmetric-channel shortcut for Z.

#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "polar/channel.hpp"
#include "polar/errors.hpp"
#include "polar/transform.hpp"

namespace polar {

// One step of the pair transform (W, W) -> (minus, plus).
// minus has outputs (y1, y2) encoded y1 * Y + y2;
// plus has outputs ((y1, y2), u1) encoded (y1 * Y + y2) * 2 + u1.
struct StepPair {
	DmcTable minus;
	DmcTable plus;
};

inline StepPair single_step(const DmcTable& w) {
	w.validate();
	std::size_t Y = w.y_count();
	StepPair out;
	out.minus.p0.assign(Y * Y, 0.0);
	out.minus.p1.assign(Y * Y, 0.0);
	out.plus.p0.assign(Y * Y * 2, 0.0);
	out.plus.p1.assign(Y * Y * 2, 0.0);
	auto row = [&w](int x) -> const std::vector<double>& { return x ? w.p1 : w.p0; };
	for (std::size_t y1 = 0; y1 < Y; ++y1)
		for (std::size_t y2 = 0; y2 < Y; ++y2) {
			std::size_t pair = y1 * Y + y2;
			for (int u1 = 0; u1 < 2; ++u1) {
				double sum = 0.0;
				for (int u2 = 0; u2 < 2; ++u2) {
					double v = 0.5 * row(u1 ^ u2)[y1] * row(u2)[y2];
					sum += v;
					// plus channel: input u2, output ((y1,y2),u1)
					auto& dst = u2 ? out.plus.p1 : out.plus.p0;
					dst[pair * 2 + std::size_t(u1)] += v;
				}
				auto& dst = u1 ? out.minus.p1 : out.minus.p0;
				dst[pair] = sum;
			}
		}
	return out;
}

// Coordinate channel of the length-N construction, as an explicit table.
// Output symbols are canonical integers: sym = y_id * 2^{i-1} + prefix_id,
// with y_id the base-Y big-endian encoding of (y_1..y_N) and prefix_id the
// big-endian bit encoding of (u_1..u_{i-1}).
struct SplitChannel {
	DmcTable table;
	unsigned level = 0;        // n, with N = 2^n
	std::uint64_t index = 1;   // i, 1-based
	std::size_t base_outputs = 0;

	std::size_t block_length() const { return std::size_t(1) << level; }
};

namespace detail {

inline void check_synthesis_limits(const DmcTable& w, unsigned n, std::uint64_t i) {
	w.validate();
	if (n > 3) throw resource_limit_error("exact synthesis is capped at N <= 8");
	if (w.y_count() > 4) throw resource_limit_error("exact synthesis is capped at 4 output symbols");
	if (i < 1 || i > (std::uint64_t(1) << n)) throw validation_error("coordinate index out of range");
}

inline void check_split_rows(SplitChannel& s, double tol = 1e-10) {
	double s0 = 0.0, s1 = 0.0;
	for (double v : s.table.p0) s0 += v;
	for (double v : s.table.p1) s1 += v;
	if (std::abs(s0 - 1.0) > tol || std::abs(s1 - 1.0) > tol)
		throw consistency_error("synthesized channel rows do not sum to 1");
}

// x = u * G_N for a block packed into an unsigned integer, u_1 in the MSB.
inline std::uint32_t encode_packed(std::uint32_t u, unsigned n) {
	std::size_t N = std::size_t(1) << n;
	BitVector v(N);
	for (std::size_t j = 0; j < N; ++j) v.set(j, (u >> (N - 1 - j)) & 1u);
	BitVector x = encode(v);
	std::uint32_t out = 0;
	for (std::size_t j = 0; j < N; ++j) out = (out << 1) | std::uint32_t(x.get(j));
	return out;
}

} // namespace detail

// Direct evaluation of the splitting definition: enumerate every block input
// u_1^N, accumulate 2^{-(N-1)} W^N(y | u G_N) into the output cell selected
// by (u_1..u_{i-1}) and the row selected by u_i. This is the oracle route.
inline SplitChannel brute_force_split(const DmcTable& w, unsigned n, std::uint64_t i) {
	detail::check_synthesis_limits(w, n, i);
	std::size_t N = std::size_t(1) << n;
	std::size_t Y = w.y_count();
	std::size_t prefixes = std::size_t(1) << (i - 1);
	std::size_t y_total = 1;
	for (std::size_t k = 0; k < N; ++k) y_total *= Y;

	SplitChannel out;
	out.level = n;
	out.index = i;
	out.base_outputs = Y;
	out.table.p0.assign(y_total * prefixes, 0.0);
	out.table.p1.assign(y_total * prefixes, 0.0);

	std::vector<std::uint32_t> codeword(std::size_t(1) << N);
	for (std::uint32_t u = 0; u < codeword.size(); ++u) codeword[u] = detail::encode_packed(u, n);

	double norm = std::ldexp(1.0, -int(N - 1));
	std::vector<std::size_t> digits(N);
	for (std::size_t y_id = 0; y_id < y_total; ++y_id) {
		std::size_t rem = y_id;
		for (std::size_t j = N; j-- > 0;) {
			digits[j] = rem % Y;
			rem /= Y;
		}
		for (std::uint32_t u = 0; u < (std::uint32_t(1) << N); ++u) {
			std::uint32_t x = codeword[u];
			double prob = norm;
			for (std::size_t j = 0; j < N && prob > 0.0; ++j) {
				int xj = (x >> (N - 1 - j)) & 1u;
				prob *= xj ? w.p1[digits[j]] : w.p0[digits[j]];
			}
			if (prob == 0.0) continue;
			std::size_t prefix = i > 1 ? std::size_t(u >> (N - i + 1)) : 0;
			int ui = (u >> (N - i)) & 1u;
			std::size_t sym = y_id * prefixes + prefix;
			(ui ? out.table.p1 : out.table.p0)[sym] += prob;
		}
	}
	detail::check_split_rows(out);
	return out;
}

// Recursive synthesis along the path bits of i: at each level the composite
// output (y_1^{2L}, u_1^{p'}) is decoded into the two child symbols
// (y-top, odd XOR even prefix bits) and (y-bottom, even prefix bits), and
// the single-step formulas are applied. Independent of brute_force_split.
inline SplitChannel synthesize_exact(const DmcTable& w, unsigned n, std::uint64_t i) {
	detail::check_synthesis_limits(w, n, i);
	std::size_t Y = w.y_count();

	DmcTable cur = w;
	std::size_t y_part = Y;   // number of y-encodings at the current level
	std::size_t prefix_bits = 0;

	for (unsigned k = 0; k < n; ++k) {
		bool plus = ((i - 1) >> (n - 1 - k)) & 1u;
		std::size_t next_prefix = 2 * prefix_bits + (plus ? 1 : 0);
		std::size_t next_y = y_part * y_part;
		DmcTable next;
		next.p0.assign(next_y << next_prefix, 0.0);
		next.p1.assign(next_y << next_prefix, 0.0);
		auto row = [&cur](int x) -> const std::vector<double>& { return x ? cur.p1 : cur.p0; };

		for (std::size_t ytop = 0; ytop < y_part; ++ytop)
			for (std::size_t ybot = 0; ybot < y_part; ++ybot)
				for (std::size_t uid = 0; uid < (std::size_t(1) << next_prefix); ++uid) {
					// Split the prefix bits into odd/even position subsequences.
					std::size_t odd = 0, even = 0;
					int last = -1;
					for (std::size_t t = 0; t < next_prefix; ++t) {
						int b = (uid >> (next_prefix - 1 - t)) & 1u;
						if (plus && t + 1 == next_prefix) {
							last = b; // u_{2i-1}, the freshly decided odd bit
						} else if (t % 2 == 0) {
							odd = (odd << 1) | std::size_t(b);
						} else {
							even = (even << 1) | std::size_t(b);
						}
					}
					std::size_t s1 = (ytop << prefix_bits) | (odd ^ even);
					std::size_t s2 = (ybot << prefix_bits) | even;
					std::size_t sym = ((ytop * y_part + ybot) << next_prefix) | uid;
					if (plus) {
						next.p0[sym] = 0.5 * row(last ^ 0)[s1] * row(0)[s2];
						next.p1[sym] = 0.5 * row(last ^ 1)[s1] * row(1)[s2];
					} else {
						for (int u = 0; u < 2; ++u) {
							double sum = 0.0;
							for (int u2 = 0; u2 < 2; ++u2) sum += 0.5 * row(u ^ u2)[s1] * row(u2)[s2];
							(u ? next.p1 : next.p0)[sym] = sum;
						}
					}
				}
		cur = std::move(next);
		y_part = next_y;
		prefix_bits = next_prefix;
	}

	SplitChannel out;
	out.level = n;
	out.index = i;
	out.base_outputs = Y;
	out.table = std::move(cur);
	detail::check_split_rows(out);
	return out;
}

// Erasure probabilities (and capacities) of all N coordinate channels of a
// BEC, via the quadratic recursion. O(N) time and memory.
struct BecProfile {
	unsigned level = 0;
	std::vector<double> z;   // erasure probability per index, natural order
	std::vector<double> cap; // 1 - z
};

inline BecProfile bec_profile(double eps, unsigned n) {
	if (!(eps >= 0.0 && eps <= 1.0)) throw validation_error("erasure probability must be in [0,1]");
	if (n > 25) throw resource_limit_error("bec_profile is capped at n <= 25");
	BecProfile out;
	out.level = n;
	out.z.assign(1, eps);
	for (unsigned k = 0; k < n; ++k) {
		std::vector<double> next(out.z.size() * 2);
		for (std::size_t j = 0; j < out.z.size(); ++j) {
			double v = out.z[j];
			next[2 * j] = 2.0 * v - v * v;
			next[2 * j + 1] = v * v;
		}
		out.z = std::move(next);
	}
	out.cap.resize(out.z.size());
	for (std::size_t j = 0; j < out.z.size(); ++j) out.cap[j] = 1.0 - out.z[j];
	return out;
}

namespace detail {

// Output permutation realizing W(y|1) = W(pi(y)|0) for the built-in kinds.
inline int symmetry_perm(Channel::Kind kind, int y, int x) {
	if (x == 0) return y;
	if (kind == Channel::Kind::bsc) return y ^ 1;
	return y == kBecSymErase ? y : (kBecSymZero + kBecSymOne) - y;
}

} // namespace detail

// Z(W_N^(i)) for a declared-symmetric channel, summing only over orbit
// representatives of the output space under the frozen-tail coset action.
// Exact; cross-checked against the full table route in tests.
inline double symmetric_z(const Channel& ch, unsigned n, std::uint64_t i) {
	if (!ch.builtin_symmetric())
		throw unsupported_error("symmetric_z requires a bec or bsc channel descriptor");
	detail::check_synthesis_limits(ch.table, n, i);
	const DmcTable& w = ch.table;
	std::size_t N = std::size_t(1) << n;
	std::size_t Y = w.y_count();
	std::size_t y_total = 1;
	for (std::size_t k = 0; k < N; ++k) y_total *= Y;
	std::size_t tail = std::size_t(1) << (N - i);

	// Codewords of the acting group elements a with a_1^i = 0.
	std::vector<std::uint32_t> action(tail);
	for (std::size_t a = 0; a < tail; ++a) action[a] = detail::encode_packed(std::uint32_t(a), n);

	std::vector<std::size_t> digits(N), moved(N);
	auto apply = [&](std::uint32_t x) {
		std::size_t id = 0;
		for (std::size_t j = 0; j < N; ++j) {
			int b = (x >> (N - 1 - j)) & 1u;
			id = id * Y + std::size_t(detail::symmetry_perm(ch.kind, int(digits[j]), b));
		}
		return id;
	};

	double total = 0.0;
	double norm = std::ldexp(1.0, -int(N - 1));
	for (std::size_t y_id = 0; y_id < y_total; ++y_id) {
		std::size_t rem = y_id;
		for (std::size_t j = N; j-- > 0;) {
			digits[j] = rem % Y;
			rem /= Y;
		}
		// Only the orbit minimum acts as representative.
		bool rep = true;
		for (std::size_t a = 1; a < tail && rep; ++a)
			if (apply(action[a]) < y_id) rep = false;
		if (!rep) continue;
		std::vector<std::size_t> seen;
		seen.reserve(tail);
		for (std::size_t a = 0; a < tail; ++a) seen.push_back(apply(action[a]));
		std::sort(seen.begin(), seen.end());
		std::size_t count = std::size_t(std::unique(seen.begin(), seen.end()) - seen.begin());

		double w0 = 0.0, w1 = 0.0;
		for (std::size_t t = 0; t < tail; ++t) {
			// u with zero prefix, u_i in {0,1}, tail bits t.
			std::uint32_t u0 = std::uint32_t(t);
			std::uint32_t u1 = std::uint32_t(t) | (std::uint32_t(1) << (N - i));
			for (auto [u, dst] : {std::pair<std::uint32_t, double*>{u0, &w0}, {u1, &w1}}) {
				std::uint32_t x = detail::encode_packed(u, n);
				double prob = norm;
				for (std::size_t j = 0; j < N && prob > 0.0; ++j) {
					int xj = (x >> (N - 1 - j)) & 1u;
					prob *= xj ? w.p1[digits[j]] : w.p0[digits[j]];
				}
				*dst += prob;
			}
		}
		total += double(count) * std::sqrt(w0 * w1);
	}
	return std::ldexp(total, int(i - 1));
}

} // namespace polar
