// Successive cancellation decoding in the log-likelihood-ratio domain.
//
// The decision statistic for index i is ln of the coordinate channel ratio
// W_N^(i)(y, u_1^{i-1} | 0) / W_N^(i)(y, u_1^{i-1} | 1). It is assembled by
// the two-argument recursions on half-length statistics, evaluated lazily in
// a depth-first order, sharing every intermediate value: exactly N(1+log2 N)
// node evaluations per decode.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "polar/channel.hpp"
#include "polar/code_spec.hpp"
#include "polar/errors.hpp"

namespace polar {

// Per-symbol channel statistics ln W(y|0)/W(y|1). +-inf encodes certainty;
// 0 encodes an erasure; NaN is rejected.
struct ChannelObservation {
	std::vector<double> llr;

	std::size_t size() const { return llr.size(); }
};

inline ChannelObservation llr_from_output(const Channel& ch, std::span<const int> y) {
	const DmcTable& w = ch.table;
	ChannelObservation obs;
	obs.llr.reserve(y.size());
	for (int sym : y) {
		if (sym < 0 || std::size_t(sym) >= w.y_count())
			throw validation_error("output symbol out of alphabet");
		double a = w.p0[std::size_t(sym)], b = w.p1[std::size_t(sym)];
		double v;
		if (a > 0.0 && b > 0.0)
			v = std::log(a / b);
		else if (a > 0.0)
			v = std::numeric_limits<double>::infinity();
		else if (b > 0.0)
			v = -std::numeric_limits<double>::infinity();
		else
			v = 0.0; // symbol unreachable under either input
		obs.llr.push_back(v);
	}
	return obs;
}

// Exact log-domain check combine: ln((1 + e^{a+b}) / (e^a + e^b)).
// Infinite inputs resolve by sign algebra; an erasure (0) absorbs.
inline double llr_check(double a, double b) {
	if (std::isinf(a)) return a > 0.0 ? b : -b;
	if (std::isinf(b)) return b > 0.0 ? a : -a;
	double s = (std::signbit(a) != std::signbit(b)) ? -1.0 : 1.0;
	double m = s * std::min(std::abs(a), std::abs(b));
	return m + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

// Variable combine: b + (1-2u) a. Contradictory certainties cancel to an
// erasure; that can only arise after a decision error on a BEC.
inline double llr_var(double a, double b, unsigned u) {
	double aa = u ? -a : a;
	if (std::isinf(aa) && std::isinf(b) && (aa > 0.0) != (b > 0.0)) return 0.0;
	return aa + b;
}

// Scratch for one decode: staged statistic arrays (2N-1 slots) and two
// partial-sum bit planes per slot. Reusable across decodes of the same N;
// one instance per worker thread.
class LlrWorkspace {
public:
	explicit LlrWorkspace(unsigned level) : n_(level), N_(std::size_t(1) << level) {
		off_.resize(n_ + 1);
		std::size_t total = 0;
		for (unsigned lam = 0; lam <= n_; ++lam) {
			off_[lam] = total;
			total += N_ >> lam;
		}
		llr_.assign(total, 0.0);
		ps_.assign(2 * total, 0);
	}

	unsigned level() const { return n_; }
	std::size_t block_length() const { return N_; }

	// Node evaluations in the most recent decode (counts the channel-level
	// loads plus every check/variable combine).
	std::uint64_t op_count() const { return ops_; }

	// Runs one successive-cancellation pass. decide(index, llr) supplies the
	// bit committed at each index, in order 0..N-1.
	template <class Decide>
	void run(std::span<const double> channel_llr, Decide&& decide) {
		if (channel_llr.size() != N_) throw invalid_length_error("observation length mismatch");
		for (double v : channel_llr)
			if (std::isnan(v)) throw validation_error("NaN in channel observation");
		ops_ = 0;
		double* chan = llr_.data() + off_[0];
		for (std::size_t j = 0; j < N_; ++j) chan[j] = channel_llr[j];
		ops_ += N_;
		if (n_ == 0) {
			decide(0, chan[0]);
			return;
		}
		for (std::size_t phi = 0; phi < N_; ++phi) {
			unsigned first = phi == 0 ? 1 : n_ - unsigned(std::countr_zero(phi));
			for (unsigned lam = first; lam <= n_; ++lam) {
				std::size_t ph = phi >> (n_ - lam);
				std::size_t cnt = N_ >> lam;
				double* dst = llr_.data() + off_[lam];
				const double* src = llr_.data() + off_[lam - 1];
				if ((ph & 1) == 0) {
					for (std::size_t b = 0; b < cnt; ++b) dst[b] = llr_check(src[2 * b], src[2 * b + 1]);
				} else {
					const std::uint8_t* plane = ps_.data() + 2 * off_[lam];
					for (std::size_t b = 0; b < cnt; ++b)
						dst[b] = llr_var(src[2 * b], src[2 * b + 1], plane[2 * b]);
				}
				ops_ += cnt;
			}
			unsigned bit = unsigned(decide(phi, llr_[off_[n_]])) & 1u;
			ps_[2 * off_[n_] + (phi & 1)] = std::uint8_t(bit);
			if (phi & 1) {
				std::size_t psum = phi;
				for (unsigned lam = n_; lam > 0 && (psum & 1); --lam, psum >>= 1) {
					std::size_t cnt = N_ >> lam;
					std::uint8_t* up = ps_.data() + 2 * off_[lam];
					std::uint8_t* down = ps_.data() + 2 * off_[lam - 1];
					std::size_t plane = (psum >> 1) & 1;
					for (std::size_t b = 0; b < cnt; ++b) {
						down[2 * (2 * b) + plane] = up[2 * b] ^ up[2 * b + 1];
						down[2 * (2 * b + 1) + plane] = up[2 * b + 1];
					}
				}
			}
		}
	}

private:
	unsigned n_;
	std::size_t N_;
	std::vector<std::size_t> off_;
	std::vector<double> llr_;
	std::vector<std::uint8_t> ps_;
	std::uint64_t ops_ = 0;
};

struct ScResult {
	BitVector u_hat;
	BitVector x_hat;
};

// Plain successive cancellation: frozen indices are copied from the spec,
// information indices decide 0 on a non-negative statistic. Single pass, no
// revision.
inline ScResult sc_decode(const CodeSpec& code, const ChannelObservation& obs, LlrWorkspace& ws) {
	code.validate();
	if (obs.size() != code.N || ws.block_length() != code.N)
		throw invalid_length_error("decoder length mismatch");
	auto fmap = code.frozen_map();
	ScResult res;
	res.u_hat = BitVector(code.N);
	ws.run(obs.llr, [&](std::size_t i, double llr) {
		int bit = fmap[i] >= 0 ? int(fmap[i]) : (llr >= 0.0 ? 0 : 1);
		if (bit) res.u_hat.set(i, true);
		return bit;
	});
	res.x_hat = encode(res.u_hat);
	return res;
}

// Genie-aided pass over a known transmitted block: every decision is
// replaced by the true bit, and the per-index decision statistics are
// recorded. flagged[i] marks the event that the statistic did not favor the
// true bit (ties flag, mirroring the error-event bound being estimated).
struct GenieTrace {
	std::vector<std::uint8_t> flagged;
	std::vector<double> llr;
};

inline GenieTrace genie_trace(const CodeSpec& code, const ChannelObservation& obs,
                              const BitVector& true_u, LlrWorkspace& ws) {
	if (obs.size() != code.N || true_u.size() != code.N || ws.block_length() != code.N)
		throw invalid_length_error("decoder length mismatch");
	GenieTrace tr;
	tr.flagged.assign(code.N, 0);
	tr.llr.assign(code.N, 0.0);
	ws.run(obs.llr, [&](std::size_t i, double llr) {
		int u = int(true_u.get(i));
		tr.llr[i] = llr;
		double aligned = u ? -llr : llr;
		tr.flagged[i] = aligned <= 0.0 ? 1 : 0;
		return u;
	});
	return tr;
}

} // namespace polar
