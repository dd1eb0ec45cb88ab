// Information-set selection: exact BEC recursion, exact small-N tables,
// Monte-Carlo Bhattacharyya estimation, threshold sets, and the
// channel-independent row-weight (Reed-Muller) rule.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "polar/code_spec.hpp"
#include "polar/decoder.hpp"
#include "polar/rng.hpp"
#include "polar/synthesis.hpp"

namespace polar {

inline ReliabilityProfile reliability_exact_bec(double eps, unsigned n) {
	BecProfile p = bec_profile(eps, n);
	ReliabilityProfile out;
	out.z_hat = std::move(p.z);
	out.method = "exact-bec";
	return out;
}

inline ReliabilityProfile reliability_exact_table(const DmcTable& w, unsigned n) {
	std::size_t N = std::size_t(1) << n;
	ReliabilityProfile out;
	out.z_hat.reserve(N);
	for (std::size_t i = 1; i <= N; ++i)
		out.z_hat.push_back(bhattacharyya(synthesize_exact(w, n, i).table));
	out.method = "exact-table";
	return out;
}

// Estimates every Z(W_N^(i)) as the sample mean of the square-root
// likelihood-ratio variable, evaluated by a genie-aided pass with the full
// transmitted block known (the all-frozen decoder). One trial costs one
// encode, one channel draw, and one O(N log N) decode. Reproducible: trial
// t, position j draws from the counter stream (seed, t, tag|j), and trials
// accumulate in index order.
inline ReliabilityProfile monte_carlo_profile(const Channel& ch, unsigned n, std::uint64_t samples,
                                              std::uint64_t seed) {
	if (samples < 1) throw validation_error("monte-carlo estimation needs at least one sample");
	std::size_t N = std::size_t(1) << n;
	LlrWorkspace ws(n);
	std::vector<double> sum(N, 0.0), sumsq(N, 0.0);
	BitVector u(N);
	std::vector<int> y(N);

	for (std::uint64_t t = 0; t < samples; ++t) {
		for (std::size_t j = 0; j < N; ++j)
			u.set(j, rng::stream_word(seed, t, rng::kTagMessage | j) & 1u);
		BitVector x = encode(u);
		for (std::size_t j = 0; j < N; ++j) {
			double r = rng::uniform01(rng::stream_word(seed, t, rng::kTagChannel | j));
			y[j] = sample_output(ch.table, x.get(j), r);
		}
		ChannelObservation obs = llr_from_output(ch, y);
		ws.run(obs.llr, [&](std::size_t i, double llr) {
			int bit = int(u.get(i));
			double aligned = bit ? -llr : llr;
			// sqrt of the wrong-over-right likelihood ratio; certainty -> 0.
			// A sampled block can never make the true bit impossible.
			if (std::isinf(aligned) && aligned < 0.0)
				throw consistency_error("true bit has zero likelihood in sampled block");
			double rv = std::isinf(aligned) ? 0.0 : std::exp(-0.5 * aligned);
			sum[i] += rv;
			sumsq[i] += rv * rv;
			return bit;
		});
	}

	ReliabilityProfile out;
	out.method = "monte-carlo";
	out.samples = samples;
	out.z_hat.resize(N);
	out.std_error.resize(N);
	std::size_t clamped = 0;
	double S = double(samples);
	for (std::size_t i = 0; i < N; ++i) {
		double mean = sum[i] / S;
		double var = samples > 1 ? std::max(0.0, (sumsq[i] - sum[i] * sum[i] / S) / (S - 1.0)) : 0.0;
		out.std_error[i] = std::sqrt(var / S);
		if (mean < 0.0 || mean > 1.0) {
			++clamped;
			mean = std::clamp(mean, 0.0, 1.0);
		}
		out.z_hat[i] = mean;
	}
	if (clamped)
		std::cerr << "monte_carlo_profile: clamped " << clamped << " estimate(s) into [0,1]\n";
	return out;
}

// Strict threshold set {i : z_hat[i] < gamma}, 0-based indices.
inline std::vector<std::uint32_t> threshold_set(const ReliabilityProfile& profile, double gamma) {
	if (!(gamma >= 0.0 && gamma <= 1.0)) throw validation_error("threshold must be in [0,1]");
	std::vector<std::uint32_t> out;
	for (std::size_t i = 0; i < profile.z_hat.size(); ++i)
		if (profile.z_hat[i] < gamma) out.push_back(std::uint32_t(i));
	return out;
}

namespace detail {

// K indices of smallest reliability value, ties to the smaller index.
inline std::vector<std::uint32_t> select_smallest(const std::vector<double>& z, std::size_t K) {
	std::vector<std::uint32_t> order(z.size());
	std::iota(order.begin(), order.end(), 0u);
	std::stable_sort(order.begin(), order.end(),
	                 [&z](std::uint32_t a, std::uint32_t b) { return z[a] < z[b]; });
	order.resize(K);
	std::sort(order.begin(), order.end());
	return order;
}

inline BitVector make_frozen(std::size_t count, bool random, std::uint64_t seed) {
	BitVector f(count);
	if (random)
		for (std::size_t j = 0; j < count; ++j)
			f.set(j, rng::stream_word(seed, 0, rng::kTagFrozen | j) & 1u);
	return f;
}

} // namespace detail

// Polar rule: keep the K indices with the smallest estimated Z. method is
// one of exact-bec (BEC only, any n), exact-table (n <= 3), monte-carlo
// (needs samples); "auto" picks the cheapest exact method available.
inline CodeSpec construct_polar(const Channel& ch, unsigned n, std::size_t K,
                                std::string method = "auto", std::uint64_t samples = 0,
                                std::uint64_t seed = 0, bool random_frozen = false) {
	std::size_t N = std::size_t(1) << n;
	if (K > N) throw validation_error("K exceeds N");
	if (method == "auto") {
		if (ch.kind == Channel::Kind::bec)
			method = "exact-bec";
		else if (n <= 3)
			method = "exact-table";
		else
			method = "monte-carlo";
	}

	ReliabilityProfile profile;
	if (method == "exact-bec") {
		if (ch.kind != Channel::Kind::bec)
			throw validation_error("exact-bec construction requires a bec channel");
		profile = reliability_exact_bec(ch.param, n);
	} else if (method == "exact-table") {
		if (n > 3) throw resource_limit_error("exact-table construction is capped at N <= 8");
		profile = reliability_exact_table(ch.table, n);
	} else if (method == "monte-carlo") {
		profile = monte_carlo_profile(ch, n, samples, seed);
	} else {
		throw validation_error("unknown construction method: " + method);
	}

	CodeSpec spec;
	spec.N = N;
	spec.K = K;
	spec.info_set = detail::select_smallest(profile.z_hat, K);
	spec.frozen_values = detail::make_frozen(N - K, random_frozen, seed);
	spec.channel = ch;
	spec.profile = std::move(profile);
	spec.method = spec.profile.method;
	spec.seed = seed;
	spec.validate();
	return spec;
}

namespace detail {

inline double weight_tail(unsigned n, unsigned r) {
	// sum_{k=r}^{n} C(n,k); r may be n+1 (empty sum)
	double s = 0.0;
	for (unsigned k = r; k <= n; ++k) {
		double c = 1.0;
		for (unsigned j = 0; j < k; ++j) c = c * double(n - j) / double(j + 1);
		s += c;
	}
	return s;
}

} // namespace detail

// Row-weight rule: choose the r with sum_{k=r}^n C(n,k) <= K, take every
// index whose bit-weight is at least r, and fill the remainder from the
// weight r-1 indices (smallest index first, which keeps the printed
// small-N codes of the classical constructions). Frozen bits are zero.
inline CodeSpec construct_rm(unsigned n, std::size_t K) {
	std::size_t N = std::size_t(1) << n;
	if (K > N) throw validation_error("K exceeds N");
	unsigned r = 0;
	while (r <= n && detail::weight_tail(n, r) > double(K)) ++r;

	std::vector<std::uint32_t> set;
	for (std::size_t i = 0; i < N; ++i)
		if (unsigned(std::popcount(i)) >= r) set.push_back(std::uint32_t(i));
	if (set.size() < K && r > 0) {
		for (std::size_t i = 0; i < N && set.size() < K; ++i)
			if (unsigned(std::popcount(i)) == r - 1) set.push_back(std::uint32_t(i));
	}
	std::sort(set.begin(), set.end());

	CodeSpec spec;
	spec.N = N;
	spec.K = K;
	spec.info_set = std::move(set);
	spec.frozen_values = BitVector(N - K);
	spec.method = "rm";
	spec.validate();
	return spec;
}

// Upper bound 2^r (1-eps)^{2^{n-r}} on the capacity of the coordinate
// channel reached by n-r worsening steps followed by r improving steps.
inline double rm_pathology_bound(double eps, unsigned n, unsigned r) {
	if (r > n) throw validation_error("r exceeds n");
	return std::ldexp(std::pow(1.0 - eps, std::ldexp(1.0, int(n - r))), int(r));
}

// Exact capacity of that coordinate channel via the BEC capacity recursion.
inline double bec_path_capacity(double eps, unsigned n, unsigned r) {
	if (r > n) throw validation_error("r exceeds n");
	double cap = 1.0 - eps;
	for (unsigned k = 0; k < n - r; ++k) cap = cap * cap;
	for (unsigned k = 0; k < r; ++k) cap = 2.0 * cap - cap * cap;
	return cap;
}

} // namespace polar
