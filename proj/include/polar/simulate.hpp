// Seeded Monte-Carlo evaluation: block-error rate under successive
// cancellation, the union-bound comparison, polarization fractions,
// rate-reliability sweeps, the row-weight-rule comparison, and timing
// probes. All randomness flows from one master seed through the counter
// scheme in rng.hpp; reports are identical for any worker count.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <thread>
#include <vector>

#include "polar/construction.hpp"
#include "polar/decoder.hpp"
#include "polar/rng.hpp"

namespace polar {

struct TrialReport {
	std::uint64_t trials = 0;
	std::uint64_t block_errors = 0;
	double bler = 0.0;
	double std_error = 0.0;
	double bound_sum = 0.0;                     // sum of stored z over the information set
	std::vector<std::uint64_t> first_error_hist; // first genie-flagged index per trial
	std::uint64_t seed = 0;
	double wall_time = 0.0;
};

namespace detail {

struct TrialCounts {
	std::uint64_t errors = 0;
	std::vector<std::uint64_t> hist;
};

// One transmission: message bits from (seed, t, message|j), channel draws
// from (seed, t, channel|j). Channel draws depend only on the position, so
// two codes evaluated under the same seed see common randomness.
template <class Body>
inline void run_trials(std::uint64_t begin, std::uint64_t end, Body&& body) {
	for (std::uint64_t t = begin; t < end; ++t) body(t);
}

inline TrialCounts simulate_range(const CodeSpec& code, std::uint64_t seed, std::uint64_t begin,
                                  std::uint64_t end, bool genie) {
	const Channel& ch = *code.channel;
	std::size_t N = code.N;
	LlrWorkspace ws(code.level());
	auto fmap = code.frozen_map();
	TrialCounts out;
	out.hist.assign(genie ? N : 0, 0);
	BitVector u(N);
	std::vector<int> y(N);
	BitVector u_hat(N);

	run_trials(begin, end, [&](std::uint64_t t) {
		for (std::size_t i = 0; i < N; ++i) {
			if (fmap[i] < 0)
				u.set(i, rng::stream_word(seed, t, rng::kTagMessage | i) & 1u);
			else
				u.set(i, fmap[i] != 0);
		}
		BitVector x = encode(u);
		for (std::size_t j = 0; j < N; ++j) {
			double r = rng::uniform01(rng::stream_word(seed, t, rng::kTagChannel | j));
			y[j] = sample_output(ch.table, x.get(j), r);
		}
		ChannelObservation obs = llr_from_output(ch, y);

		bool mismatch = false;
		ws.run(obs.llr, [&](std::size_t i, double llr) {
			int bit = fmap[i] >= 0 ? int(fmap[i]) : (llr >= 0.0 ? 0 : 1);
			if (fmap[i] < 0 && bit != int(u.get(i))) mismatch = true;
			return bit;
		});
		if (mismatch) ++out.errors;

		if (genie) {
			std::size_t first = N;
			ws.run(obs.llr, [&](std::size_t i, double llr) {
				int bit = int(u.get(i));
				double aligned = bit ? -llr : llr;
				if (first == N && aligned <= 0.0) first = i;
				return bit;
			});
			if (first < N) ++out.hist[first];
		}
	});
	return out;
}

} // namespace detail

// Block-error rate of a code under SC decoding over `trials` seeded
// transmissions. The genie histogram records, per index, how often the
// first misaligned decision statistic fell there.
inline TrialReport run_bler(const CodeSpec& code, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads = 1, bool genie = true) {
	code.validate();
	if (!code.channel) throw validation_error("simulation needs a channel in the code spec");
	if (trials < 1) throw validation_error("need at least one trial");
	auto t0 = std::chrono::steady_clock::now();

	TrialReport rep;
	rep.trials = trials;
	rep.seed = seed;
	rep.bound_sum = code.bound_sum();
	rep.first_error_hist.assign(code.N, 0);

	if (code.K == 0) {
		// No information bits: block error is impossible by convention.
		std::cerr << "run_bler: rate-0 code, reporting bler = 0 by convention\n";
		rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		return rep;
	}

	unsigned workers = std::max(1u, threads);
	std::vector<detail::TrialCounts> parts(workers);
	if (workers == 1) {
		parts[0] = detail::simulate_range(code, seed, 0, trials, true);
	} else {
		std::vector<std::thread> pool;
		std::uint64_t chunk = (trials + workers - 1) / workers;
		for (unsigned w = 0; w < workers; ++w) {
			std::uint64_t b = std::min<std::uint64_t>(w * chunk, trials);
			std::uint64_t e = std::min<std::uint64_t>(b + chunk, trials);
			pool.emplace_back([&, w, b, e] { parts[w] = detail::simulate_range(code, seed, b, e, true); });
		}
		for (auto& th : pool) th.join();
	}
	for (const auto& p : parts) {
		rep.block_errors += p.errors;
		for (std::size_t i = 0; i < p.hist.size(); ++i) rep.first_error_hist[i] += p.hist[i];
	}
	rep.bler = double(rep.block_errors) / double(trials);
	rep.std_error = std::sqrt(rep.bler * (1.0 - rep.bler) / double(trials));
	rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return rep;
}

// Fractions of coordinate channels already polarized to within delta of
// capacity 1 (high) or capacity 0 (low), for a BEC.
inline std::pair<double, double> polarization_stats(double eps, unsigned n, double delta) {
	if (!(delta > 0.0 && delta < 1.0)) throw validation_error("delta must lie in (0,1)");
	BecProfile p = bec_profile(eps, n);
	std::size_t high = 0, low = 0;
	for (double z : p.z) {
		if (z < delta) ++high;      // capacity above 1 - delta
		if (z > 1.0 - delta) ++low; // capacity below delta
	}
	double N = double(p.z.size());
	return {double(high) / N, double(low) / N};
}

struct RateReliabilityCurve {
	struct Point {
		double eta;
		double rate;    // |A(eta)| / N
		double bound;   // sum of z over A(eta)
		double largest; // max z over A(eta), 0 when empty
	};
	std::vector<Point> points;
};

inline RateReliabilityCurve rate_reliability_curve(const ReliabilityProfile& profile,
                                                   const std::vector<double>& eta_grid) {
	if (profile.z_hat.empty()) throw validation_error("empty reliability profile");
	std::vector<double> sorted = profile.z_hat;
	std::sort(sorted.begin(), sorted.end());
	std::vector<double> prefix(sorted.size() + 1, 0.0);
	for (std::size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];

	RateReliabilityCurve curve;
	curve.points.reserve(eta_grid.size());
	for (double eta : eta_grid) {
		auto it = std::lower_bound(sorted.begin(), sorted.end(), eta);
		std::size_t count = std::size_t(it - sorted.begin());
		curve.points.push_back({eta, double(count) / double(sorted.size()), prefix[count],
		                        count ? sorted[count - 1] : 0.0});
	}
	return curve;
}

// Union bound at a fixed rate: sum of the floor(R*N) smallest estimates.
inline double bound_sum_at_rate(const ReliabilityProfile& profile, double rate) {
	std::vector<double> sorted = profile.z_hat;
	std::sort(sorted.begin(), sorted.end());
	std::size_t K = std::size_t(rate * double(sorted.size()));
	return std::accumulate(sorted.begin(), sorted.begin() + std::min(K, sorted.size()), 0.0);
}

// Paired comparison of the polar and row-weight rules on one BEC, with
// common channel randomness (identical seed and draw streams).
inline std::pair<TrialReport, TrialReport> rm_vs_polar(double eps, unsigned n, std::size_t K,
                                                       std::uint64_t trials, std::uint64_t seed,
                                                       unsigned threads = 1) {
	Channel ch = Channel::bec(eps);
	CodeSpec polar_code = construct_polar(ch, n, K, "exact-bec");
	CodeSpec rm_code = construct_rm(n, K);
	rm_code.channel = ch;
	rm_code.profile = polar_code.profile; // exact per-index z, for the bound sums
	TrialReport pol = run_bler(polar_code, trials, seed, threads);
	TrialReport rm = run_bler(rm_code, trials, seed, threads);
	return {pol, rm};
}

struct ScalingRow {
	unsigned level = 0;
	std::size_t block_length = 0;
	double encode_ns_per_block = 0.0;
	double decode_ns_per_block = 0.0;
};

// Median per-block encode/decode wall times across seeded measurement
// repetitions. Uses the channel-independent row-weight rule at rate 1/2 so
// any channel can be probed; timings do not depend on the chosen set.
inline std::vector<ScalingRow> scaling_probe(const Channel& ch, const std::vector<unsigned>& levels,
                                             std::uint64_t reps, std::uint64_t seed) {
	if (reps < 1) throw validation_error("need at least one repetition");
	std::vector<ScalingRow> rows;
	for (unsigned n : levels) {
		std::size_t N = std::size_t(1) << n;
		CodeSpec code = construct_rm(n, N / 2);
		code.channel = ch;
		auto fmap = code.frozen_map();
		LlrWorkspace ws(n);
		BitVector u(N);
		std::vector<int> y(N);

		std::vector<double> enc_ns, dec_ns;
		for (std::uint64_t rep = 0; rep < reps; ++rep) {
			for (std::size_t i = 0; i < N; ++i)
				u.set(i, rng::stream_word(seed, rep, rng::kTagMessage | i) & 1u);

			// Encode timing over an inner loop; single blocks are too fast to clock.
			const int inner = 64;
			auto t0 = std::chrono::steady_clock::now();
			BitVector x;
			for (int k = 0; k < inner; ++k) x = encode(u);
			auto t1 = std::chrono::steady_clock::now();
			enc_ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / inner);

			for (std::size_t j = 0; j < N; ++j) {
				double r = rng::uniform01(rng::stream_word(seed, rep, rng::kTagChannel | j));
				y[j] = sample_output(ch.table, x.get(j), r);
			}
			ChannelObservation obs = llr_from_output(ch, y);
			auto t2 = std::chrono::steady_clock::now();
			ws.run(obs.llr, [&](std::size_t i, double llr) {
				return fmap[i] >= 0 ? int(fmap[i]) : (llr >= 0.0 ? 0 : 1);
			});
			auto t3 = std::chrono::steady_clock::now();
			dec_ns.push_back(std::chrono::duration<double, std::nano>(t3 - t2).count());
		}
		auto median = [](std::vector<double>& v) {
			std::sort(v.begin(), v.end());
			return v[v.size() / 2];
		};
		rows.push_back({n, N, median(enc_ns), median(dec_ns)});
	}
	return rows;
}

} // namespace polar
