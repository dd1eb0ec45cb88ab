#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polar/construction.hpp"
#include "polar/decoder.hpp"
#include "polar/synthesis.hpp"

using namespace polar;

namespace {

CodeSpec bec_code_n3_k4() {
	return construct_polar(Channel::bec(0.5), 3, 4, "exact-bec");
}

// Decision statistics under genie priors, via the workspace.
std::vector<double> genie_llrs(const Channel& ch, unsigned n, const BitVector& u,
                               const std::vector<int>& y) {
	LlrWorkspace ws(n);
	CodeSpec dummy;
	dummy.N = std::size_t(1) << n;
	dummy.K = 0;
	dummy.frozen_values = BitVector(dummy.N);
	GenieTrace tr = genie_trace(dummy, llr_from_output(ch, y), u, ws);
	return tr.llr;
}

} // namespace

TEST_CASE("channel statistics from output symbols") {
	Channel bec = Channel::bec(0.5);
	ChannelObservation obs = llr_from_output(bec, std::vector<int>{kBecSymZero, kBecSymErase, kBecSymOne});
	REQUIRE(obs.size() == 3);
	CHECK(std::isinf(obs.llr[0]));
	CHECK(obs.llr[0] > 0.0);
	CHECK(obs.llr[1] == 0.0);
	CHECK(std::isinf(obs.llr[2]));
	CHECK(obs.llr[2] < 0.0);

	Channel bsc = Channel::bsc(0.11);
	ChannelObservation o2 = llr_from_output(bsc, std::vector<int>{0});
	CHECK(o2.llr[0] == Catch::Approx(std::log(0.89 / 0.11)).margin(1e-12));

	DmcTable flat{{0.5, 0.5}, {0.5, 0.5}};
	Channel cf = Channel::from_table(flat);
	CHECK(llr_from_output(cf, std::vector<int>{1}).llr[0] == 0.0);

	CHECK_THROWS_AS(llr_from_output(bsc, std::vector<int>{2}), validation_error);
}

TEST_CASE("log-domain combines handle certainty and erasures") {
	double inf = std::numeric_limits<double>::infinity();
	CHECK(llr_check(inf, 3.0) == 3.0);
	CHECK(llr_check(-inf, 3.0) == -3.0);
	CHECK(llr_check(2.0, -inf) == -2.0);
	CHECK(llr_check(inf, inf) == inf);
	CHECK(llr_check(inf, -inf) == -inf);
	CHECK(llr_check(0.0, 5.0) == Catch::Approx(0.0).margin(1e-15));
	// exact value against the probability-domain formula
	double a = 1.3, b = -0.4;
	double ref = std::log((1.0 + std::exp(a + b)) / (std::exp(a) + std::exp(b)));
	CHECK(llr_check(a, b) == Catch::Approx(ref).margin(1e-14));

	CHECK(llr_var(inf, -inf, 0) == 0.0);
	CHECK(llr_var(inf, -inf, 1) == -inf);
	CHECK(llr_var(2.0, 3.0, 1) == 1.0);
}

TEST_CASE("noiseless transmission decodes exactly") {
	std::mt19937_64 gen(3);
	Channel clean = Channel::bec(0.0);
	for (unsigned n : {1u, 3u, 5u}) {
		std::size_t N = std::size_t(1) << n;
		CodeSpec code = construct_polar(clean, n, N / 2, "exact-bec");
		LlrWorkspace ws(n);
		for (int t = 0; t < 8; ++t) {
			BitVector msg = oracles::random_bits(gen, code.K);
			BitVector u = code.assemble(msg);
			BitVector x = encode(u);
			std::vector<int> y(N);
			for (std::size_t j = 0; j < N; ++j) y[j] = x.get(j) ? kBecSymOne : kBecSymZero;
			ScResult res = sc_decode(code, llr_from_output(clean, y), ws);
			CHECK(res.u_hat == u);
			CHECK(res.x_hat == x);
		}
	}
}

TEST_CASE("length-2 decode follows the hand-derived statistic") {
	// frozen u_1 = 0, information index 2, crossover 0.11, received (0,0)
	CodeSpec code;
	code.N = 2;
	code.K = 1;
	code.info_set = {1};
	code.frozen_values = BitVector{0};
	code.channel = Channel::bsc(0.11);
	code.profile.z_hat = {0.9, 0.1}; // placeholder profile consistent with the selection
	code.method = "exact-table";

	LlrWorkspace ws(1);
	ChannelObservation obs = llr_from_output(*code.channel, std::vector<int>{0, 0});
	ScResult res = sc_decode(code, obs, ws);
	CHECK(res.u_hat.get(0) == false);
	CHECK(res.u_hat.get(1) == false);

	// the index-2 statistic is the plain sum of the two per-symbol statistics
	BitVector u{0, 0};
	auto stats = genie_llrs(*code.channel, 1, u, {0, 0});
	CHECK(stats[1] == Catch::Approx(2.0 * std::log(0.89 / 0.11)).margin(1e-12));
}

TEST_CASE("single erasures are always recovered at length 8") {
	CodeSpec code = bec_code_n3_k4();
	REQUIRE(code.info_set == std::vector<std::uint32_t>{3, 5, 6, 7});
	Channel bec = Channel::bec(0.5);
	LlrWorkspace ws(3);
	DmcTable w = bec.table;
	for (std::uint64_t m = 0; m < 16; ++m) {
		BitVector msg(4);
		for (std::size_t j = 0; j < 4; ++j) msg.set(j, (m >> j) & 1u);
		BitVector u = code.assemble(msg);
		BitVector x = encode(u);
		for (std::size_t erase = 0; erase < 8; ++erase) {
			std::vector<int> y(8);
			for (std::size_t j = 0; j < 8; ++j)
				y[j] = j == erase ? kBecSymErase : (x.get(j) ? kBecSymOne : kBecSymZero);
			ScResult res = sc_decode(code, llr_from_output(bec, y), ws);
			CHECK(res.u_hat == u);

			// the exhaustive maximum-likelihood decision agrees
			BitVector map_msg;
			int maximizers = oracles::map_decode(w, y, 4, [&](const BitVector& mm) {
				return encode(code.assemble(mm));
			}, map_msg);
			CHECK(maximizers == 1);
			CHECK(map_msg == msg);
		}
	}
}

TEST_CASE("decision statistics match the literal ratio recursion") {
	std::mt19937_64 gen(19);
	Channel bsc = Channel::bsc(0.1);
	for (unsigned n : {1u, 2u, 3u}) {
		std::size_t N = std::size_t(1) << n;
		for (int t = 0; t < 10; ++t) {
			BitVector u = oracles::random_bits(gen, N);
			BitVector x = encode(u);
			std::vector<int> y(N);
			for (std::size_t j = 0; j < N; ++j) {
				bool flip = (gen() % 10) == 0;
				y[j] = int(x.get(j)) ^ int(flip);
			}
			std::vector<double> chan_lr(N);
			for (std::size_t j = 0; j < N; ++j)
				chan_lr[j] = y[j] == 0 ? 0.9 / 0.1 : 0.1 / 0.9;

			auto stats = genie_llrs(bsc, n, u, y);
			std::vector<int> prior;
			for (std::size_t i = 0; i < N; ++i) {
				double ref = oracles::lr_recursive(chan_lr, 0, N, prior);
				CHECK(std::exp(stats[i]) == Catch::Approx(ref).epsilon(1e-9));
				prior.push_back(int(u.get(i)));
			}
		}
	}
}

TEST_CASE("decision statistics match the split-channel tables") {
	std::mt19937_64 gen(29);
	Channel bsc = Channel::bsc(0.1);
	for (unsigned n : {1u, 2u, 3u}) {
		std::size_t N = std::size_t(1) << n;
		std::vector<SplitChannel> tables;
		for (std::uint64_t i = 1; i <= N; ++i) tables.push_back(brute_force_split(bsc.table, n, i));
		for (int t = 0; t < 10; ++t) {
			BitVector u = oracles::random_bits(gen, N);
			BitVector x = encode(u);
			std::vector<int> y(N);
			for (std::size_t j = 0; j < N; ++j) y[j] = int(x.get(j)) ^ int((gen() % 10) == 0);
			auto stats = genie_llrs(bsc, n, u, y);
			for (std::size_t i = 0; i < N; ++i) {
				// canonical composite symbol of (y, u_1^{i-1})
				std::size_t y_id = 0;
				for (std::size_t j = 0; j < N; ++j) y_id = y_id * 2 + std::size_t(y[j]);
				std::size_t prefix = 0;
				for (std::size_t j = 0; j < i; ++j) prefix = prefix * 2 + std::size_t(u.get(j));
				std::size_t sym = (y_id << i) | prefix;
				double ref = std::log(tables[i].table.p0[sym] / tables[i].table.p1[sym]);
				CHECK(stats[i] == Catch::Approx(ref).epsilon(1e-9).margin(1e-9));
			}
		}
	}
}

TEST_CASE("node evaluation count is exactly N(1+log2 N)") {
	std::mt19937_64 gen(31);
	Channel bec = Channel::bec(0.5);
	for (unsigned n = 1; n <= 8; ++n) {
		std::size_t N = std::size_t(1) << n;
		CodeSpec code = construct_polar(bec, n, N / 2, "exact-bec");
		LlrWorkspace ws(n);
		std::vector<int> y(N);
		for (std::size_t j = 0; j < N; ++j) y[j] = int(gen() % 3);
		sc_decode(code, llr_from_output(bec, y), ws);
		CHECK(ws.op_count() == std::uint64_t(N) * (1 + n));
	}
}

TEST_CASE("decoding is deterministic") {
	std::mt19937_64 gen(37);
	Channel bec = Channel::bec(0.5);
	CodeSpec code = construct_polar(bec, 5, 16, "exact-bec");
	std::vector<int> y(32);
	for (auto& s : y) s = int(gen() % 3);
	ChannelObservation obs = llr_from_output(bec, y);
	LlrWorkspace w1(5), w2(5);
	ScResult a = sc_decode(code, obs, w1);
	ScResult b = sc_decode(code, obs, w2);
	ScResult c = sc_decode(code, obs, w1); // reused workspace
	CHECK(a.u_hat == b.u_hat);
	CHECK(a.u_hat == c.u_hat);
}

TEST_CASE("observation validation") {
	CodeSpec code = bec_code_n3_k4();
	LlrWorkspace ws(3);
	ChannelObservation short_obs;
	short_obs.llr = {0.0, 1.0};
	CHECK_THROWS_AS(sc_decode(code, short_obs, ws), invalid_length_error);
	ChannelObservation bad;
	bad.llr.assign(8, 0.0);
	bad.llr[3] = std::numeric_limits<double>::quiet_NaN();
	CHECK_THROWS_AS(sc_decode(code, bad, ws), validation_error);
}

TEST_CASE("genie trace flags nothing on a clean capture") {
	CodeSpec code = bec_code_n3_k4();
	Channel bec = Channel::bec(0.5);
	LlrWorkspace ws(3);
	BitVector u = code.assemble(BitVector{1, 0, 1, 1});
	BitVector x = encode(u);
	std::vector<int> y(8);
	for (std::size_t j = 0; j < 8; ++j) y[j] = x.get(j) ? kBecSymOne : kBecSymZero;
	GenieTrace tr = genie_trace(code, llr_from_output(bec, y), u, ws);
	for (std::size_t i = 0; i < 8; ++i) CHECK(tr.flagged[i] == 0);
}

TEST_CASE("genie flags coincide with erased coordinate-channel outputs") {
	// Enumerate every erasure pattern and block input at length 4; the flag
	// at index i must equal the erasure status of the composite output
	// (y, u_1^{i-1}) under the exact coordinate-channel table.
	Channel bec = Channel::bec(0.5);
	std::vector<SplitChannel> tables;
	for (std::uint64_t i = 1; i <= 4; ++i) tables.push_back(brute_force_split(bec.table, 2, i));
	LlrWorkspace ws(2);
	CodeSpec dummy;
	dummy.N = 4;
	dummy.K = 0;
	dummy.frozen_values = BitVector(4);

	for (std::uint64_t ubits = 0; ubits < 16; ++ubits) {
		BitVector u(4);
		for (std::size_t j = 0; j < 4; ++j) u.set(j, (ubits >> j) & 1u);
		BitVector x = encode(u);
		for (std::uint64_t pat = 0; pat < 16; ++pat) {
			std::vector<int> y(4);
			for (std::size_t j = 0; j < 4; ++j)
				y[j] = (pat >> j) & 1u ? kBecSymErase : (x.get(j) ? kBecSymOne : kBecSymZero);
			GenieTrace tr = genie_trace(dummy, llr_from_output(bec, y), u, ws);
			for (std::size_t i = 0; i < 4; ++i) {
				std::size_t y_id = 0;
				for (std::size_t j = 0; j < 4; ++j) y_id = y_id * 3 + std::size_t(y[j]);
				std::size_t prefix = 0;
				for (std::size_t j = 0; j < i; ++j) prefix = prefix * 2 + std::size_t(u.get(j));
				std::size_t sym = (y_id << i) | prefix;
				double p0 = tables[i].table.p0[sym], p1 = tables[i].table.p1[sym];
				bool erased = p0 > 0.0 && p1 > 0.0 && std::abs(p0 - p1) < 1e-15;
				CHECK(bool(tr.flagged[i]) == erased);
			}
		}
	}
}

TEST_CASE("a block error implies a genie flag at the first wrong index") {
	std::mt19937_64 gen(43);
	Channel bec = Channel::bec(0.5);
	CodeSpec code = construct_polar(bec, 4, 8, "exact-bec");
	LlrWorkspace ws(4);
	int block_errors = 0;
	for (int t = 0; t < 1000; ++t) {
		BitVector msg = oracles::random_bits(gen, 8);
		BitVector u = code.assemble(msg);
		BitVector x = encode(u);
		std::vector<int> y(16);
		for (std::size_t j = 0; j < 16; ++j) {
			if (double(gen() % 1000) < 500.0)
				y[j] = kBecSymErase;
			else
				y[j] = x.get(j) ? kBecSymOne : kBecSymZero;
		}
		ChannelObservation obs = llr_from_output(bec, y);
		ScResult res = sc_decode(code, obs, ws);
		if (res.u_hat == u) continue;
		++block_errors;
		std::size_t first = 16;
		for (std::uint32_t i : code.info_set)
			if (res.u_hat.get(i) != u.get(i)) {
				first = i;
				break;
			}
		REQUIRE(first < 16);
		GenieTrace tr = genie_trace(code, obs, u, ws);
		CHECK(tr.flagged[first] == 1);
	}
	CHECK(block_errors > 0); // half the symbols erased: errors must occur
}
