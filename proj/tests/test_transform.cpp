#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracles.hpp"
#include "polar/transform.hpp"

using polar::BitVector;

TEST_CASE("bit reversal moves one-hot positions") {
	BitVector u{0, 1, 0, 0, 0, 0, 0, 0}; // bits 001 set
	BitVector expect{0, 0, 0, 0, 1, 0, 0, 0}; // bits 100
	CHECK(polar::bit_reverse_permute(u) == expect);
}

TEST_CASE("bit reversal permutes N=8 basis as the reversed-index table") {
	// (u_000..u_111) -> (u_000,u_100,u_010,u_110,u_001,u_101,u_011,u_111)
	const std::size_t source_of[8] = {0, 4, 2, 6, 1, 5, 3, 7};
	for (std::size_t i = 0; i < 8; ++i) {
		BitVector u(8);
		u.set(source_of[i], true);
		BitVector out = polar::bit_reverse_permute(u);
		for (std::size_t j = 0; j < 8; ++j) CHECK(out.get(j) == (j == i));
	}
}

TEST_CASE("bit reversal is an involution") {
	std::mt19937_64 gen(11);
	for (std::size_t n : {1u, 2u, 4u, 8u, 64u, 256u}) {
		BitVector u = oracles::random_bits(gen, n);
		CHECK(polar::bit_reverse_permute(polar::bit_reverse_permute(u)) == u);
	}
}

TEST_CASE("bit reversal rejects non-power-of-two lengths") {
	CHECK_THROWS_AS(polar::bit_reverse_permute(BitVector(3)), polar::invalid_length_error);
	CHECK_THROWS_AS(polar::bit_reverse_permute(BitVector(0)), polar::invalid_length_error);
	CHECK_THROWS_AS(polar::butterfly_transform(BitVector(12)), polar::invalid_length_error);
}

TEST_CASE("butterfly transform base cases") {
	CHECK(polar::butterfly_transform(BitVector{1}) == BitVector{1});
	CHECK(polar::butterfly_transform(BitVector{0}) == BitVector{0});
	// (u1, u2) -> (u1 xor u2, u2)
	CHECK(polar::butterfly_transform(BitVector{1, 0}) == BitVector{1, 0});
	CHECK(polar::butterfly_transform(BitVector{0, 1}) == BitVector{1, 1});
	CHECK(polar::butterfly_transform(BitVector{1, 1}) == BitVector{0, 1});
	// printed 4x4 kernel power
	CHECK(polar::butterfly_transform(BitVector{1, 1, 0, 0}) == BitVector{0, 1, 0, 0});
}

TEST_CASE("butterfly transform agrees with dense multiplication") {
	for (unsigned n : {1u, 2u, 3u}) {
		std::size_t N = std::size_t(1) << n;
		oracles::Matrix f = oracles::kernel_power(n);
		for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << N); ++bits) {
			BitVector u(N);
			for (std::size_t j = 0; j < N; ++j) u.set(j, (bits >> j) & 1u);
			CHECK(polar::butterfly_transform(u) == oracles::mat_vec(u, f));
		}
	}
	// random sampling at N=16
	std::mt19937_64 gen(5);
	oracles::Matrix f = oracles::kernel_power(4);
	for (int t = 0; t < 200; ++t) {
		BitVector u = oracles::random_bits(gen, 16);
		CHECK(polar::butterfly_transform(u) == oracles::mat_vec(u, f));
	}
}

TEST_CASE("butterfly transform handles word-sized strides") {
	std::mt19937_64 gen(17);
	for (unsigned n : {6u, 7u, 9u}) {
		std::size_t N = std::size_t(1) << n;
		oracles::Matrix f = oracles::kernel_power(n);
		for (int t = 0; t < 10; ++t) {
			BitVector u = oracles::random_bits(gen, N);
			CHECK(polar::butterfly_transform(u) == oracles::mat_vec(u, f));
		}
	}
}

TEST_CASE("encode reproduces the worked length-4 coset example") {
	// u_A = (1,1) on A = {2,4}, frozen part (1,0) on {1,3}: u = (1,1,0,1)
	CHECK(polar::encode(BitVector{1, 1, 0, 1}) == BitVector{1, 1, 0, 1});
	// split form: message part plus coset shift
	BitVector msg_only = polar::encode(BitVector{0, 1, 0, 1});
	BitVector coset = polar::encode(BitVector{1, 0, 0, 0});
	CHECK((msg_only ^ coset) == BitVector{1, 1, 0, 1});
}

TEST_CASE("encode maps zero to zero and is a linear involution") {
	std::mt19937_64 gen(23);
	CHECK(polar::encode(BitVector(8)) == BitVector(8));
	for (unsigned n : {1u, 3u, 6u, 10u}) {
		std::size_t N = std::size_t(1) << n;
		BitVector u = oracles::random_bits(gen, N);
		BitVector v = oracles::random_bits(gen, N);
		CHECK(polar::encode(polar::encode(u)) == u);
		CHECK(polar::encode(u ^ v) == (polar::encode(u) ^ polar::encode(v)));
	}
}

TEST_CASE("bit reversal commutes with the butterfly transform") {
	std::mt19937_64 gen(29);
	for (unsigned n : {2u, 3u, 5u, 8u}) {
		BitVector u = oracles::random_bits(gen, std::size_t(1) << n);
		CHECK(polar::bit_reverse_permute(polar::butterfly_transform(u)) ==
		      polar::butterfly_transform(polar::bit_reverse_permute(u)));
	}
}

TEST_CASE("generator rows match the dense matrix and the weight formula") {
	for (unsigned n : {0u, 1u, 2u, 3u}) {
		std::size_t N = std::size_t(1) << n;
		oracles::Matrix g = oracles::generator_matrix(n);
		for (std::size_t i = 0; i < N; ++i) {
			BitVector row = polar::generator_row(n, i);
			std::size_t weight = 0;
			for (std::size_t j = 0; j < N; ++j) {
				CHECK(int(row.get(j)) == g[i][j]);
				weight += std::size_t(g[i][j]);
			}
			CHECK(polar::row_weight(n, i) == weight);
		}
	}
}

TEST_CASE("row weight worked examples") {
	CHECK(polar::row_weight(2, 0b11) == 4); // row (1,1,1,1) of the length-4 matrix
	CHECK(polar::row_weight(5, 0) == 1);    // first row is a unit row
	CHECK(polar::row_weight(3, 0b011) == 4);
	BitVector row = polar::generator_row(3, 0b011);
	CHECK(row.popcount() == 4);
	CHECK_THROWS_AS(polar::row_weight(3, 8), polar::validation_error);
}

TEST_CASE("row weight multiset equals the weight-formula multiset") {
	unsigned n = 4;
	std::map<std::uint64_t, int> from_rows, from_formula;
	for (std::uint64_t i = 0; i < 16; ++i) {
		from_rows[polar::generator_row(n, i).popcount()]++;
		from_formula[polar::row_weight(n, i)]++;
	}
	CHECK(from_rows == from_formula);
}
