// Finite binary-input channel models and their scalar parameters.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "polar/errors.hpp"

namespace polar {

// Output symbol ids of the materialized BEC table.
inline constexpr int kBecSymZero = 0;
inline constexpr int kBecSymErase = 1;
inline constexpr int kBecSymOne = 2;

// Explicit binary-input DMC: two probability rows over y = 0 .. y_count-1.
struct DmcTable {
	std::vector<double> p0; // W(y|0)
	std::vector<double> p1; // W(y|1)

	std::size_t y_count() const { return p0.size(); }

	void validate(double tol = 1e-12) const {
		if (p0.empty() || p0.size() != p1.size())
			throw validation_error("transition table needs two equal-length non-empty rows");
		for (const auto* row : {&p0, &p1}) {
			double sum = 0.0;
			for (double v : *row) {
				if (!(v >= 0.0)) throw validation_error("negative or NaN transition probability");
				sum += v;
			}
			if (std::abs(sum - 1.0) > tol)
				throw validation_error("transition row sums to " + std::to_string(sum) + ", expected 1");
		}
	}
};

// Symmetric capacity I(W) in bits, base-2 logs, uniform inputs.
// Terms with W(y|x) = 0 contribute nothing.
inline double symmetric_capacity(const DmcTable& w) {
	w.validate();
	double cap = 0.0;
	for (std::size_t y = 0; y < w.y_count(); ++y) {
		double q = 0.5 * (w.p0[y] + w.p1[y]);
		if (w.p0[y] > 0.0) cap += 0.5 * w.p0[y] * std::log2(w.p0[y] / q);
		if (w.p1[y] > 0.0) cap += 0.5 * w.p1[y] * std::log2(w.p1[y] / q);
	}
	return std::clamp(cap, 0.0, 1.0);
}

// Bhattacharyya parameter Z(W) = sum_y sqrt(W(y|0) W(y|1)).
inline double bhattacharyya(const DmcTable& w) {
	w.validate();
	double z = 0.0;
	for (std::size_t y = 0; y < w.y_count(); ++y) z += std::sqrt(w.p0[y] * w.p1[y]);
	return std::clamp(z, 0.0, 1.0);
}

// Variational distance between the two rows.
inline double variational_distance(const DmcTable& w) {
	w.validate();
	double d = 0.0;
	for (std::size_t y = 0; y < w.y_count(); ++y) d += std::abs(w.p0[y] - w.p1[y]);
	return std::clamp(0.5 * d, 0.0, 1.0);
}

struct ChannelParams {
	double i; // symmetric capacity, bits
	double z; // Bhattacharyya parameter
	double d; // variational distance
};

// Computes all three scalars and asserts the bound chain
//   log2(2/(1+z)) <= i <= d <= sqrt(1-z^2)   and   i + z >= 1.
inline ChannelParams check_bounds(const DmcTable& w, double tol = 1e-9) {
	ChannelParams p{symmetric_capacity(w), bhattacharyya(w), variational_distance(w)};
	double lower = std::log2(2.0 / (1.0 + p.z));
	double upper = std::sqrt(std::max(0.0, 1.0 - p.z * p.z));
	auto fail = [&](const char* which) {
		char buf[160];
		std::snprintf(buf, sizeof buf, "bound %s violated: i=%.17g z=%.17g d=%.17g", which, p.i, p.z, p.d);
		throw consistency_error(buf);
	};
	if (p.i < lower - tol) fail("i >= log2(2/(1+z))");
	if (p.i > upper + tol) fail("i <= sqrt(1-z^2)");
	if (p.i + p.z < 1.0 - tol) fail("i + z >= 1");
	if (p.i > p.d + tol) fail("i <= d");
	if (p.d > upper + tol) fail("d <= sqrt(1-z^2)");
	return p;
}

// Mixture convexity of Z: lhs = sum q_j Z(W_j), rhs = Z(sum q_j W_j).
// Contract: lhs <= rhs (+1e-12 slack).
inline std::pair<double, double> z_convexity_probe(const std::vector<DmcTable>& ws,
                                                   const std::vector<double>& q) {
	if (ws.empty() || ws.size() != q.size())
		throw validation_error("mixture needs matching channel and weight counts");
	std::size_t yc = ws.front().y_count();
	double qsum = 0.0, lhs = 0.0;
	DmcTable mix{std::vector<double>(yc, 0.0), std::vector<double>(yc, 0.0)};
	for (std::size_t j = 0; j < ws.size(); ++j) {
		if (ws[j].y_count() != yc) throw validation_error("mixture channels must share an output alphabet");
		if (!(q[j] >= 0.0)) throw validation_error("mixture weights must be non-negative");
		qsum += q[j];
		lhs += q[j] * bhattacharyya(ws[j]);
		for (std::size_t y = 0; y < yc; ++y) {
			mix.p0[y] += q[j] * ws[j].p0[y];
			mix.p1[y] += q[j] * ws[j].p1[y];
		}
	}
	if (std::abs(qsum - 1.0) > 1e-12) throw validation_error("mixture weights must sum to 1");
	return {lhs, bhattacharyya(mix)};
}

// Channel descriptor: a named built-in (bec/bsc) or an arbitrary table.
// The built-ins materialize as explicit tables so that every operation in
// the library runs off one representation.
struct Channel {
	enum class Kind { bec, bsc, table };

	Kind kind = Kind::table;
	double param = 0.0;     // erasure or crossover probability for built-ins
	std::string spec_text;  // descriptor text, preserved verbatim for round-trips
	DmcTable table;

	static Channel bec(double eps) {
		if (!(eps >= 0.0 && eps <= 1.0)) throw validation_error("erasure probability must be in [0,1]");
		Channel c;
		c.kind = Kind::bec;
		c.param = eps;
		c.table = DmcTable{{1.0 - eps, eps, 0.0}, {0.0, eps, 1.0 - eps}};
		c.spec_text = "bec:" + format_param(eps);
		return c;
	}

	static Channel bsc(double p) {
		if (!(p >= 0.0 && p <= 1.0)) throw validation_error("crossover probability must be in [0,1]");
		Channel c;
		c.kind = Kind::bsc;
		c.param = p;
		c.table = DmcTable{{1.0 - p, p}, {p, 1.0 - p}};
		c.spec_text = "bsc:" + format_param(p);
		return c;
	}

	static Channel from_table(DmcTable t, std::string text = {}) {
		t.validate();
		Channel c;
		c.kind = Kind::table;
		c.table = std::move(t);
		c.spec_text = std::move(text);
		return c;
	}

	bool builtin_symmetric() const { return kind != Kind::table; }

	const std::string& text() const { return spec_text; }

	static std::string format_param(double v) {
		char buf[40];
		std::snprintf(buf, sizeof buf, "%.17g", v);
		return buf;
	}
};

// Inverse-CDF draw of an output symbol for input x, from one uniform.
// Falls back to the last positive-probability symbol if rounding leaves
// the cumulative sum a hair short of 1.
inline int sample_output(const DmcTable& w, int x, double u01) {
	const auto& row = x ? w.p1 : w.p0;
	double acc = 0.0;
	int last_positive = 0;
	for (std::size_t y = 0; y < row.size(); ++y) {
		if (row[y] <= 0.0) continue;
		last_positive = int(y);
		acc += row[y];
		if (u01 < acc) return int(y);
	}
	return last_positive;
}

} // namespace polar
