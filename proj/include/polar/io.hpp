// File formats: channel descriptor text, bit files (ASCII and packed),
// channel-symbol files, the code-spec JSON document, and the CSV emitters.
// Every writer goes through atomic_write so partially written outputs never
// land under the target name.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/channel.hpp"
#include "polar/code_spec.hpp"
#include "polar/simulate.hpp"
#include "polar/synthesis.hpp"

namespace polar::io {

inline std::string g17(double v) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
	std::filesystem::path tmp = path;
	tmp += ".tmp";
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out) throw validation_error("cannot open " + tmp.string() + " for writing");
		out.write(content.data(), std::streamsize(content.size()));
		if (!out) throw validation_error("short write to " + tmp.string());
	}
	std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw validation_error("cannot open " + path.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

// ---- channel descriptor text: "bec:0.5" | "bsc:0.11" | "table:<path>" ----

inline Channel parse_channel(const std::string& text) {
	auto colon = text.find(':');
	if (colon == std::string::npos) throw validation_error("channel descriptor needs kind:value");
	std::string kind = text.substr(0, colon);
	std::string rest = text.substr(colon + 1);
	if (kind == "bec" || kind == "bsc") {
		std::size_t used = 0;
		double p = std::stod(rest, &used);
		if (used != rest.size()) throw validation_error("bad channel parameter: " + rest);
		Channel c = kind == "bec" ? Channel::bec(p) : Channel::bsc(p);
		c.spec_text = text; // keep the caller's spelling for round trips
		return c;
	}
	if (kind == "table") {
		nlohmann::json j = nlohmann::json::parse(read_file(rest));
		DmcTable t;
		t.p0 = j.at("p0").get<std::vector<double>>();
		t.p1 = j.at("p1").get<std::vector<double>>();
		return Channel::from_table(std::move(t), text);
	}
	throw validation_error("unknown channel kind: " + kind);
}

// ---- bit files ----
// ASCII: one block per line of '0'/'1'.
// Packed: 8-byte little-endian bits-per-block header, then each block as
// ceil(bits/8) bytes, least significant bit first.

inline std::string write_bits_ascii(const std::vector<BitVector>& blocks) {
	std::string out;
	for (const auto& b : blocks) {
		out += b.to_string();
		out += '\n';
	}
	return out;
}

inline std::vector<BitVector> read_bits_ascii(const std::string& content) {
	std::vector<BitVector> blocks;
	std::istringstream in(content);
	std::string line;
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r') line.pop_back();
		if (line.empty()) continue;
		blocks.push_back(BitVector::from_string(line));
	}
	return blocks;
}

inline std::string write_bits_packed(const std::vector<BitVector>& blocks) {
	if (blocks.empty()) throw validation_error("packed bit file needs at least one block");
	std::uint64_t bits = blocks.front().size();
	std::string out;
	for (int k = 0; k < 8; ++k) out += char((bits >> (8 * k)) & 0xff);
	std::size_t bytes = std::size_t((bits + 7) / 8);
	for (const auto& b : blocks) {
		if (b.size() != bits) throw validation_error("packed bit file blocks must share one length");
		for (std::size_t k = 0; k < bytes; ++k) {
			unsigned byte = 0;
			for (unsigned j = 0; j < 8; ++j) {
				std::size_t i = 8 * k + j;
				if (i < bits && b.get(i)) byte |= 1u << j;
			}
			out += char(byte);
		}
	}
	return out;
}

inline std::vector<BitVector> read_bits_packed(const std::string& content) {
	if (content.size() < 8) throw validation_error("packed bit file too short for header");
	std::uint64_t bits = 0;
	for (int k = 0; k < 8; ++k) bits |= std::uint64_t(std::uint8_t(content[std::size_t(k)])) << (8 * k);
	if (bits == 0) throw validation_error("packed bit file declares empty blocks");
	std::size_t bytes = std::size_t((bits + 7) / 8);
	std::size_t payload = content.size() - 8;
	if (payload == 0 || payload % bytes != 0)
		throw validation_error("packed bit file payload is not a whole number of blocks");
	std::vector<BitVector> blocks;
	for (std::size_t off = 8; off < content.size(); off += bytes) {
		BitVector b(bits);
		for (std::size_t i = 0; i < bits; ++i)
			if ((std::uint8_t(content[off + i / 8]) >> (i % 8)) & 1u) b.set(i, true);
		blocks.push_back(std::move(b));
	}
	return blocks;
}

// ---- channel symbol files ----
// One block per line, space-separated integer symbol ids. For a BEC the
// file convention is 0, 1, 2 = erasure, which differs from the internal
// table order (0, erasure = 1, 2); the reader and writer translate.

inline int symbol_file_to_internal(const Channel& ch, int file_sym) {
	if (ch.kind == Channel::Kind::bec) {
		if (file_sym == 0) return kBecSymZero;
		if (file_sym == 1) return kBecSymOne;
		if (file_sym == 2) return kBecSymErase;
		throw validation_error("bec symbol file may contain only 0, 1, 2");
	}
	return file_sym;
}

inline int symbol_internal_to_file(const Channel& ch, int sym) {
	if (ch.kind == Channel::Kind::bec) {
		if (sym == kBecSymZero) return 0;
		if (sym == kBecSymOne) return 1;
		return 2;
	}
	return sym;
}

inline std::vector<std::vector<int>> read_symbols(const std::string& content, const Channel& ch) {
	std::vector<std::vector<int>> blocks;
	std::istringstream in(content);
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		std::istringstream ls(line);
		std::vector<int> row;
		int v;
		while (ls >> v) row.push_back(symbol_file_to_internal(ch, v));
		if (!row.empty()) blocks.push_back(std::move(row));
	}
	return blocks;
}

inline std::string write_symbols(const std::vector<std::vector<int>>& blocks, const Channel& ch) {
	std::string out;
	for (const auto& row : blocks) {
		for (std::size_t j = 0; j < row.size(); ++j) {
			if (j) out += ' ';
			out += std::to_string(symbol_internal_to_file(ch, row[j]));
		}
		out += '\n';
	}
	return out;
}

// ---- code spec JSON ----
// Fixed field order, reals at 17 significant digits, indices 1-based.

inline std::string write_code_spec(const CodeSpec& spec) {
	std::string js = "{\"version\":1";
	js += ",\"N\":" + std::to_string(spec.N);
	js += ",\"K\":" + std::to_string(spec.K);
	js += ",\"channel\":\"" + (spec.channel ? spec.channel->text() : std::string()) + "\"";
	js += ",\"method\":\"" + spec.method + "\"";
	js += ",\"info_set\":[";
	for (std::size_t j = 0; j < spec.info_set.size(); ++j) {
		if (j) js += ',';
		js += std::to_string(spec.info_set[j] + 1);
	}
	js += "],\"frozen_values\":\"" + spec.frozen_values.to_string() + "\"";
	js += ",\"z_hat\":[";
	for (std::size_t j = 0; j < spec.profile.z_hat.size(); ++j) {
		if (j) js += ',';
		js += g17(spec.profile.z_hat[j]);
	}
	js += "],\"samples\":" + std::to_string(spec.profile.samples);
	js += ",\"seed\":" + std::to_string(spec.seed);
	js += "}\n";
	return js;
}

inline CodeSpec read_code_spec(const std::string& content) {
	nlohmann::json j = nlohmann::json::parse(content);
	if (j.at("version").get<int>() != 1) throw validation_error("unsupported code spec version");
	CodeSpec spec;
	spec.N = j.at("N").get<std::size_t>();
	spec.K = j.at("K").get<std::size_t>();
	std::string chan = j.at("channel").get<std::string>();
	if (!chan.empty()) spec.channel = parse_channel(chan);
	spec.method = j.at("method").get<std::string>();
	for (std::uint64_t i : j.at("info_set").get<std::vector<std::uint64_t>>()) {
		if (i < 1 || i > spec.N) throw validation_error("info_set index out of range");
		spec.info_set.push_back(std::uint32_t(i - 1));
	}
	spec.frozen_values = BitVector::from_string(j.at("frozen_values").get<std::string>());
	spec.profile.z_hat = j.at("z_hat").get<std::vector<double>>();
	spec.profile.method = spec.method;
	spec.profile.samples = j.at("samples").get<std::uint64_t>();
	spec.seed = j.at("seed").get<std::uint64_t>();
	spec.validate();
	return spec;
}

// ---- CSV emitters (header row mandatory, '.' decimal point) ----

inline std::string polarization_csv(const BecProfile& p) {
	std::string out = "index,z,i\n";
	for (std::size_t j = 0; j < p.z.size(); ++j)
		out += std::to_string(j + 1) + "," + g17(p.z[j]) + "," + g17(p.cap[j]) + "\n";
	return out;
}

inline std::string curve_csv(const RateReliabilityCurve& c) {
	std::string out = "eta,R,B,L\n";
	for (const auto& pt : c.points)
		out += g17(pt.eta) + "," + g17(pt.rate) + "," + g17(pt.bound) + "," + g17(pt.largest) + "\n";
	return out;
}

inline std::string bler_row(const TrialReport& r) {
	return std::to_string(r.trials) + "," + std::to_string(r.block_errors) + "," + g17(r.bler) +
	       "," + g17(r.std_error) + "," + g17(r.bound_sum);
}

inline std::string bler_csv(const TrialReport& r) {
	return "trials,errors,bler,stderr,bound_sum\n" + bler_row(r) + "\n";
}

inline std::string compare_csv(const TrialReport& polar_rep, const TrialReport& rm_rep) {
	return "code,trials,errors,bler,stderr,bound_sum\npolar," + bler_row(polar_rep) + "\nrm," +
	       bler_row(rm_rep) + "\n";
}

inline std::string hist_csv(const TrialReport& r) {
	std::string out = "index,first_errors\n";
	for (std::size_t i = 0; i < r.first_error_hist.size(); ++i)
		out += std::to_string(i + 1) + "," + std::to_string(r.first_error_hist[i]) + "\n";
	return out;
}

inline std::string bench_csv(const std::vector<ScalingRow>& rows) {
	std::string out = "n,N,encode_ns_per_block,decode_ns_per_block\n";
	for (const auto& r : rows)
		out += std::to_string(r.level) + "," + std::to_string(r.block_length) + "," +
		       g17(r.encode_ns_per_block) + "," + g17(r.decode_ns_per_block) + "\n";
	return out;
}

} // namespace polar::io
