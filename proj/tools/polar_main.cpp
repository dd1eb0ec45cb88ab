// Command-line front end. Every command echoes its fully-resolved
// configuration as one JSON line on standard error, writes output files
// atomically, and derives all randomness from --seed, so reruns are
// byte-identical.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polar/construction.hpp"
#include "polar/decoder.hpp"
#include "polar/io.hpp"
#include "polar/simulate.hpp"

namespace {

using nlohmann::ordered_json;

void echo_config(const ordered_json& cfg) { std::cerr << cfg.dump() << "\n"; }

std::string resolve_method(const polar::Channel& ch, unsigned n, const std::string& method) {
	if (method != "auto") return method;
	if (ch.kind == polar::Channel::Kind::bec) return "exact-bec";
	if (n <= 3) return "exact-table";
	return "monte-carlo";
}

std::vector<double> parse_double_list(const std::string& text) {
	std::vector<double> out;
	std::istringstream in(text);
	std::string item;
	while (std::getline(in, item, ',')) {
		if (item.empty()) continue;
		out.push_back(std::stod(item));
	}
	return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
	std::vector<unsigned> out;
	for (double v : parse_double_list(text)) out.push_back(unsigned(v));
	return out;
}

constexpr const char* kFormatsHelp = R"(File formats:
  message / codeword bit files (--format ascii, default):
      one block per line of '0'/'1', e.g. "0110" for K=4
  message / codeword bit files (--format packed):
      8-byte little-endian bits-per-block header, then each block as
      ceil(bits/8) bytes, least significant bit first
  received symbol files (decode --in):
      one block per line, space-separated integer symbol ids;
      for bec channels the ids are 0, 1, and 2 = erasure
      (e.g. "0 2 1 0" = received 0, erased, received 1, received 0),
      for bsc channels the ids are 0 and 1
  code spec JSON (construct --out, shared by encode/decode/simulate/curve):
      {"version":1,"N":8,"K":4,"channel":"bec:0.5","method":"exact-bec",
       "info_set":[4,6,7,8],"frozen_values":"0000","z_hat":[...],
       "samples":0,"seed":0}   (indices 1-based, reals %.17g)
  CSV outputs carry a header row and '.' decimal points:
      polarize: index,z,i    curve: eta,R,B,L
      simulate: trials,errors,bler,stderr,bound_sum
      compare-rm: code,trials,errors,bler,stderr,bound_sum
      bench: n,N,encode_ns_per_block,decode_ns_per_block
  channel descriptors: bec:0.5 | bsc:0.11 | table:<path to {"p0":[..],"p1":[..]}>
)";

} // namespace

int main(int argc, char** argv) {
	CLI::App app{std::string("polar coding toolkit\n\n") + kFormatsHelp};
	app.require_subcommand(1);

	// construct
	std::string c_channel, c_method = "auto", c_out;
	unsigned c_n = 0;
	std::uint64_t c_k = 0, c_samples = 0, c_seed = 0;
	bool c_random_frozen = false;
	auto* construct = app.add_subcommand("construct", "select an information set and write a code spec");
	construct->add_option("--channel", c_channel, "channel descriptor, e.g. bec:0.5")->required();
	construct->add_option("--n", c_n, "block length exponent; N = 2^n")->required();
	construct->add_option("--k", c_k, "information bits per block")->required();
	construct->add_option("--method", c_method, "auto|exact-bec|exact-table|monte-carlo");
	construct->add_option("--samples", c_samples, "monte-carlo sample count");
	construct->add_option("--seed", c_seed, "master seed");
	construct->add_flag("--random-frozen", c_random_frozen, "seeded random frozen vector instead of zeros");
	construct->add_option("--out", c_out, "code spec JSON path")->required();

	// encode
	std::string e_code, e_in, e_out, e_format = "ascii";
	auto* enc = app.add_subcommand("encode", "encode message bit file into codeword bit file");
	enc->add_option("--code", e_code, "code spec JSON")->required();
	enc->add_option("--in", e_in, "message bit file, K bits per block")->required();
	enc->add_option("--out", e_out, "codeword bit file, N bits per block")->required();
	enc->add_option("--format", e_format, "ascii|packed (both files)");

	// decode
	std::string d_code, d_in, d_out, d_format = "ascii";
	auto* dec = app.add_subcommand("decode", "successive-cancellation decode a symbol file");
	dec->add_option("--code", d_code, "code spec JSON")->required();
	dec->add_option("--in", d_in, "received symbol file, N ids per line")->required();
	dec->add_option("--out", d_out, "decoded message bit file, K bits per block")->required();
	dec->add_option("--format", d_format, "ascii|packed (output file)");

	// simulate
	std::string s_code, s_out, s_hist_out;
	std::uint64_t s_trials = 0, s_seed = 0;
	unsigned s_threads = 1;
	auto* sim = app.add_subcommand("simulate", "seeded block-error-rate run for a code spec");
	sim->add_option("--code", s_code, "code spec JSON")->required();
	sim->add_option("--trials", s_trials, "number of transmissions")->required();
	sim->add_option("--seed", s_seed, "master seed");
	sim->add_option("--threads", s_threads, "worker count (does not affect results)");
	sim->add_option("--out", s_out, "report CSV path")->required();
	sim->add_option("--hist-out", s_hist_out, "optional per-index first-error histogram CSV");

	// polarize
	std::string p_channel, p_out;
	unsigned p_n = 0;
	double p_delta = 0.0;
	auto* pol = app.add_subcommand("polarize", "per-index z and capacity of a bec (figure data)");
	pol->add_option("--channel", p_channel, "bec descriptor, e.g. bec:0.5")->required();
	pol->add_option("--n", p_n, "block length exponent")->required();
	pol->add_option("--out", p_out, "CSV path (index,z,i)")->required();
	pol->add_option("--delta", p_delta, "also print frac_high,frac_low for this delta");

	// curve
	std::string v_code, v_channel, v_eta, v_out;
	unsigned v_n = 0;
	auto* cur = app.add_subcommand("curve", "rate/reliability sweep R(eta), B(eta), L(eta)");
	cur->add_option("--code", v_code, "code spec JSON (uses its stored profile)");
	cur->add_option("--channel", v_channel, "bec descriptor (alternative to --code)");
	cur->add_option("--n", v_n, "block length exponent (with --channel)");
	cur->add_option("--eta", v_eta, "comma-separated thresholds; default: all distinct z values and 1");
	cur->add_option("--out", v_out, "CSV path (eta,R,B,L)")->required();

	// compare-rm
	std::string r_channel, r_out;
	unsigned r_n = 0, r_threads = 1;
	std::uint64_t r_k = 0, r_trials = 0, r_seed = 0;
	auto* cmp = app.add_subcommand("compare-rm", "polar vs row-weight rule, common channel draws");
	cmp->add_option("--channel", r_channel, "bec descriptor")->required();
	cmp->add_option("--n", r_n, "block length exponent")->required();
	cmp->add_option("--k", r_k, "information bits per block")->required();
	cmp->add_option("--trials", r_trials, "number of transmissions")->required();
	cmp->add_option("--seed", r_seed, "master seed");
	cmp->add_option("--threads", r_threads, "worker count");
	cmp->add_option("--out", r_out, "CSV path")->required();

	// bench
	std::string b_channel, b_levels, b_out;
	std::uint64_t b_reps = 0, b_seed = 0;
	auto* ben = app.add_subcommand("bench", "encode/decode wall time per block across sizes");
	ben->add_option("--channel", b_channel, "channel descriptor")->required();
	ben->add_option("--n-list", b_levels, "comma-separated exponents, ascending")->required();
	ben->add_option("--reps", b_reps, "measurement repetitions per size")->required();
	ben->add_option("--seed", b_seed, "master seed");
	ben->add_option("--out", b_out, "CSV path")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		std::cerr << "usage error: " << e.what() << "\n";
		return 1;
	}

	try {
		if (*construct) {
			polar::Channel ch = polar::io::parse_channel(c_channel);
			std::string method = resolve_method(ch, c_n, c_method);
			echo_config({{"command", "construct"}, {"channel", c_channel}, {"n", c_n}, {"k", c_k},
			             {"method", method}, {"samples", c_samples}, {"seed", c_seed},
			             {"random_frozen", c_random_frozen}, {"out", c_out}});
			polar::CodeSpec spec =
			    polar::construct_polar(ch, c_n, c_k, method, c_samples, c_seed, c_random_frozen);
			polar::io::atomic_write(c_out, polar::io::write_code_spec(spec));
		} else if (*enc) {
			echo_config({{"command", "encode"}, {"code", e_code}, {"in", e_in}, {"out", e_out},
			             {"format", e_format}});
			polar::CodeSpec spec = polar::io::read_code_spec(polar::io::read_file(e_code));
			std::string raw = polar::io::read_file(e_in);
			auto msgs = e_format == "packed" ? polar::io::read_bits_packed(raw)
			                                 : polar::io::read_bits_ascii(raw);
			std::vector<polar::BitVector> codewords;
			codewords.reserve(msgs.size());
			for (const auto& m : msgs) codewords.push_back(polar::encode(spec.assemble(m)));
			polar::io::atomic_write(e_out, e_format == "packed"
			                                   ? polar::io::write_bits_packed(codewords)
			                                   : polar::io::write_bits_ascii(codewords));
		} else if (*dec) {
			echo_config({{"command", "decode"}, {"code", d_code}, {"in", d_in}, {"out", d_out},
			             {"format", d_format}});
			polar::CodeSpec spec = polar::io::read_code_spec(polar::io::read_file(d_code));
			if (!spec.channel) throw polar::validation_error("code spec lacks a channel descriptor");
			auto blocks = polar::io::read_symbols(polar::io::read_file(d_in), *spec.channel);
			polar::LlrWorkspace ws(spec.level());
			std::vector<polar::BitVector> msgs;
			msgs.reserve(blocks.size());
			for (const auto& y : blocks) {
				if (y.size() != spec.N)
					throw polar::validation_error("symbol line length differs from block length");
				auto obs = polar::llr_from_output(*spec.channel, y);
				msgs.push_back(spec.extract_message(polar::sc_decode(spec, obs, ws).u_hat));
			}
			polar::io::atomic_write(d_out, d_format == "packed" ? polar::io::write_bits_packed(msgs)
			                                                    : polar::io::write_bits_ascii(msgs));
		} else if (*sim) {
			echo_config({{"command", "simulate"}, {"code", s_code}, {"trials", s_trials},
			             {"seed", s_seed}, {"threads", s_threads}, {"out", s_out},
			             {"hist_out", s_hist_out}});
			polar::CodeSpec spec = polar::io::read_code_spec(polar::io::read_file(s_code));
			polar::TrialReport rep = polar::run_bler(spec, s_trials, s_seed, s_threads);
			polar::io::atomic_write(s_out, polar::io::bler_csv(rep));
			if (!s_hist_out.empty()) polar::io::atomic_write(s_hist_out, polar::io::hist_csv(rep));
		} else if (*pol) {
			echo_config({{"command", "polarize"}, {"channel", p_channel}, {"n", p_n},
			             {"delta", p_delta}, {"out", p_out}});
			polar::Channel ch = polar::io::parse_channel(p_channel);
			if (ch.kind != polar::Channel::Kind::bec)
				throw polar::validation_error("polarize runs on bec channels");
			polar::BecProfile prof = polar::bec_profile(ch.param, p_n);
			polar::io::atomic_write(p_out, polar::io::polarization_csv(prof));
			if (p_delta > 0.0) {
				auto [hi, lo] = polar::polarization_stats(ch.param, p_n, p_delta);
				std::cout << polar::io::g17(hi) << "," << polar::io::g17(lo) << "\n";
			}
		} else if (*cur) {
			echo_config({{"command", "curve"}, {"code", v_code}, {"channel", v_channel}, {"n", v_n},
			             {"eta", v_eta}, {"out", v_out}});
			polar::ReliabilityProfile profile;
			if (!v_code.empty()) {
				profile = polar::io::read_code_spec(polar::io::read_file(v_code)).profile;
				if (profile.z_hat.empty())
					throw polar::validation_error("code spec has no stored reliability profile");
			} else if (!v_channel.empty()) {
				polar::Channel ch = polar::io::parse_channel(v_channel);
				if (ch.kind != polar::Channel::Kind::bec)
					throw polar::validation_error("curve --channel runs on bec channels");
				profile = polar::reliability_exact_bec(ch.param, v_n);
			} else {
				throw polar::validation_error("curve needs --code or --channel");
			}
			std::vector<double> grid;
			if (!v_eta.empty()) {
				grid = parse_double_list(v_eta);
			} else {
				grid = profile.z_hat;
				std::sort(grid.begin(), grid.end());
				grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
				grid.push_back(1.0);
			}
			polar::io::atomic_write(v_out, polar::io::curve_csv(polar::rate_reliability_curve(profile, grid)));
		} else if (*cmp) {
			echo_config({{"command", "compare-rm"}, {"channel", r_channel}, {"n", r_n}, {"k", r_k},
			             {"trials", r_trials}, {"seed", r_seed}, {"threads", r_threads},
			             {"out", r_out}});
			polar::Channel ch = polar::io::parse_channel(r_channel);
			if (ch.kind != polar::Channel::Kind::bec)
				throw polar::validation_error("compare-rm runs on bec channels");
			auto [pol_rep, rm_rep] = polar::rm_vs_polar(ch.param, r_n, r_k, r_trials, r_seed, r_threads);
			polar::io::atomic_write(r_out, polar::io::compare_csv(pol_rep, rm_rep));
		} else if (*ben) {
			echo_config({{"command", "bench"}, {"channel", b_channel}, {"n_list", b_levels},
			             {"reps", b_reps}, {"seed", b_seed}, {"out", b_out}});
			polar::Channel ch = polar::io::parse_channel(b_channel);
			auto levels = parse_unsigned_list(b_levels);
			auto rows = polar::scaling_probe(ch, levels, b_reps, b_seed);
			polar::io::atomic_write(b_out, polar::io::bench_csv(rows));
		}
	} catch (const polar::error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
