#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cayley/girth.hpp"
#include "cayley/hasher.hpp"
#include "cayley/lifting.hpp"
#include "cayley/primes.hpp"

namespace cayley::cli {

namespace {

using nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string p;
  GenParam k = 2;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::string in;
};

void add_common(CLI::App* cmd, Common& c, bool with_seed, bool with_in) {
  cmd->add_option("--p", c.p, "prime modulus: decimal, 0x-hex, b^e, or near:<integer>")->required();
  cmd->add_option("--k", c.k, "generator parameter k")->capture_default_str();
  cmd->add_flag("--json", c.json, "emit a single JSON document");
  if (with_seed) cmd->add_option("--seed", c.seed, "RNG seed (drawn and echoed when omitted)");
  if (with_in) cmd->add_option("--in", c.in, "read input from this file instead of stdin");
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

json matrix_json(const FpMat& m) {
  return json::array({m.a().get_str(), m.b().get_str(), m.c().get_str(), m.d().get_str()});
}

std::string read_all(std::istream& s) {
  std::ostringstream buf;
  buf << s.rdbuf();
  if (s.bad()) throw IoError("read failed");
  return buf.str();
}

int cmd_hash(const Common& c, bool bits_mode, const std::string& order, std::istream& in, std::ostream& out) {
  const BitOrder bit_order = order == "lsb" ? BitOrder::lsb_first : BitOrder::msb_first;
  HashParams params(parse_prime(c.p), c.k, bit_order);
  HashState state(params);

  std::ifstream file;
  std::istream* src = &in;
  if (!c.in.empty()) {
    file.open(c.in, std::ios::binary);
    if (!file) throw IoError("cannot open " + c.in);
    src = &file;
  }

  std::uint64_t consumed = 0;
  if (bits_mode) {
    std::string text = read_all(*src);
    text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }),
               text.end());
    state.update_bits(text);
    consumed = text.size();
  } else {
    std::vector<char> chunk(1 << 16);
    while (*src) {
      src->read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
      const auto got = static_cast<std::size_t>(src->gcount());
      if (got == 0) break;
      state.update_bytes({reinterpret_cast<const std::uint8_t*>(chunk.data()), got});
      consumed += 8 * got;
    }
    if (src->bad()) throw IoError("read failed");
  }
  const Digest d = state.finalize();
  if (c.json) {
    out << json{{"p", params.p().get_str()},
                {"k", params.k()},
                {"bit_order", bit_order == BitOrder::msb_first ? "msb" : "lsb"},
                {"bits", consumed},
                {"digest", d.hex()},
                {"matrix", matrix_json(d.value())}}
               .dump()
        << '\n';
  } else {
    out << d.hex() << '\n';
  }
  return kOk;
}

int cmd_girth(const Common& c, bool exact, const girth::BfsOptions& bfs, std::ostream& out) {
  const mpz_class p = parse_prime(c.p);
  const girth::GirthReport report = girth::analyze(p, c.k, exact ? std::optional(bfs) : std::nullopt);
  if (c.json) {
    out << report.to_json().dump() << '\n';
    return kOk;
  }
  out << "p: " << p.get_str() << "\nk: " << c.k << '\n';
  if (report.guaranteed_length) out << "guaranteed_length: " << *report.guaranteed_length << '\n';
  if (report.estimate) out << "estimate: " << *report.estimate << '\n';
  if (exact) {
    if (report.exact_girth) {
      out << "exact_girth: " << *report.exact_girth << '\n'
          << "witness_u: " << format_word(report.witness->first) << '\n'
          << "witness_v: " << format_word(report.witness->second) << '\n';
    } else {
      out << "exact_girth: none up to length " << *report.searched_length << '\n';
    }
  }
  return kOk;
}

int cmd_attack(const Common& c, const std::string& mode, std::ostream& out) {
  const mpz_class p = parse_prime(c.p);
  if (c.k != 2) throw InvalidArgument("attack is only defined for k = 2");
  const std::uint64_t seed = resolve_seed(c);
  if (mode == "correction") {
    const auto r = attack::correction_pipeline(p, seed);
    if (c.json) {
      out << r.to_json().dump() << '\n';
    } else {
      out << "seed: " << seed << "\nlift_a1b1_word: " << format_word(r.a1b1_word)
          << "\ncorrection: " << r.correction << "\nword: " << format_word(r.word)
          << "\nlength: " << r.word.length() << "\nword_mod_p: " << *r.word_mod_p
          << "\nword equals correction mod p: " << (r.matches_correction ? "yes" : "no") << '\n';
    }
    return r.matches_correction ? kOk : kNegative;
  }
  const auto r = attack::build_group_relation(p, seed);
  if (c.json) {
    out << r.to_json().dump() << '\n';
  } else {
    out << "seed: " << seed << "\nword: " << format_word(r.word) << "\nlength: " << r.length
        << "\nverified: " << (r.verified ? "yes" : "no") << '\n';
  }
  return r.verified ? kOk : kNegative;
}

int cmd_verify(const Common& c, const std::string& word_text, std::ostream& out) {
  const mpz_class p = parse_prime(c.p);
  const GenWord w = parse_word(word_text);
  const FpMat value = evaluate(w, c.k, PrimeField(p));
  const bool ok = value.is_identity();
  if (c.json) {
    out << json{{"p", p.get_str()},
                {"k", c.k},
                {"word", format_word(w)},
                {"matrix", matrix_json(value)},
                {"identity", ok}}
               .dump()
        << '\n';
  } else {
    out << (ok ? "identity" : "not identity") << '\n';
  }
  return ok ? kOk : kNegative;
}

int cmd_bench(const Common& c, std::uint64_t size, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  HashParams params(parse_prime(c.p), c.k);
  const std::uint64_t seed = resolve_seed(c);
  std::mt19937_64 gen(seed);
  std::string bits(size, '0');
  for (auto& ch : bits) ch = (gen() & 1) ? '1' : '0';

  auto timed = [&](auto&& fn) {
    const auto t0 = Clock::now();
    Digest d = fn();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return std::make_pair(std::move(d), secs);
  };
  const auto [naive, naive_s] = timed([&] { return hash_bits_naive(params, bits); });
  const auto [runs, runs_s] = timed([&] { return hash_bits(params, bits); });
  auto rate = [size](double s) { return size == 0 || s <= 0 ? 0.0 : static_cast<double>(size) / s; };

  const bool agree = naive == runs;
  if (c.json) {
    out << json{{"p", params.p().get_str()},
                {"k", params.k()},
                {"seed", seed},
                {"bits", size},
                {"digest", runs.hex()},
                {"paths_agree", agree},
                {"naive", {{"seconds", naive_s}, {"bits_per_second", rate(naive_s)}}},
                {"run_length", {{"seconds", runs_s}, {"bits_per_second", rate(runs_s)}}}}
               .dump()
        << '\n';
  } else {
    out << "seed: " << seed << "\nbits: " << size << "\ndigest: " << runs.hex()
        << "\nnaive bits/s: " << rate(naive_s) << "\nrun-length bits/s: " << rate(runs_s) << '\n';
  }
  return agree ? kOk : kNegative;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley hash functions over SL2(F_p) and their analysis", "cayley"};
  app.require_subcommand(1);

  Common hash_opts, girth_opts, attack_opts, verify_opts, bench_opts;

  auto* hash = app.add_subcommand("hash", "hash stdin (or --in) to a digest in SL2(F_p)");
  add_common(hash, hash_opts, false, true);
  bool bits_mode = false;
  std::string order = "msb";
  hash->add_flag("--bits", bits_mode, "input is an ASCII 0/1 bit string");
  hash->add_option("--order", order, "bit order within bytes")->check(CLI::IsMember({"msb", "lsb"}));

  auto* girth = app.add_subcommand("girth", "collision-free length bounds");
  add_common(girth, girth_opts, false, false);
  bool exact = false;
  girth::BfsOptions bfs;
  girth->add_flag("--exact-bfs", exact, "also run the exhaustive BFS collision search (small p)");
  girth->add_option("--cap", bfs.length_cap, "BFS word-length cap")->capture_default_str();
  girth->add_option("--guard", bfs.max_prime, "largest p accepted by the BFS")->capture_default_str();

  auto* attack = app.add_subcommand("attack", "build a relation w(A(2), B(2)) = 1 mod p");
  add_common(attack, attack_opts, true, false);
  std::string mode = "relation";
  attack->add_option("--mode", mode, "relation: verified relation; correction: lift-and-correct route")
      ->check(CLI::IsMember({"relation", "correction"}));

  auto* verify = app.add_subcommand("verify", "check whether a word evaluates to the identity mod p");
  add_common(verify, verify_opts, false, false);
  std::string word_text;
  verify->add_option("word", word_text, "word in caret grammar, e.g. \"A^2 B^-1\"")->required();

  auto* bench = app.add_subcommand("bench", "throughput of the naive and run-length hash paths");
  add_common(bench, bench_opts, true, false);
  std::uint64_t size = 1'000'000;
  bench->add_option("--size", size, "message size in bits")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*hash) return cmd_hash(hash_opts, bits_mode, order, in, out);
    if (*girth) return cmd_girth(girth_opts, exact, bfs, out);
    if (*attack) return cmd_attack(attack_opts, mode, out);
    if (*verify) return cmd_verify(verify_opts, word_text, out);
    if (*bench) return cmd_bench(bench_opts, size, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ResourceGuard& e) {
    err << "refused: " << e.what() << '\n';
    return kResource;
  } catch (const BudgetExhausted& e) {
    err << "gave up: " << e.what() << '\n';
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cayley::cli
