#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace wpdet::cli {

enum ExitCode : int {
  kOk = 0,
  kVerdictFailed = 1,
  kUsage = 2,
  kParseError = 3,
  kRegimeError = 4,
  kIoError = 5,
  kRefused = 6,
};

enum class Format { table, json, csv };

struct RunConfig {
  std::string subcommand;
  std::string form;
  std::string weights;
  std::string mode;
  unsigned k = 2;
  std::string B = "100";
  std::string beta = "2";
  std::uint64_t prime_bound = 1000;
  std::uint64_t xy_cap = 0;  // 0: ceil(B^{1/D}) + 2
  std::uint64_t p = 0;
  std::uint64_t max_p = 101;
  unsigned umax = 30;
  unsigned dmin = 6;
  unsigned dmax = 16;
  bool z_prime = true;
  bool univariate = false;
  Format format = Format::table;
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

/// Runs one validated configuration; writes to `out` unless config.out is set.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and dispatches it.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// FNV-1a, 64 bit, rendered as 16 hex digits.
std::string content_hash(const std::string& payload);

}  // namespace wpdet::cli
