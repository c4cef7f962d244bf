#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "pdr/error.hpp"
#include "pdr/io.hpp"

namespace pdr {

enum class Algorithm { seq_ruppert, seq_chew, par_ruppert, par_chew, par_generic };
enum class DomainKind { pslg, periodic };

std::optional<Algorithm> parse_algorithm(const std::string& s);
std::string to_string(Algorithm a);

struct JobConfig {
  Algorithm algorithm = Algorithm::par_ruppert;
  /// Unset: .poly inputs are PSLGs, everything else a periodic point set.
  std::optional<DomainKind> domain;
  double beta = 1.4142135623730951;
  double alpha = 3.0;
  RuleKind generic_rule = RuleKind::ruppert;  // quality rule of par-generic
  MisPolicy mis = MisPolicy::maximal;
  int threads = 1;
  bool strict_checks = false;
  std::filesystem::path input;
  std::filesystem::path out;  // mesh stem; empty = no mesh files
  std::filesystem::path trace;
  std::filesystem::path svg;
  std::filesystem::path report;  // .json gets JSON, anything else key=value
};

/// Throws InvalidConfig: beta below sqrt(2), alpha not above 2, threads < 1,
/// an "any" MIS outside par-generic on periodic input, or a domain kind that
/// does not match the input file.
void validate(const JobConfig& c);
DomainKind resolve_domain(const JobConfig& c);

enum ExitCode : int { exit_ok = 0, exit_invalid_input = 2, exit_invariant = 3, exit_io = 4 };

int exit_code_for(ErrorCode code);

struct RunResult {
  int exit_code = exit_ok;
  std::string message;  // failure text, or a summary of failed checks
  std::vector<std::string> warnings;
  RunReport report;
  Mesh mesh;
  Trace trace;
};

/// Reads, preprocesses (PSLG), refines, checks and writes every requested
/// artifact. Library errors are caught and mapped to exit codes.
RunResult run(const JobConfig& config);

}  // namespace pdr
