#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nfold::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command, capturing standard output (standard error is discarded).
inline RunResult run_command(const std::string& command) {
  RunResult result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// A documented CLI invocation and the golden file holding its output.
struct GoldenCase {
  const char* name;
  const char* args;  // relative to the samples directory
};

inline void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

inline constexpr GoldenCase kGoldenCases[] = {
    {"solve_toy", "solve toy.json"},
    {"solve_toy_infeasible", "solve toy_infeasible.json"},
    {"solve_mixed", "solve mixed.json --oracle --audit"},
    {"oracle_toy", "oracle toy.json"},
    {"audit_toy", "audit toy.json"},
    {"lobbying_3x2", "lobbying lobbying_3x2.txt --k 1"},
    {"lobbying_3x2_k0", "lobbying lobbying_3x2.txt --k 0"},
    {"closest_string", "closest-string two_strings.txt --d 1"},
    {"multistrings", "multistrings bounded_strings.txt"},
    {"eqcolor_k13", "eqcolor star_k13.txt --colors 2 --cover center"},
    {"eqcolor_k12", "eqcolor star_k12.txt --colors 2 --cover center"},
};

inline std::string golden_command(const std::string& cli, const std::string& samples, const GoldenCase& c) {
  std::string cmd = "cd '" + samples + "' && '" + cli + "' ";
  return cmd + c.args;
}

}  // namespace nfold::testing
