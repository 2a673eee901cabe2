#include "equimap/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct CliState {
  std::string file;
  bool use_stdin = false;
  bool json = false;
  std::uint64_t seed = 12345;
  int instances = 1000;
  bool real_dims = false;
  bool all_conditions = false;
};

int run_command(const std::string& command, const CliState& state) {
  std::string input;
  if (!state.file.empty()) {
    std::ifstream in(state.file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open '" << state.file << "'\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    input = buf.str();
  } else if (state.use_stdin) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    input = buf.str();
  }

  equimap::RunOptions opts;
  opts.seed = state.seed;
  opts.instances = state.instances;
  opts.real_dims = state.real_dims;
  opts.all_conditions = state.all_conditions;

  const equimap::RunResult result = equimap::run(command, input, opts);
  if (state.json)
    std::cout << result.report.dump(2) << "\n";
  else
    std::cout << equimap::render_human(result.report);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equimap - exact existence decisions for equivariant maps between "
               "representation spheres of tori and p-tori"};
  app.set_version_flag("--version", std::string(equimap::kToolName) + " " +
                                        equimap::kToolVersion);

  CliState state;
  app.add_option("--file", state.file, "read the instance from this UTF-8 file");
  app.add_flag("--stdin", state.use_stdin, "read the instance from standard input");
  app.add_flag("--json", state.json, "emit the machine-readable JSON report");
  app.add_option("--seed", state.seed, "RNG seed for verification commands");
  app.add_option("--instances", state.instances,
                 "sample count for verification commands (default 1000)");
  app.add_flag("--real-dims", state.real_dims, "report real instead of complex dimensions");
  app.add_flag("--all-conditions", state.all_conditions,
               "decide: also evaluate criteria (2)-(4) and report agreement");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"decide", "decide existence of a G-equivariant map S(V) -> S(W) (torus)"},
      {"conditions", "evaluate all four equivalent criteria and their agreement"},
      {"euler", "factored Euler classes e(V), e(W) and their divisibility"},
      {"fixdim", "fixed-point dimensions over the isotropy subgroups of S(V)"},
      {"isotropy", "list the isotropy subgroups of S(V) as annihilator lattices"},
      {"extend", "pad V to V' with dim V' = dim W preserving the verdict"},
      {"verify", "cross-verify the criteria (random instances, or one instance in depth)"},
      {"pdecide", "decide existence for a p-torus instance"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
  }

  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    std::cerr << app.help();
    return 2;
  }
  return run_command(subs.front()->get_name(), state);
}
