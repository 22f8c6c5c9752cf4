// Copyright 2026 The linepatrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linepatrol/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "linepatrol/continuous.h"
#include "linepatrol/error.h"
#include "linepatrol/io.h"
#include "linepatrol/lp.h"
#include "linepatrol/verify.h"

namespace linepatrol {
namespace {

// Reading failures are usage errors; everything after is a content error.
struct UsageError {
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw UsageError{"cannot read " + path};
  return buf.str();
}

struct Flags {
  bool use_float = false;
  std::optional<double> tolerance;
  std::string dump_lp;
  bool flows = false;
  int64_t cap = kDefaultOracleCap;
  std::string strategy;
  std::string file;
};

SolveOptions ToSolveOptions(const Flags& flags) {
  SolveOptions options;
  if (flags.tolerance) {
    options.lp.tolerance = *flags.tolerance;
    options.tol_zero = *flags.tolerance;
  }
  return options;
}

void DumpLp(const ProblemInstance& instance, const std::string& path) {
  const ProblemInstance discrete = instance.mode == Mode::kContinuous
                                       ? ScaleInstance(instance).instance
                                       : instance;
  const PartitionSet parts = BuildPartitions(discrete);
  const AssembledLp lp =
      AssembleLp(discrete, parts, BuildDayGraphs(discrete, parts));
  std::ofstream out(path);
  if (!out) throw UsageError{"cannot write " + path};
  WriteLpFormat(lp.model, out);
  if (!out) throw UsageError{"cannot write " + path};
}

template <typename Scalar>
EquilibriumResult<Scalar> SolveAny(const ProblemInstance& instance,
                                   const Flags& flags) {
  if (!flags.dump_lp.empty()) DumpLp(instance, flags.dump_lp);
  const SolveOptions options = ToSolveOptions(flags);
  return instance.mode == Mode::kContinuous
             ? SolveContinuous<Scalar>(instance, options)
             : Solve<Scalar>(instance, options);
}

template <typename Scalar>
int RunSolve(const ProblemInstance& instance, const Flags& flags,
             std::ostream& out) {
  const auto result = SolveAny<Scalar>(instance, flags);
  out << SerializeResult(result, ResultFormat{flags.flows});
  return kExitOk;
}

template <typename Scalar>
int RunVerify(const ProblemInstance& instance, const Flags& flags,
              std::ostream& out) {
  const auto result = SolveAny<Scalar>(instance, flags);
  const CheckReport report = CheckEquilibrium(instance, result, flags.cap);
  out << SerializeReport(report);
  return report.passed() ? kExitOk : kExitFailure;
}

template <typename Scalar>
int RunRender(const ProblemInstance& instance, const Flags& flags,
              std::ostream& out) {
  out << RenderTimeline(instance, SolveAny<Scalar>(instance, flags));
  return kExitOk;
}

}  // namespace

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Minimax patrol schedules on a line.", "linepatrol"};
  app.require_subcommand(1);
  Flags flags;
  app.add_flag("--float", flags.use_float, "solve in double precision");
  app.add_option("--tolerance", flags.tolerance,
                 "zero tolerance of the double pipeline")
      ->check(CLI::PositiveNumber);
  app.add_option("--dump-lp", flags.dump_lp,
                 "write the full program in LP format to this path");
  app.add_flag("--flows", flags.flows, "include per-round edge flows");
  app.add_option("--cap", flags.cap,
                 "schedule limit of the brute-force oracle")
      ->check(CLI::PositiveNumber);

  auto with_file = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", flags.file, "instance document")->required();
    return sub;
  };
  CLI::App* solve = with_file("solve", "solve and print value and support");
  CLI::App* verify = with_file("verify", "solve, or load --strategy, and check");
  verify->add_option("--strategy", flags.strategy,
                     "check this strategy document instead of solving");
  CLI::App* oracle = with_file("oracle", "brute-force game value");
  CLI::App* render = with_file("render", "ASCII timeline of the solution");

  GenOptions gen_options;
  int64_t speed = -1, radius = -1;
  CLI::App* gen = app.add_subcommand("gen", "print a random instance");
  gen->add_option("--seed", gen_options.seed, "random seed");
  gen->add_option("--T", gen_options.horizon, "rounds")
      ->check(CLI::Range(1, 1'000'000));
  gen->add_option("--M", gen_options.space_max, "line length")
      ->check(CLI::Range(int64_t{0}, int64_t{1} << 60));
  gen->add_option("--K", gen_options.patrols, "patrols")
      ->check(CLI::Range(1, 1'000'000));
  gen->add_option("--n", gen_options.targets, "targets")
      ->check(CLI::Range(1, 1'000'000));
  gen->add_option("--D", speed, "speed (random if omitted)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--R", radius, "radius (random if omitted)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--max-weight", gen_options.max_weight, "largest weight")
      ->check(CLI::Range(1, 1'000'000));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "linepatrol: " << e.what() << "\n";
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (speed >= 0) gen_options.speed = speed;
      if (radius >= 0) gen_options.radius = radius;
      out << SerializeInstance(GenerateInstance(gen_options));
      return kExitOk;
    }
    const std::string text = ReadFile(flags.file);
    const ProblemInstance instance = ParseInstance(text);
    if (solve->parsed()) {
      return flags.use_float ? RunSolve<double>(instance, flags, out)
                             : RunSolve<Rational>(instance, flags, out);
    }
    if (verify->parsed()) {
      if (!flags.strategy.empty()) {
        const StrategyDocument doc = ParseStrategy(ReadFile(flags.strategy));
        const CheckReport report =
            CheckEquilibrium(instance, doc.value, doc.strategy, flags.cap);
        out << SerializeReport(report);
        return report.passed() ? kExitOk : kExitFailure;
      }
      return flags.use_float ? RunVerify<double>(instance, flags, out)
                             : RunVerify<Rational>(instance, flags, out);
    }
    if (oracle->parsed()) {
      out << ToString(MatrixGameValue(instance, flags.cap)) << "\n";
      return kExitOk;
    }
    if (render->parsed()) {
      return flags.use_float ? RunRender<double>(instance, flags, out)
                             : RunRender<Rational>(instance, flags, out);
    }
  } catch (const UsageError& e) {
    err << "linepatrol: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "linepatrol: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "linepatrol: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "linepatrol: no command\n";
  return kExitUsage;
}

}  // namespace linepatrol
