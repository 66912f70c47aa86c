#pragma once

#include <string>
#include <vector>

namespace invkit {

// Exit codes shared by every command. Results that carry a negative
// verdict in-band (synthesis infeasibility, failed check) still write
// their JSON before returning the nonzero code.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;            // parse error, invalid input
inline constexpr int kExitEmpty = 2;            // viability died out
inline constexpr int kExitBudget = 3;           // polyhedral blowup
inline constexpr int kExitInfeasible = 4;
inline constexpr int kExitNumerical = 5;
inline constexpr int kExitNotPlanar = 6;        // plot needs dimension 2

struct ViabilityArgs {
  std::string input;
  std::string out;        // empty writes to stdout
  int max_iter = 50;
  double tol = -1.0;      // <0 defers to the file, then to 1e-8
};
int cmd_viability(const ViabilityArgs& args);

struct SynthesizeArgs {
  std::string input;
  std::string out;
  std::string dump_program;  // optional path for the assembled program
  int solver_max_iter = -1;
  double solver_tol = -1.0;  // sets both feasibility and gap tolerances
};
int cmd_synthesize(const SynthesizeArgs& args);

struct PolarArgs {
  std::string input;
  std::string out;
};
int cmd_polar(const PolarArgs& args);

struct CheckArgs {
  std::string input;
  std::string out;
  int samples = -1;  // <0 defers to the file, then to 200
};
int cmd_check(const CheckArgs& args);

struct PlotArgs {
  std::vector<std::string> inputs;  // result documents, overlaid in order
  std::string out;
  std::string format = "svg";  // or "json"
  int samples = 64;
};
int cmd_plot(const PlotArgs& args);

}  // namespace invkit
