// Command-line front end: strength sweeps to CSV, verification of the
// numerical pipeline against the closed forms, and canned sweeps for the
// reference figures.
//
// Exit codes: 0 success (and verification pass), 1 verification failure,
// 2 invalid arguments or unusable output path.

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cohflow/cohflow.hpp"

namespace {

cohflow::BlochVector parse_bloch(const std::string& text) {
  std::array<double, 3> vals{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const bool last = (i == 2);
    const std::size_t comma = text.find(',', pos);
    if (last != (comma == std::string::npos)) {
      throw std::invalid_argument(
          "--bloch expects exactly three comma-separated numbers");
    }
    const std::string part =
        last ? text.substr(pos) : text.substr(pos, comma - pos);
    std::size_t used = 0;
    try {
      vals[static_cast<std::size_t>(i)] = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--bloch component '" + part +
                                  "' is not a number");
    }
    while (used < part.size() &&
           std::isspace(static_cast<unsigned char>(part[used]))) {
      ++used;
    }
    if (used != part.size()) {
      throw std::invalid_argument("--bloch component '" + part +
                                  "' is not a number");
    }
    pos = comma + 1;
  }
  return {vals[0], vals[1], vals[2]};
}

// Returns false when the path cannot be opened or written.
bool write_output(const std::string& text,
                  const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return true;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << *path << "'\n";
    return false;
  }
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error: failed while writing '" << *path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence and entanglement of a qubit dilated through "
               "canonical noise channels"};
  app.require_subcommand(1);

  // --- sweep ---------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "sweep the channel strength p and emit one CSV row per point");
  std::string sweep_channel;
  std::string sweep_bloch;
  int sweep_steps = 101;
  std::optional<std::string> sweep_out;
  std::optional<std::uint64_t> sweep_seed;
  sweep_cmd->add_option("--channel", sweep_channel,
                        "channel code: adc|pdc|bfc|pfc|bpfc|dc")
      ->required();
  sweep_cmd->add_option("--bloch", sweep_bloch,
                        "initial Bloch vector as r1,r2,r3")
      ->required();
  sweep_cmd->add_option("--steps", sweep_steps,
                        "grid points on p in [0,1] (default 101)");
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->add_option("--seed", sweep_seed,
                        "accepted for interface parity; sweeps draw nothing "
                        "from it");

  // --- verify --------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify",
      "check the numerical pipeline against the closed forms on random states");
  std::vector<std::string> verify_channels;
  int verify_states = 1000;
  int verify_steps = 101;
  std::uint64_t verify_seed = 42;
  double verify_tolerance = 1e-9;
  std::optional<std::string> verify_out;
  verify_cmd
      ->add_option("--channel", verify_channels,
                   "channel codes to verify (default: all six)")
      ->delimiter(',');
  verify_cmd->add_option("--n-states", verify_states,
                         "random initial states per channel (default 1000)");
  verify_cmd->add_option("--steps", verify_steps,
                         "grid points on p in [0,1] (default 101)");
  verify_cmd->add_option("--seed", verify_seed,
                         "base seed; state i uses seed+i (default 42)");
  verify_cmd->add_option("--tolerance", verify_tolerance,
                         "max allowed absolute deviation (default 1e-9)");
  verify_cmd->add_option("--out", verify_out, "output file (default stdout)");

  // --- figure --------------------------------------------------------
  auto* figure_cmd = app.add_subcommand(
      "figure", "regenerate the sweep behind one of the reference figures");
  std::string figure_code;
  int figure_steps = 101;
  std::optional<std::string> figure_out;
  figure_cmd
      ->add_option("--fixture", figure_code,
                   "fig1|fig2|fig2_inset|fig3|fig4|fig4_inset")
      ->required();
  figure_cmd->add_option("--steps", figure_steps,
                         "grid points on p in [0,1] (default 101)");
  figure_cmd->add_option("--out", figure_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep_cmd->parsed()) {
      cohflow::SweepConfig cfg;
      cfg.channel = cohflow::channel_from_code(sweep_channel);
      cfg.bloch = parse_bloch(sweep_bloch);
      cfg.steps = sweep_steps;
      cfg.seed = sweep_seed;
      return write_output(cohflow::run_sweep(cfg), sweep_out) ? 0 : 2;
    }
    if (verify_cmd->parsed()) {
      cohflow::VerifyOptions opt;
      if (!verify_channels.empty()) {
        opt.channels.clear();
        for (const std::string& code : verify_channels) {
          opt.channels.push_back(cohflow::channel_from_code(code));
        }
      }
      opt.n_states = verify_states;
      opt.steps = verify_steps;
      opt.seed = verify_seed;
      opt.tolerance = verify_tolerance;
      cohflow::VerifyReport report;
      const std::string text = cohflow::run_verify_text(opt, &report);
      if (!write_output(text, verify_out)) return 2;
      return report.pass ? 0 : 1;
    }
    // figure
    const cohflow::FigureFixture& fixture =
        cohflow::figure_from_code(figure_code);
    const std::string text = cohflow::reproduce_figure(fixture.id, figure_steps);
    return write_output(text, figure_out) ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
