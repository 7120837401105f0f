#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cohflow/sweep.hpp"

using namespace cohflow;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("sweep rows walk the uniform grid", "[sweep]") {
  const SweepConfig cfg{ChannelKind::adc, {0.6, 0.0, 0.8}, 5, std::nullopt};
  const std::vector<SweepRow> rows = sweep_rows(cfg);
  REQUIRE(rows.size() == 5);
  REQUIRE(rows.front().p == 0.0);
  REQUIRE(rows[1].p == 0.25);
  REQUIRE(rows.back().p == 1.0);
  REQUIRE_THROWS_AS(sweep_rows(SweepConfig{ChannelKind::adc, {}, 1, {}}),
                    std::invalid_argument);
}

TEST_CASE("csv output has the pinned schema", "[sweep]") {
  const std::string csv =
      run_sweep(SweepConfig{ChannelKind::pdc, {0.3, -0.2, 0.5}, 11, {}});
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 12);
  REQUIRE(lines[0] == "p,C_total,C_S,C_E,C_l,C_nl,E_ent,gap");

  const std::regex number("^-?\\d\\.\\d{14}e[+-]\\d{2}$");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::vector<std::string> fields = split_fields(lines[k]);
    REQUIRE(fields.size() == 8);
    for (const std::string& f : fields) {
      INFO("line " << k << " field '" << f << "'");
      REQUIRE(std::regex_match(f, number));
    }
  }
  REQUIRE(split_fields(lines[1])[0] == "0.00000000000000e+00");
  REQUIRE(split_fields(lines.back())[0] == "1.00000000000000e+00");
}

TEST_CASE("sweeps are deterministic", "[sweep]") {
  const SweepConfig cfg{ChannelKind::bfc, {-0.11, -0.61, 0.77}, 21, {}};
  REQUIRE(run_sweep(cfg) == run_sweep(cfg));
}

TEST_CASE("entanglement column convention", "[sweep]") {
  // qubit environments report concurrence, larger ones 2 * negativity
  const BlochVector r{0.4, -0.3, 0.2};
  const SweepRow adc_row = evaluate_point(ChannelKind::adc, r, 0.3);
  const JointState adc_js =
      evolve_joint(density_from_bloch(r), kraus_set(ChannelKind::adc, 0.3));
  REQUIRE(adc_row.entanglement == concurrence(adc_js));

  const SweepRow pdc_row = evaluate_point(ChannelKind::pdc, r, 0.3);
  const JointState pdc_js =
      evolve_joint(density_from_bloch(r), kraus_set(ChannelKind::pdc, 0.3));
  REQUIRE(pdc_row.entanglement == 2.0 * negativity(pdc_js));
  REQUIRE_THAT(pdc_row.gap,
               WithinAbs(pdc_row.split.nonlocal - pdc_row.entanglement, 1e-15));
}

TEST_CASE("figure fixtures are pinned", "[sweep]") {
  REQUIRE(figure_fixtures().size() == 6);
  const FigureFixture& f1 = figure_from_code("fig1");
  REQUIRE(f1.channel == ChannelKind::pdc);
  REQUIRE(f1.bloch.r1 == -0.41);
  REQUIRE(f1.bloch.r2 == 0.80);
  REQUIRE(f1.bloch.r3 == -0.38);
  REQUIRE(figure_from_code("fig2").channel == ChannelKind::bfc);
  REQUIRE(figure_from_code("fig2_inset").bloch.r1 == 0.37);
  REQUIRE(figure_from_code("fig3").channel == ChannelKind::pfc);
  REQUIRE(figure_from_code("fig4").channel == ChannelKind::dc);
  REQUIRE(figure_from_code("fig4").bloch.norm2() == 0.0);
  REQUIRE(figure_from_code("fig4_inset").bloch.r3 == 0.11);
  REQUIRE_THROWS_AS(figure_from_code("fig9"), std::invalid_argument);

  REQUIRE(kFig1SecondState.r1 == 0.03);
  REQUIRE(kFig1SecondState.r2 == -0.15);
  REQUIRE(kFig1SecondState.r3 == -0.19);
}

TEST_CASE("figure sweeps reproduce their headline features", "[sweep]") {
  SECTION("fig1: the coherence-negativity gap closes at the endpoints") {
    const FigureFixture& f = figure_from_code("fig1");
    const std::vector<SweepRow> rows =
        sweep_rows(SweepConfig{f.channel, f.bloch, 101, {}});
    REQUIRE(rows.size() == 101);
    REQUIRE_THAT(rows.front().gap, WithinAbs(0.0, 1e-10));
    REQUIRE_THAT(rows.back().gap, WithinAbs(0.0, 1e-10));
    REQUIRE(rows[50].gap > 0.1);
    // and no entanglement at p = 0
    REQUIRE_THAT(rows.front().entanglement, WithinAbs(0.0, 1e-10));
  }
  SECTION("fig2: system and environment coherences cross at p = 1/2") {
    const FigureFixture& f = figure_from_code("fig2");
    const std::vector<SweepRow> rows =
        sweep_rows(SweepConfig{f.channel, f.bloch, 101, {}});
    REQUIRE_THAT(rows[50].split.system, WithinAbs(0.11, 1e-10));
    REQUIRE_THAT(rows[50].split.environment, WithinAbs(0.11, 1e-10));
  }
  SECTION("fig3: phase flip system coherence dips to zero and recovers") {
    const FigureFixture& f = figure_from_code("fig3");
    const std::vector<SweepRow> rows =
        sweep_rows(SweepConfig{f.channel, f.bloch, 101, {}});
    const double c0 = std::sqrt(f.bloch.r1 * f.bloch.r1 +
                                f.bloch.r2 * f.bloch.r2);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const double p = rows[k].p;
      REQUIRE_THAT(rows[k].split.system,
                   WithinAbs(std::abs(1.0 - 2.0 * p) * c0, 1e-10));
    }
    REQUIRE(rows[50].split.system <= 1e-12);
    REQUIRE_THAT(rows.back().split.system,
                 WithinAbs(rows.front().split.system, 1e-10));
  }
  SECTION("fig4: the maximally mixed state has purely non-local coherence") {
    const FigureFixture& f = figure_from_code("fig4");
    const std::vector<SweepRow> rows =
        sweep_rows(SweepConfig{f.channel, f.bloch, 101, {}});
    for (const SweepRow& row : rows) {
      REQUIRE(row.split.system <= 1e-12);
      REQUIRE(row.split.environment <= 1e-12);
    }
    REQUIRE_THAT(rows.back().split.nonlocal, WithinAbs(3.0, 1e-12));
    REQUIRE_THAT(rows.back().entanglement, WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("reproduce_figure emits the same csv as the equivalent sweep",
          "[sweep]") {
  const FigureFixture& f = figure_from_code("fig2_inset");
  REQUIRE(reproduce_figure(f.id, 31) ==
          run_sweep(SweepConfig{f.channel, f.bloch, 31, {}}));
}

TEST_CASE("verification passes at its default tolerance", "[sweep]") {
  VerifyOptions opt;
  opt.channels = {ChannelKind::adc, ChannelKind::dc};
  opt.n_states = 3;
  opt.steps = 11;
  opt.seed = 7;
  const VerifyReport report = run_verify(opt);
  REQUIRE(report.pass);
  REQUIRE(report.channels.size() == 2);
  REQUIRE(report.channels[0].deviations.size() == 5);  // includes E_c
  REQUIRE(report.channels[1].deviations.size() == 4);
  for (const ChannelReport& ch : report.channels) {
    for (const QuantityDeviation& d : ch.deviations) {
      REQUIRE(d.max_dev <= 1e-9);
    }
  }
}

TEST_CASE("zero tolerance reports the rounding floor as failure", "[sweep]") {
  VerifyOptions opt;
  opt.channels = {ChannelKind::pdc};
  opt.n_states = 3;
  opt.steps = 11;
  opt.seed = 7;
  opt.tolerance = 0.0;
  const VerifyReport report = run_verify(opt);
  REQUIRE_FALSE(report.pass);
  double worst = 0.0;
  for (const QuantityDeviation& d : report.channels[0].deviations) {
    worst = std::max(worst, d.max_dev);
  }
  REQUIRE(worst > 0.0);
  REQUIRE(worst < 1e-12);  // still only rounding noise
}

TEST_CASE("verification reports are deterministic text", "[sweep]") {
  VerifyOptions opt;
  opt.channels = {ChannelKind::bfc};
  opt.n_states = 2;
  opt.steps = 5;
  opt.seed = 99;
  const std::string a = run_verify_text(opt);
  const std::string b = run_verify_text(opt);
  REQUIRE(a == b);
  REQUIRE(a.find("channel bfc") != std::string::npos);
  REQUIRE(a.find("overall: pass") != std::string::npos);
  REQUIRE(a.find("seed 99") != std::string::npos);
}

TEST_CASE("verification rejects unusable options", "[sweep]") {
  VerifyOptions opt;
  opt.n_states = 0;
  REQUIRE_THROWS_AS(run_verify(opt), std::invalid_argument);
  opt.n_states = 1;
  opt.steps = 1;
  REQUIRE_THROWS_AS(run_verify(opt), std::invalid_argument);
  opt.steps = 2;
  opt.tolerance = -1.0;
  REQUIRE_THROWS_AS(run_verify(opt), std::invalid_argument);
  opt.tolerance = 1e-9;
  opt.channels.clear();
  REQUIRE_THROWS_AS(run_verify(opt), std::invalid_argument);
}
