/*
 * Copyright 2026 The powerindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "powerindex/cli.h"

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "powerindex/bounds.h"
#include "powerindex/data.h"
#include "powerindex/error.h"
#include "powerindex/exact.h"
#include "powerindex/random.h"
#include "powerindex/report.h"
#include "powerindex/sampling.h"

namespace powerindex {

namespace {

// Flag values that parse but make no sense; exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputFlags {
  std::string format = "table";
  int precision = 5;
  std::string out_path;
  int threads = 0;
  bool serial = false;

  Execution execution() const {
    return {.parallel = !serial, .num_threads = threads};
  }
};

void AddOutputFlags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--format", flags.format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  cmd->add_option("--precision", flags.precision,
                  "decimals for reals (17 = full precision)")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();
  cmd->add_option("--out", flags.out_path, "write the report to FILE");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = default)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--serial", flags.serial, "use the serial reference kernels");
}

struct GameFlags {
  std::string game;
  std::string association;
  bool identity = false;
  std::string scope = "all";
  bool strict = false;
};

void AddGameFlags(CLI::App* cmd, GameFlags& flags, bool with_association) {
  cmd->add_option("--game", flags.game,
                  "game JSON file, or 'eu' for the embedded EU game")
      ->required();
  cmd->add_flag("--strict", flags.strict,
                "winning requires weight strictly above quota");
  if (!with_association) return;
  auto* assoc = cmd->add_option("--association", flags.association,
                                "association matrix file (JSON or CSV)");
  auto* identity =
      cmd->add_flag("--identity", flags.identity, "use the identity matrix");
  assoc->excludes(identity);
  cmd->add_option("--persuasion-scope", flags.scope,
                  "players counted in the persuasion load: all or coalition")
      ->check(CLI::IsMember({"all", "coalition"}))
      ->capture_default_str();
}

VotingGame LoadGameArg(const GameFlags& flags) {
  VotingGame game = flags.game == "eu" ? EuGame() : LoadGameFile(flags.game);
  if (flags.strict) game = game.WithBoundary(BoundaryRule::kStrictlyAbove);
  return game;
}

// Explicit flag, then the game's embedded matrix, else classical.
std::optional<AssociationMatrix> ResolveAssociation(const GameFlags& flags,
                                                    const VotingGame& game) {
  if (flags.identity) return AssociationMatrix::Identity(game.num_players());
  if (!flags.association.empty()) {
    AssociationMatrix phi = LoadAssociationFile(flags.association);
    CheckAssociationFits(game, phi);
    return phi;
  }
  return game.association();
}

PersuasionScope ScopeArg(const GameFlags& flags) {
  return flags.scope == "coalition" ? PersuasionScope::kCoalitionOnly
                                    : PersuasionScope::kAllPlayers;
}

void Emit(const Document& doc, const OutputFlags& flags, std::ostream& out) {
  const std::string text =
      Render(doc, ParseOutputFormat(flags.format), flags.precision);
  if (flags.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.out_path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::kIo, "cannot write '" + flags.out_path + "'");
  }
  file << text;
  if (!file) {
    throw Error(ErrorCode::kIo, "failed writing '" + flags.out_path + "'");
  }
}

// exact

struct ExactCmd {
  GameFlags game;
  OutputFlags output;

  void Run(std::ostream& out) const {
    const VotingGame g = LoadGameArg(game);
    const auto phi = ResolveAssociation(game, g);
    ExactOptions options;
    options.scope = ScopeArg(game);
    options.execution = output.execution();
    Emit(ExactDocument(ExactIndices(g, phi, options)), output, out);
  }
};

// approx

struct ApproxCmd {
  GameFlags game;
  OutputFlags output;
  double epsilon = 0;
  double delta = 0;
  std::string method = "hoeffding";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double s2 = 0.25;
  std::optional<double> bound_b;

  void Run(std::ostream& out) const {
    if (!(epsilon > 0 && epsilon < 1))
      throw UsageError("--epsilon must lie in (0, 1)");
    if (!(delta > 0 && delta < 1))
      throw UsageError("--delta must lie in (0, 1)");
    const VotingGame g = LoadGameArg(game);
    const auto phi = ResolveAssociation(game, g);
    const IntervalMethod m = ParseIntervalMethod(method);
    const IndexMode mode =
        phi ? IndexMode::kAssociation : IndexMode::kClassical;

    std::vector<double> per_player_b;
    if (m == IntervalMethod::kSelfBounding) {
      for (int i = 0; i < g.num_players(); ++i) {
        per_player_b.push_back(
            bound_b ? *bound_b : DefaultSelfBoundingB(g, mode, i, epsilon));
      }
    }
    std::uint64_t n = samples;
    if (n == 0) {
      switch (m) {
        case IntervalMethod::kHoeffding:
          n = RequiredSamples(epsilon, delta, m);
          break;
        case IntervalMethod::kStudent:
          n = RequiredSamples(epsilon, delta, m, s2);
          break;
        case IntervalMethod::kSelfBounding:
          for (double b : per_player_b) {
            n = std::max(n,
                         RequiredSamples(epsilon, delta, m, std::nullopt, b));
          }
          break;
      }
    }
    if (m == IntervalMethod::kStudent && n < 2) {
      throw UsageError("student intervals need --samples >= 2");
    }
    SamplingOptions options;
    options.scope = ScopeArg(game);
    options.execution = output.execution();
    const EstimateReport estimate = EstimateIndices(g, phi, n, seed, options);
    std::vector<ConfidenceInterval> intervals;
    for (int i = 0; i < g.num_players(); ++i) {
      intervals.push_back(ComputeConfidenceInterval(
          estimate, i, delta, m,
          per_player_b.empty() ? std::nullopt
                               : std::optional(per_player_b[i])));
    }
    Emit(ApproxDocument(estimate, intervals, epsilon), output, out);
  }
};

// bounds

struct BoundsCmd {
  GameFlags game;
  OutputFlags output;
  std::string player;

  void Run(std::ostream& out) const {
    const VotingGame g = LoadGameArg(game);
    std::optional<int> index;
    if (!player.empty()) index = g.PlayerIndex(player);
    Emit(BoundsDocument(ComputeBounds(g), index), output, out);
  }
};

// eu

struct EuCmd {
  OutputFlags output;
  std::string migration;
  bool random_association = false;
  std::uint64_t seed = 0;
  int runs = 100;
  std::string quota_rule = "whole";
  bool strict = false;

  void Run(std::ostream& out) const {
    if (random_association && !migration.empty()) {
      throw UsageError("--migration and --random-association are exclusive");
    }
    if (runs < 1) throw UsageError("--runs must be at least 1");
    VotingGame game =
        EuGame(quota_rule == "fraction" ? EuQuotaRule::kExactFraction
                                        : EuQuotaRule::kWholeVotes);
    if (strict) game = game.WithBoundary(BoundaryRule::kStrictlyAbove);
    ExactOptions options;
    options.execution = output.execution();
    const IndexReport wta = ExactIndices(game, std::nullopt, options);
    const auto countries = EuCountries();
    const int m = game.num_players();

    Document doc;
    doc.kind = "eu";
    doc.fields = {
        {"vote_quota", game.quota(0)},
        {"population_quota", game.quota(1)},
        {"country_quota", game.quota(2)},
        {"boundary", std::string(strict ? "strictly_above" : "at_least")},
    };

    std::vector<double> with_assoc;
    std::string assoc_column;
    Table runs_table{"runs", {"run", "seed"}, {}};
    if (!migration.empty()) {
      const MigrationTable table = ReadMigrationCsv(migration);
      if (table.size() != m) {
        throw Error(ErrorCode::kDimensionMismatch,
                    migration + ": expected " + std::to_string(m) +
                        " countries, got " + std::to_string(table.size()));
      }
      for (int i = 0; i < m; ++i) {
        if (table.labels[i] != countries[i].code) {
          throw Error(ErrorCode::kInvariantViolation,
                      migration + ": column " + std::to_string(i + 1) +
                          " is '" + table.labels[i] + "', expected '" +
                          countries[i].code + "' (country order " +
                          game.metadata().at("country_order") + ")");
        }
      }
      const AssociationMatrix phi = BuildMigrationAssociation(table);
      with_assoc = ExactIndices(game, phi, options).normalized;
      assoc_column = "wa_migration";
    } else if (random_association) {
      for (const EuCountry& c : countries)
        runs_table.columns.emplace_back(c.code);
      with_assoc.assign(m, 0.0);
      const CounterRng seeds(seed);
      for (int r = 0; r < runs; ++r) {
        const std::uint64_t run_seed =
            seeds.Derive(static_cast<std::uint64_t>(r));
        const IndexReport wa =
            ExactIndices(game, RandomAssociation(m, run_seed), options);
        std::vector<Cell> row = {static_cast<std::int64_t>(r), run_seed};
        for (int i = 0; i < m; ++i) {
          with_assoc[i] += wa.normalized[i];
          row.emplace_back(wa.normalized[i]);
        }
        runs_table.rows.push_back(std::move(row));
      }
      for (double& v : with_assoc) v /= runs;
      assoc_column = "wa_random_mean";
      doc.fields.emplace_back("run_count", static_cast<std::int64_t>(runs));
      doc.fields.emplace_back("seed", seed);
    }

    Table t{"countries",
            {"country", "votes", "population", "wta", "wta_reference",
             "wta_abs_diff"},
            {}};
    if (!assoc_column.empty()) t.columns.push_back(assoc_column);
    double max_diff = 0;
    for (int i = 0; i < m; ++i) {
      const double diff =
          std::abs(wta.normalized[i] - countries[i].reference_index);
      max_diff = std::max(max_diff, diff);
      std::vector<Cell> row = {std::string(countries[i].code),
                               static_cast<std::int64_t>(countries[i].votes),
                               countries[i].population_millions,
                               wta.normalized[i],
                               countries[i].reference_index,
                               diff};
      if (!assoc_column.empty()) row.emplace_back(with_assoc[i]);
      t.rows.push_back(std::move(row));
    }
    doc.fields.emplace_back("wta_max_abs_diff", max_diff);
    doc.tables.push_back(std::move(t));
    if (random_association) doc.tables.push_back(std::move(runs_table));
    Emit(doc, output, out);
  }
};

// conjecture

struct ConjectureCmd {
  OutputFlags output;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  ConjectureParams params;

  void Run(std::ostream& out) const {
    if (params.max_players > kExactMaxPlayers || params.min_players < 1 ||
        params.min_players > params.max_players) {
      throw UsageError("player range must lie within [1, " +
                       std::to_string(kExactMaxPlayers) + "]");
    }
    if (params.max_weight < params.min_weight || params.min_weight < 1) {
      throw UsageError("weight range must be positive and non-empty");
    }
    if (trials == 0) throw UsageError("--trials must be at least 1");
    const ConjectureReport report =
        ScanConjecture(params, trials, seed, output.execution());
    Emit(ConjectureDocument(report, params, seed), output, out);
  }
};

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Classical and association-aware Banzhaf power indices",
               "powerindex"};
  app.require_subcommand(1);

  ExactCmd exact;
  CLI::App* exact_cmd =
      app.add_subcommand("exact", "exact indices by coalition enumeration");
  AddGameFlags(exact_cmd, exact.game, true);
  AddOutputFlags(exact_cmd, exact.output);

  ApproxCmd approx;
  CLI::App* approx_cmd = app.add_subcommand(
      "approx", "Monte Carlo estimates with confidence intervals");
  AddGameFlags(approx_cmd, approx.game, true);
  AddOutputFlags(approx_cmd, approx.output);
  approx_cmd->add_option("--epsilon", approx.epsilon, "target accuracy")
      ->required();
  approx_cmd->add_option("--delta", approx.delta, "1 - confidence level")
      ->required();
  approx_cmd
      ->add_option("--method", approx.method,
                   "hoeffding, student or selfbounding")
      ->check(CLI::IsMember({"hoeffding", "student", "selfbounding"}))
      ->capture_default_str();
  approx_cmd->add_option(
      "--samples", approx.samples,
      "samples per player (default: derived from epsilon, delta)");
  approx_cmd->add_option("--seed", approx.seed, "random seed")->required();
  approx_cmd
      ->add_option("--s2", approx.s2, "variance used to size student runs")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  approx_cmd
      ->add_option("--bound-b", approx.bound_b,
                   "self-bounding B (default: derived per player)")
      ->check(CLI::PositiveNumber);

  BoundsCmd bounds;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "closed-form index bounds and violation flags");
  AddGameFlags(bounds_cmd, bounds.game, false);
  AddOutputFlags(bounds_cmd, bounds.output);
  bounds_cmd->add_option("--player", bounds.player,
                         "restrict rows to one player id");

  EuCmd eu;
  CLI::App* eu_cmd = app.add_subcommand("eu", "18-country EU Council game");
  AddOutputFlags(eu_cmd, eu.output);
  auto* migration_opt =
      eu_cmd->add_option("--migration", eu.migration, "migration flow CSV");
  auto* random_opt =
      eu_cmd->add_flag("--random-association", eu.random_association,
                       "average over random association matrices");
  migration_opt->excludes(random_opt);
  eu_cmd->add_option("--seed", eu.seed, "seed for random matrices");
  eu_cmd->add_option("--runs", eu.runs, "random matrices to average")
      ->capture_default_str();
  eu_cmd
      ->add_option("--quota-rule", eu.quota_rule,
                   "vote quota: whole (215 votes) or fraction (215.34)")
      ->check(CLI::IsMember({"whole", "fraction"}))
      ->capture_default_str();
  eu_cmd->add_flag("--strict", eu.strict,
                   "winning requires weight strictly above quota");

  ConjectureCmd conjecture;
  CLI::App* conjecture_cmd = app.add_subcommand(
      "conjecture", "scan random games for max-weight bound counterexamples");
  AddOutputFlags(conjecture_cmd, conjecture.output);
  conjecture_cmd->add_option("--trials", conjecture.trials, "games to scan")
      ->required();
  conjecture_cmd->add_option("--seed", conjecture.seed, "random seed")
      ->required();
  conjecture_cmd
      ->add_option("--min-players", conjecture.params.min_players,
                   "fewest players per game")
      ->capture_default_str();
  conjecture_cmd
      ->add_option("--max-players", conjecture.params.max_players,
                   "most players per game")
      ->capture_default_str();
  conjecture_cmd
      ->add_option("--min-weight", conjecture.params.min_weight,
                   "smallest integer weight")
      ->capture_default_str();
  conjecture_cmd
      ->add_option("--max-weight", conjecture.params.max_weight,
                   "largest integer weight")
      ->capture_default_str();
  conjecture_cmd
      ->add_option("--quota-fraction", conjecture.params.quota_fraction,
                   "quota as a fraction of total weight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return kExitOk;
    }
    err << "powerindex: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*exact_cmd) exact.Run(out);
    if (*approx_cmd) approx.Run(out);
    if (*bounds_cmd) bounds.Run(out);
    if (*eu_cmd) eu.Run(out);
    if (*conjecture_cmd) conjecture.Run(out);
  } catch (const UsageError& e) {
    err << "powerindex: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "powerindex: " << ErrorCodeName(e.code()) << ": " << e.what()
        << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace powerindex
