#pragma once

// Experiment runner behind the command line tool: dispatch, result records,
// sweeps and output files.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "katolab/config.hpp"
#include "katolab/operator_core.hpp"

namespace katolab {

using Json = nlohmann::ordered_json;

struct Target {
  std::string name;
  std::string reference;   ///< what the expected value is, in words
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string comparison;  ///< "abs", "rel" or "max" (value <= expected)
  bool pass = false;
};

Target make_target(std::string name, std::string reference, double value, double expected, double tolerance,
                   std::string comparison = "abs");

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ResultRecord {
  std::string experiment_id;
  std::string subcommand;
  std::uint64_t seed = 0;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::vector<Target> targets;
  Table table;
  double wall_time = 0.0;  ///< seconds
  std::string version;

  bool pass() const;
};

ResultRecord run(const ExperimentConfig& config);

struct SweepResult {
  std::string axis;
  std::vector<std::string> values;
  std::vector<ResultRecord> records;  ///< in range order
  bool pass() const;
};

/// Runs every point of the single ranged parameter on a worker pool.
/// `workers` = 0 picks the hardware concurrency.
SweepResult sweep(const ExperimentConfig& config, unsigned workers = 0);

Json to_json(const ResultRecord& r, bool include_wall_time = true);
Json to_json(const SweepResult& s, bool include_wall_time = true);
/// The record's table, or key,value rows of its scalar outputs when it has none.
std::string to_csv(const ResultRecord& r);
/// One row per sweep point: the axis value and every scalar output.
std::string to_csv(const SweepResult& s);
std::string format_csv_double(double x);  ///< 17 significant digits

/// Writes to a temporary file beside `path` and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

std::string version();

// Seeded samplers shared by the experiments and tests -----------------------

using Rng = std::mt19937_64;
/// (X + X*)/2 with independent standard complex Gaussian entries.
HermitianMatrix random_hermitian(Index n, Rng& rng);
CMatrix random_complex(Index rows, Index cols, Rng& rng);
/// Parses a matrix given as rows of numbers or [re, im] pairs.
CMatrix matrix_from_json(const Json& j);

}  // namespace katolab
