#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fragvqa/head.hpp"

namespace fragvqa {

/// 1-based ranks, ties share the average rank.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> a, std::span<const double> b);
double srcc(std::span<const double> pred, std::span<const double> truth);
/// Kendall tau-b in O(n log n).
double krcc(std::span<const double> pred, std::span<const double> truth);
double rmse(std::span<const double> pred, std::span<const double> truth);

/// `printed`: f(x) = b2 + (b1 - b2) / (1 + exp(-x + b3/|b4|)), b4 held at 1.
/// `canonical`: f(x) = b2 + (b1 - b2) / (1 + exp(-(x - b3)/|b4|)), all four fitted.
enum class LogisticForm { printed, canonical };

std::string to_string(LogisticForm f);
LogisticForm parse_logistic_form(const std::string& name);

using Betas = std::array<double, 4>;

double logistic(double x, const Betas& b, LogisticForm form = LogisticForm::printed);

struct LogisticFit {
  Betas betas{};
  std::vector<double> mapped;
  double cost = 0;
  int iterations = 0;
  bool converged = false;
};

/// Levenberg-Marquardt with a central-difference Jacobian. Throws
/// `insufficient_data` for n < 5; non-convergence is reported, not thrown.
LogisticFit logistic_fit(std::span<const double> pred, std::span<const double> truth,
                         LogisticForm form = LogisticForm::printed, int max_iterations = 400, double rel_tol = 1e-10);

struct PlccRmse {
  double plcc = 0;
  double rmse = 0;
  LogisticFit fit;
};
PlccRmse plcc_rmse_after_fit(std::span<const double> pred, std::span<const double> truth,
                             LogisticForm form = LogisticForm::printed);

struct MetricsReport {
  double srcc = 0;
  double krcc = 0;
  double plcc = 0;
  double rmse = 0;
  Betas logistic_betas{};
  std::size_t n = 0;
  bool fit_warning = false;
};

MetricsReport evaluate_predictions(std::span<const double> pred, std::span<const double> truth,
                                   LogisticForm form = LogisticForm::printed);

struct ProtocolConfig {
  int iterations = 21;
  double train_fraction = 0.64;
  double val_fraction = 0.16;
  std::uint64_t seed = 0;
  LogisticForm logistic = LogisticForm::printed;
  int jobs = 1;

  void validate() const;
  [[nodiscard]] std::string canonical() const;
};

struct SplitIndices {
  std::vector<std::size_t> train, val, test;
};

/// Seeded shuffle, then the first round(n*train) rows train, the next
/// round(n*val) validate and the rest test.
SplitIndices random_split(std::size_t n, double train_fraction, double val_fraction, std::uint64_t seed);

/// Per-iteration seed derived from the base seed (splitmix64 step).
std::uint64_t iteration_seed(std::uint64_t base, int iteration);

struct IterationResult {
  int iteration = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string failure;
  MetricsReport test;
  double train_srcc = 0;
  int best_epoch = -1;
  int epochs_run = 0;
  std::size_t n_train = 0, n_val = 0, n_test = 0;
};

struct MetricSummary {
  double median = 0;
  double std = 0;
};

struct ProtocolReport {
  ProtocolConfig config;
  std::vector<IterationResult> iterations;
  int failed = 0;
  MetricSummary srcc, krcc, plcc, rmse, train_srcc;
};

double median(std::vector<double> values);
/// Population standard deviation.
double population_std(std::span<const double> values);

ProtocolReport run_protocol(const Dataset& data, const TrainConfig& train_config, const ProtocolConfig& config);

/// One row per iteration; doubles in shortest round-trip form.
std::string protocol_csv(const ProtocolReport& report);
std::string protocol_summary(const ProtocolReport& report, const std::string& config_hash);

}  // namespace fragvqa
