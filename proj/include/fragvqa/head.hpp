#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fragvqa/util.hpp"

namespace fragvqa {

enum class Mode { train, inference };
enum class Selection { byrmse, bykrcc };

std::string to_string(Selection s);
Selection parse_selection(const std::string& name);

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
};

/// Batch normalization over the input features only.
struct InputNorm {
  Eigen::VectorXd gamma, beta;
  Eigen::VectorXd running_mean, running_var;
  double eps = 1e-5;
  double momentum = 0.1;
};

/// Gradients with the same shapes as the model parameters.
struct Gradients {
  std::vector<DenseLayer> layers;
  Eigen::VectorXd gamma, beta;
};

class MlpModel {
 public:
  MlpModel() = default;
  /// Zero-initialized model with the given layer dims, e.g. {d, 256, 128, 1}.
  MlpModel(std::vector<int> dims, bool batch_norm, double dropout);

  /// Fan-in scaled uniform init: weights and biases in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  static MlpModel initialized(std::vector<int> dims, bool batch_norm, double dropout, Rng& rng);

  [[nodiscard]] const std::vector<int>& dims() const noexcept { return dims_; }
  [[nodiscard]] int input_dim() const { return dims_.front(); }
  [[nodiscard]] bool has_batch_norm() const noexcept { return norm_.has_value(); }
  [[nodiscard]] double dropout() const noexcept { return dropout_; }
  std::vector<DenseLayer>& layers() noexcept { return layers_; }
  [[nodiscard]] const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  std::optional<InputNorm>& norm() noexcept { return norm_; }
  [[nodiscard]] const std::optional<InputNorm>& norm() const noexcept { return norm_; }

  /// Rows of `x` are samples. Train mode needs `rng` when dropout > 0 and
  /// uses batch statistics for the input norm; `update_stats` controls
  /// whether the running statistics move.
  Eigen::VectorXd forward(const Eigen::MatrixXd& x, Mode mode, Rng* rng = nullptr, bool update_stats = true);

  /// Inference-mode forward; const.
  [[nodiscard]] Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;

  /// Forward in train mode followed by backprop of dL/d(output).
  /// Returns the output; gradients land in `grads`.
  Eigen::VectorXd forward_backward(const Eigen::MatrixXd& x, Rng* rng, bool update_stats,
                                   const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& loss_grad,
                                   Gradients& grads);

  /// Parameters flattened in declared order: per layer W (row-major) then b, then gamma, beta.
  [[nodiscard]] std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);
  /// Batch-norm running mean then running var; empty without batch norm.
  [[nodiscard]] std::vector<double> buffers() const;
  void set_buffers(std::span<const double> flat);
  [[nodiscard]] std::size_t parameter_count() const;
  [[nodiscard]] std::vector<double> flatten(const Gradients& g) const;

  /// Rounds every parameter and buffer to float32 precision.
  void quantize_to_float();

  friend bool operator==(const MlpModel& a, const MlpModel& b);

 private:
  struct BatchStats {
    Eigen::VectorXd mean, var;
  };
  Eigen::VectorXd run(const Eigen::MatrixXd& x, Mode mode, Rng* rng, Gradients* grads,
                      const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>* loss_grad,
                      BatchStats* stats) const;
  void update_running(const BatchStats& stats, Eigen::Index batch);

  std::vector<int> dims_;
  std::vector<DenseLayer> layers_;
  std::optional<InputNorm> norm_;
  double dropout_ = 0.0;
};

double gelu(double x);
double gelu_derivative(double x);

double mae_loss(std::span<const double> pred, std::span<const double> truth);
double rank_loss(std::span<const double> pred, std::span<const double> truth);
double total_loss(std::span<const double> pred, std::span<const double> truth, double l1_w, double rank_w);

/// Marks rank-loss pairs whose hinge argument, and MAE terms whose residual,
/// lie within `tol` of the kink.
struct LossMask {
  double tol = 0.0;
  std::vector<char> pair_excluded;  // n*n, row-major
  std::vector<char> mae_excluded;   // n
};
LossMask near_kink_mask(std::span<const double> pred, std::span<const double> truth, double tol);

/// total_loss and its gradient w.r.t. predictions; masked terms contribute nothing.
double total_loss_grad(std::span<const double> pred, std::span<const double> truth, double l1_w, double rank_w,
                       std::span<double> grad, const LossMask* mask = nullptr);

struct TrainConfig {
  double lr = 0.01;
  double weight_decay = 5e-4;
  int batch_size = 256;
  int epochs = 120;
  double swa_lr = 0.05;
  double swa_start_fraction = 0.75;
  bool swa = true;
  int patience = 5;
  double l1_w = 0.6;
  double rank_w = 1.0;
  Selection selection = Selection::byrmse;
  std::uint64_t seed = 0;
  bool use_batch_norm = false;
  double dropout = 0.1;
  std::vector<int> hidden{256, 128};

  void validate() const;
  [[nodiscard]] std::string canonical() const;
  /// Cosine-annealed rate for a 0-based epoch, or swa_lr once SWA has started.
  [[nodiscard]] double lr_at(int epoch) const;
  /// First 0-based epoch of the SWA phase; `epochs` when SWA is off.
  [[nodiscard]] int swa_start_epoch() const;
};

struct Dataset {
  Eigen::MatrixXd x;  // n x d
  Eigen::VectorXd y;
  std::vector<std::string> ids;

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(y.size()); }
  [[nodiscard]] Dataset subset(std::span<const std::size_t> rows) const;
};

struct EpochLog {
  int epoch = 0;
  double lr = 0;
  double train_loss = 0;
  double val_rmse = 0;
  double val_krcc = 0;
  double val_metric = 0;
  double best_metric = 0;
  bool swa_active = false;
};

struct TrainedHead {
  MlpModel model;
  TrainConfig config;
  int best_epoch = -1;
  double best_metric = 0;
  bool swa_engaged = false;
  int epochs_run = 0;
  std::vector<EpochLog> log;
  // Provenance, stored in checkpoints.
  std::string config_hash;
  std::string feature_hash;
  std::string layout;
  int cv_folds = 0;
  int cv_best_fold = -1;
};

struct TrainOptions {
  const MlpModel* warm_start = nullptr;
  std::function<void(const EpochLog&)> on_epoch;
};

/// Higher is better for bykrcc, lower for byrmse.
bool metric_improves(Selection s, double candidate, double best);

TrainedHead train(const Dataset& train_set, const Dataset& val_set, const TrainConfig& config,
                  const TrainOptions& options = {});

/// K-fold variant: one head per fold, the best by selection criterion is kept.
TrainedHead train_cross_validated(const Dataset& data, int folds, const TrainConfig& config);

struct GradientCheckResult {
  double max_relative_error = 0;
  double max_abs_error = 0;
  std::size_t checked = 0;
  std::size_t excluded_terms = 0;
};

/// Central differences over a random sample of parameters. Dropout must be
/// off; batch norm (if any) uses batch statistics without touching the
/// running averages.
GradientCheckResult gradient_check(const MlpModel& model, const Eigen::MatrixXd& x, std::span<const double> truth,
                                   double l1_w, double rank_w, Rng& rng, std::size_t samples = 200,
                                   double step = 1e-4, double denom_floor = 1e-6);

void write_checkpoint(const std::filesystem::path& path, const TrainedHead& head);
TrainedHead read_checkpoint(const std::filesystem::path& path);
void write_training_log(const std::filesystem::path& path, const std::vector<EpochLog>& log);

}  // namespace fragvqa
