#include "dta/kronrls.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "dta/error.hpp"
#include "dta/metrics.hpp"

namespace dta::kronrls {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Symmetrize and eigendecompose a kernel, clipping negative eigenvalues to
/// zero (similarity matrices are not guaranteed PSD).
void psd_eigen(const sim::SimilarityMatrix& kernel, MatrixXd& vectors,
               VectorXd& values) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      k(i, j) = 0.5 * (kernel.at(i, j) + kernel.at(j, i));
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(k);
  if (solver.info() != Eigen::Success)
    throw NumericError("kernel eigendecomposition failed");
  values = solver.eigenvalues().cwiseMax(0.0);
  vectors = solver.eigenvectors();
  if (!values.allFinite() || !vectors.allFinite())
    throw NumericError("non-finite kernel eigendecomposition");
}

}  // namespace

KronRlsModel fit(const sim::SimilarityMatrix& drug_kernel,
                 const sim::SimilarityMatrix& target_kernel,
                 std::span<const double> affinity_matrix, double lambda) {
  const std::size_t nd = drug_kernel.size();
  const std::size_t nt = target_kernel.size();
  if (nd == 0 || nt == 0) throw ConfigError("empty kernel");
  if (affinity_matrix.size() != nd * nt)
    throw ConfigError("affinity matrix size " +
                      std::to_string(affinity_matrix.size()) +
                      " does not match " + std::to_string(nt) + " targets x " +
                      std::to_string(nd) + " drugs");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  for (double v : affinity_matrix)
    if (!std::isfinite(v))
      throw DataError("affinity matrix has a missing or non-finite entry");

  MatrixXd u, v;  // target / drug eigenvectors
  VectorXd lt, ld;
  psd_eigen(target_kernel, u, lt);
  psd_eigen(drug_kernel, v, ld);

  Eigen::Map<const MatrixXd> y(affinity_matrix.data(),
                               static_cast<Eigen::Index>(nd),
                               static_cast<Eigen::Index>(nt));
  // y is stored row-major targets x drugs; the map above reads it
  // column-major as drugs x targets, i.e. Y^T.
  const MatrixXd yt = y.transpose();  // targets x drugs

  // vec(A) = (K_d (x) K_t + lambda I)^-1 vec(Y)
  //        = U [ (U^T Y V) ./ (lt_i * ld_j + lambda) ] V^T
  MatrixXd core = u.transpose() * yt * v;
  for (Eigen::Index i = 0; i < core.rows(); ++i)
    for (Eigen::Index j = 0; j < core.cols(); ++j) {
      const double divisor = lt(i) * ld(j) + lambda;
      if (!(divisor > 0.0))
        throw NumericError("non-positive eigenvalue divisor in KronRLS fit");
      core(i, j) /= divisor;
    }
  const MatrixXd a = u * core * v.transpose();

  KronRlsModel model;
  model.num_targets = nt;
  model.num_drugs = nd;
  model.lambda = lambda;
  model.dual.resize(nt * nd);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t d = 0; d < nd; ++d)
      model.dual[t * nd + d] = a(static_cast<Eigen::Index>(t),
                                 static_cast<Eigen::Index>(d));
  return model;
}

double predict(const KronRlsModel& model, std::span<const double> drug_sim_row,
               std::span<const double> target_sim_row) {
  if (drug_sim_row.size() != model.num_drugs ||
      target_sim_row.size() != model.num_targets)
    throw ConfigError("similarity row lengths (" +
                      std::to_string(drug_sim_row.size()) + ", " +
                      std::to_string(target_sim_row.size()) +
                      ") do not match model (" +
                      std::to_string(model.num_drugs) + ", " +
                      std::to_string(model.num_targets) + ")");
  double out = 0.0;
  for (std::size_t t = 0; t < model.num_targets; ++t) {
    if (target_sim_row[t] == 0.0) continue;
    double row = 0.0;
    const double* a = model.dual.data() + t * model.num_drugs;
    for (std::size_t d = 0; d < model.num_drugs; ++d)
      row += a[d] * drug_sim_row[d];
    out += target_sim_row[t] * row;
  }
  return out;
}

std::vector<double> fitted_values(const KronRlsModel& model,
                                  const sim::SimilarityMatrix& drug_kernel,
                                  const sim::SimilarityMatrix& target_kernel) {
  const auto nt = static_cast<Eigen::Index>(model.num_targets);
  const auto nd = static_cast<Eigen::Index>(model.num_drugs);
  if (drug_kernel.size() != model.num_drugs ||
      target_kernel.size() != model.num_targets)
    throw ConfigError("kernel sizes do not match model");

  MatrixXd a(nt, nd), kt(nt, nt), kd(nd, nd);
  for (Eigen::Index t = 0; t < nt; ++t)
    for (Eigen::Index d = 0; d < nd; ++d) a(t, d) = model.dual[t * nd + d];
  for (Eigen::Index i = 0; i < nt; ++i)
    for (Eigen::Index j = 0; j < nt; ++j) kt(i, j) = target_kernel.at(i, j);
  for (Eigen::Index i = 0; i < nd; ++i)
    for (Eigen::Index j = 0; j < nd; ++j) kd(i, j) = drug_kernel.at(i, j);

  const MatrixXd fitted = kt * a * kd;
  std::vector<double> out(model.num_targets * model.num_drugs);
  for (Eigen::Index t = 0; t < nt; ++t)
    for (Eigen::Index d = 0; d < nd; ++d) out[t * nd + d] = fitted(t, d);
  return out;
}

std::vector<double> affinity_matrix_from(
    const data::InteractionDataset& dataset,
    std::span<const std::size_t> indices) {
  const std::size_t nd = dataset.drugs.size();
  const std::size_t nt = dataset.targets.size();
  if (indices.empty()) throw DataError("no interactions to build matrix from");

  double mean = 0.0;
  for (std::size_t idx : indices) mean += dataset.interactions[idx].affinity;
  mean /= static_cast<double>(indices.size());

  std::vector<double> y(nt * nd, mean);
  for (std::size_t idx : indices) {
    const auto& it = dataset.interactions[idx];
    y[it.target * nd + it.drug] = it.affinity;
  }
  return y;
}

double select_lambda(const data::InteractionDataset& dataset,
                     const data::FoldPlan& plan,
                     const sim::SimilarityMatrix& drug_kernel,
                     const sim::SimilarityMatrix& target_kernel,
                     std::span<const double> lambda_grid,
                     std::vector<double>* fold_ci_log) {
  if (lambda_grid.empty()) throw ConfigError("empty lambda grid");
  for (double l : lambda_grid)
    if (!(l > 0.0)) throw ConfigError("lambda grid values must be > 0");

  double best_lambda = 0.0;
  double best_score = -1.0;
  for (double lambda : lambda_grid) {
    double mean_ci = 0.0;
    for (std::size_t fold = 0; fold < plan.train_folds.size(); ++fold) {
      const auto train = plan.train_without(fold);
      const auto y = affinity_matrix_from(dataset, train);
      const auto model = fit(drug_kernel, target_kernel, y, lambda);
      const auto fitted = fitted_values(model, drug_kernel, target_kernel);

      metrics::PredictionBatch batch;
      for (std::size_t idx : plan.train_folds[fold]) {
        const auto& it = dataset.interactions[idx];
        batch.predicted.push_back(
            fitted[it.target * dataset.drugs.size() + it.drug]);
        batch.actual.push_back(it.affinity);
      }
      double ci;
      try {
        ci = metrics::concordance_index_fast(batch);
      } catch (const NumericError&) {
        ci = 0.5;  // all actuals equal in this fold
      }
      if (fold_ci_log) fold_ci_log->push_back(ci);
      mean_ci += ci;
    }
    mean_ci /= static_cast<double>(plan.train_folds.size());
    if (mean_ci > best_score ||
        (mean_ci == best_score && lambda > best_lambda)) {
      best_score = mean_ci;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

}  // namespace dta::kronrls
