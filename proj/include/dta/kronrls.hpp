#pragma once

#include <span>
#include <vector>

#include "dta/dataio.hpp"
#include "dta/similarity.hpp"

namespace dta::kronrls {

/// Kernel ridge regression over drug-target pairs whose kernel is the
/// Kronecker product of a drug kernel and a target kernel, solved through
/// the per-factor eigendecompositions instead of the full
/// (targets*drugs) x (targets*drugs) system.
struct KronRlsModel {
  std::size_t num_targets = 0;
  std::size_t num_drugs = 0;
  double lambda = 0;
  /// Dual coefficients, targets x drugs row-major.
  std::vector<double> dual;

  double dual_at(std::size_t t, std::size_t d) const {
    return dual[t * num_drugs + d];
  }
};

/// Fits vec(A) = (K_d (x) K_t + lambda I)^-1 vec(Y). Kernels are
/// symmetrized and negative eigenvalues clipped to zero first. The affinity
/// matrix is targets x drugs row-major and must be complete and finite.
KronRlsModel fit(const sim::SimilarityMatrix& drug_kernel,
                 const sim::SimilarityMatrix& target_kernel,
                 std::span<const double> affinity_matrix, double lambda);

/// f(d, t) = target_sim_row . A . drug_sim_row where the rows hold the
/// query's similarities to every training target / drug.
double predict(const KronRlsModel& model, std::span<const double> drug_sim_row,
               std::span<const double> target_sim_row);

/// Fitted values over the whole training grid, targets x drugs: K_t A K_d.
std::vector<double> fitted_values(const KronRlsModel& model,
                                  const sim::SimilarityMatrix& drug_kernel,
                                  const sim::SimilarityMatrix& target_kernel);

/// Five-fold cross-validated lambda selection: maximizes the mean
/// Concordance Index over the plan's train folds; ties break toward the
/// larger lambda. Held-out and never-measured cells are imputed with the
/// mean of the visible training affinities before fitting.
double select_lambda(const data::InteractionDataset& dataset,
                     const data::FoldPlan& plan,
                     const sim::SimilarityMatrix& drug_kernel,
                     const sim::SimilarityMatrix& target_kernel,
                     std::span<const double> lambda_grid,
                     std::vector<double>* fold_ci_log = nullptr);

/// Builds the targets x drugs affinity matrix from the listed interactions,
/// filling every cell not covered by `indices` with the mean of the covered
/// ones.
std::vector<double> affinity_matrix_from(
    const data::InteractionDataset& dataset,
    std::span<const std::size_t> indices);

}  // namespace dta::kronrls
