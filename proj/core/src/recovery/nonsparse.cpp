#include "cmbd/recovery/nonsparse.hpp"

#include <Eigen/SVD>

#include "cmbd/coprime.hpp"

namespace cmbd {

RecoveryResult nonsparse_eigen(const CrossRelationSystem& system, const EigenOptions& options) {
  const int mx = system.support_bound;
  const int width = 2 * mx;
  Eigen::JacobiSVD<CMatrix> svd(system.b, Eigen::ComputeFullV);
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(width);
  sigma.head(svd.singularValues().size()) = svd.singularValues();
  const double sigma_max = sigma(0);

  RecoveryResult out;
  const CVector gamma = svd.matrixV().col(width - 1);
  out.filters = split_stacked(gamma, mx);
  out.final_objective = sigma(width - 1) * sigma(width - 1);
  out.iterations = 1;
  out.converged = true;
  canonicalize(out, system.grid);

  if (sigma(width - 2) <= options.uniqueness_tolerance * sigma_max) {
    out.status = RecoveryStatus::non_unique;
  } else if (out.filters[0].is_zero() || out.filters[1].is_zero() ||
             !coprimeness_check(out.filters[0], out.filters[1]).coprime) {
    out.status = RecoveryStatus::not_coprime;
  }
  return out;
}

}  // namespace cmbd
