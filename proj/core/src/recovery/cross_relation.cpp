#include "cmbd/recovery/cross_relation.hpp"

#include <Eigen/SVD>

#include "cmbd/errors.hpp"

namespace cmbd {

CrossRelationSystem build_cross_relation(const MeasurementSet& measurements, int support_bound,
                                         std::size_t first, std::size_t second) {
  if (support_bound < 1) throw PreconditionError("cross relation: M_x must be positive");
  const CMatrix y = measurements.pair_matrix(first, second);
  CrossRelationSystem sys;
  sys.grid = measurements.grid;
  sys.ks = measurements.grid.channel_sets[first];
  sys.support_bound = support_bound;
  sys.abar = measurements.grid.sensing_operator(sys.ks, support_bound).matrix();
  sys.y1 = y.col(0);
  sys.y2 = y.col(1);
  sys.b.resize(sys.abar.rows(), 2 * support_bound);
  sys.b.leftCols(support_bound) = sys.y2.asDiagonal() * sys.abar;
  sys.b.rightCols(support_bound) = -(sys.y1.asDiagonal() * sys.abar);
  return sys;
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CVector null_vector_on_support(const CMatrix& b, std::span<const int> columns) {
  if (columns.empty()) throw PreconditionError("null_vector_on_support: empty support");
  CMatrix sub(b.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    sub.col(static_cast<Eigen::Index>(i)) = b.col(columns[i]);
  }
  Eigen::JacobiSVD<CMatrix> svd(sub, Eigen::ComputeFullV);
  const CVector v = svd.matrixV().col(sub.cols() - 1);
  CVector out = CVector::Zero(b.cols());
  for (std::size_t i = 0; i < columns.size(); ++i) out(columns[i]) = v(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace cmbd
