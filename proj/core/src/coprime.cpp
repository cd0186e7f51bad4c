#include "cmbd/coprime.hpp"

#include <Eigen/SVD>

#include "cmbd/errors.hpp"

namespace cmbd {

CMatrix sylvester_matrix(const ComplexSequence& a, const ComplexSequence& b) {
  const auto av = a.values();
  const auto bv = b.values();
  const auto m = static_cast<Eigen::Index>(av.size()) - 1;  // deg A
  const auto n = static_cast<Eigen::Index>(bv.size()) - 1;  // deg B
  CMatrix s = CMatrix::Zero(m + n, m + n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= m; ++j) s(i, i + j) = av[static_cast<std::size_t>(j)];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= n; ++j) s(n + i, i + j) = bv[static_cast<std::size_t>(j)];
  }
  return s;
}

CoprimeReport coprimeness_check(const ComplexSequence& a, const ComplexSequence& b,
                                double tolerance) {
  if (a.is_zero() || b.is_zero()) {
    throw PreconditionError("coprimeness_check: both sequences must be non-zero");
  }
  // Monomials z^{-m} have no zeros away from the origin.
  if (a.size() == 1 || b.size() == 1) return {true, 0};
  const CMatrix s = sylvester_matrix(a, b);
  Eigen::JacobiSVD<CMatrix> svd(s);
  const auto& sv = svd.singularValues();
  const double cutoff = tolerance * sv(0);
  int deficiency = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) ++deficiency;
  }
  return {deficiency == 0, deficiency};
}

}  // namespace cmbd
