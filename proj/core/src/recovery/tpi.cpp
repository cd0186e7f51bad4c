#include "cmbd/recovery/tpi.hpp"

#include <algorithm>
#include <numeric>

#include "cmbd/errors.hpp"
#include "cmbd/recovery/omp.hpp"

namespace cmbd {

namespace {

void keep_largest(const CVector& in, CVector& out, Eigen::Index begin, int length, int keep) {
  std::vector<int> idx(static_cast<std::size_t>(length));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(in(begin + a)) > std::abs(in(begin + b));
  });
  for (int i = 0; i < std::min(keep, length); ++i) out(begin + idx[static_cast<std::size_t>(i)]) = in(begin + idx[static_cast<std::size_t>(i)]);
}

double objective(const CMatrix& b, const CVector& gamma) { return (b * gamma).squaredNorm(); }

std::vector<int> nonzero_columns(const CVector& v) {
  std::vector<int> cols;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != Complex{}) cols.push_back(static_cast<int>(i));
  }
  return cols;
}

}  // namespace

CVector truncate_blocks(const CVector& gamma, int sparsity, int support_bound) {
  if (gamma.size() != 2 * support_bound) throw PreconditionError("truncate_blocks: length must be 2 M_x");
  CVector out = CVector::Zero(gamma.size());
  keep_largest(gamma, out, 0, support_bound, sparsity);
  keep_largest(gamma, out, support_bound, support_bound, sparsity);
  return out;
}

CVector omp_initialization(const CrossRelationSystem& system, int sparsity) {
  CVector gamma(2 * system.support_bound);
  gamma.head(system.support_bound) = omp(system.abar, system.y1, sparsity).coefficients;
  gamma.tail(system.support_bound) = omp(system.abar, system.y2, sparsity).coefficients;
  return gamma;
}

RecoveryResult tpi(const CrossRelationSystem& system, int sparsity, const CVector& gamma0,
                   const TpiOptions& options) {
  const int mx = system.support_bound;
  if (gamma0.size() != 2 * mx) throw PreconditionError("tpi: gamma0 must have length 2 M_x");
  if (!(gamma0.norm() > 0.0)) throw PreconditionError("tpi: gamma0 is zero");
  const CMatrix gram = system.b.adjoint() * system.b;
  const double beta = options.beta.value_or(std::pow(spectral_norm(system.b), 2));
  const CMatrix g = beta * CMatrix::Identity(2 * mx, 2 * mx) - gram;

  RecoveryResult out;
  CVector gamma = gamma0 / gamma0.norm();
  out.initial_objective = objective(system.b, gamma);
  int iter = 0;
  for (iter = 1; iter <= options.max_iterations; ++iter) {
    CVector next = g * gamma;
    const double nn = next.norm();
    if (!(nn > 0.0)) break;
    next = truncate_blocks(next / nn, sparsity, mx);
    const double tn = next.norm();
    if (!(tn > 0.0)) break;
    next /= tn;
    const double change = (next - gamma).norm();
    gamma = next;
    out.objective_trace.push_back(objective(system.b, gamma));
    if (change <= options.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.iterations = std::min(iter, options.max_iterations);
  if (options.refine_support) gamma = null_vector_on_support(system.b, nonzero_columns(gamma));
  out.final_objective = objective(system.b, gamma);
  out.filters = split_stacked(gamma, mx);
  out.status = out.converged ? RecoveryStatus::ok : RecoveryStatus::not_converged;
  canonicalize(out, system.grid);
  return out;
}

}  // namespace cmbd
