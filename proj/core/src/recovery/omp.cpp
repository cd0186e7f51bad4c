#include "cmbd/recovery/omp.hpp"

#include <Eigen/QR>
#include <algorithm>

#include "cmbd/errors.hpp"

namespace cmbd {

OmpResult omp(const CMatrix& a, const CVector& y, int sparsity, double residual_tolerance) {
  if (a.rows() != y.size()) throw PreconditionError("omp: dimension mismatch");
  if (sparsity < 0) throw PreconditionError("omp: negative sparsity");
  const Eigen::VectorXd col_norms = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    if (!(col_norms(c) > 0.0)) {
      throw PreconditionError("omp: column " + std::to_string(c) + " is zero");
    }
  }

  OmpResult out;
  out.coefficients = CVector::Zero(a.cols());
  const double y_norm = y.norm();
  if (sparsity > a.cols()) out.converged = false;
  const int steps = std::min<int>(sparsity, static_cast<int>(a.cols()));

  CVector residual = y;
  CVector fit;
  std::vector<bool> chosen(static_cast<std::size_t>(a.cols()), false);
  for (int step = 0; step < steps; ++step) {
    if (residual.norm() <= residual_tolerance * y_norm) break;
    const CVector corr = a.adjoint() * residual;
    Eigen::Index best = -1;
    double best_score = -1.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (chosen[static_cast<std::size_t>(c)]) continue;
      const double score = std::abs(corr(c)) / col_norms(c);
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    std::vector<int> trial = out.support;
    trial.push_back(static_cast<int>(best));
    CMatrix sub(a.rows(), static_cast<Eigen::Index>(trial.size()));
    for (std::size_t i = 0; i < trial.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(trial[i]);
    Eigen::ColPivHouseholderQR<CMatrix> qr(sub);
    if (qr.rank() < sub.cols()) {
      out.converged = false;
      break;
    }
    chosen[static_cast<std::size_t>(best)] = true;
    out.support = std::move(trial);
    fit = qr.solve(y);
    residual = y - sub * fit;
  }
  for (std::size_t i = 0; i < out.support.size(); ++i) {
    out.coefficients(out.support[i]) = fit(static_cast<Eigen::Index>(i));
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

RecoveryResult nb_omp(const MeasurementSet& measurements, const SpectrumSamples& source,
                      int sparsity, int support_bound) {
  measurements.validate();
  RecoveryResult out;
  out.converged = true;
  double peak = 0.0;
  for (Eigen::Index i = 0; i < source.values.size(); ++i) peak = std::max(peak, std::abs(source.values(i)));
  for (std::size_t n = 0; n < measurements.channels.size(); ++n) {
    const auto& ks = measurements.grid.channel_sets[n];
    CVector rhs(static_cast<Eigen::Index>(ks.size()));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const Complex s = source.at(ks[i]);
      if (!(std::abs(s) > 1e-14 * peak)) {
        throw PreconditionError("nb_omp: source spectrum vanishes at index " + std::to_string(ks[i]));
      }
      rhs(static_cast<Eigen::Index>(i)) = measurements.channels[n](static_cast<Eigen::Index>(i)) / s;
    }
    const CMatrix a = measurements.grid.sensing_operator(ks, support_bound).matrix();
    const OmpResult r = omp(a, rhs, sparsity);
    out.converged = out.converged && r.converged;
    out.filters.push_back(ComplexSequence::from_dense(r.coefficients));
  }
  out.iterations = 1;
  out.source_spectrum = source;
  if (!out.converged) out.status = RecoveryStatus::not_converged;
  return out;
}

}  // namespace cmbd
