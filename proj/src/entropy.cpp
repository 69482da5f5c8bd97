#include "mhkit/entropy.hpp"

#include <cmath>

#include "mhkit/errors.hpp"

namespace mhkit {

namespace {
constexpr double kEigFloor = 1e-12;
}

double entropy_from_spectrum(const Eigen::VectorXd& lam) {
  double h = 0;
  for (long i = 0; i < lam.size(); ++i) {
    double p = lam(i);
    if (p > kEigFloor) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann(const Eigen::MatrixXcd& rho) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8) {
    throw DimensionError("density matrix trace is not 1 within 1e-8");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw DimensionError("density matrix is not PSD within 1e-8");
  }
  return entropy_from_spectrum(es.eigenvalues());
}

MiValue mutual_info_dense(const StateVector& psi, const Region& A, const Region& B) {
  if (!disjoint(A, B)) throw DimensionError("mutual information needs disjoint regions");
  if (A.size() + B.size() > 14) {
    throw FeasibilityError("mutual_info_dense capped at |A|+|B| <= 14");
  }
  double ea = entropy_from_spectrum(psi.subsystem_spectrum(A));
  double eb = entropy_from_spectrum(psi.subsystem_spectrum(B));
  double eab = entropy_from_spectrum(psi.subsystem_spectrum(region_union(A, B)));
  return MiValue{ea + eb - eab, std::nullopt};
}

MiValue mutual_info_stabilizer(const StabilizerTableau& t, const Region& A, const Region& B) {
  if (!disjoint(A, B)) throw DimensionError("mutual information needs disjoint regions");
  long sab = t.restrict_to(region_union(A, B)).rank();
  long sa = t.restrict_to(A).rank();
  long sb = t.restrict_to(B).rank();
  long mi = sab - sa - sb;
  return MiValue{static_cast<double>(mi), mi};
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw DimensionError("binary_entropy needs p in [0,1]");
  double h = 0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

double binary_entropy_upper(double eps) {
  if (eps < 0.0 || eps > 1.0) throw DimensionError("binary_entropy_upper needs eps in [0,1]");
  return std::exp(1.0) * std::pow(eps, 1.0 / std::log(4.0));
}

double fa_mi_deviation_bound(double eps, int size_a, int size_b) {
  return 2.0 * eps * (size_a + size_b) + 3.0 * binary_entropy(eps);
}

}  // namespace mhkit
