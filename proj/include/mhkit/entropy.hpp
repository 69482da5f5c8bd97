#pragma once

#include <optional>

#include "mhkit/dense.hpp"
#include "mhkit/tableau.hpp"

namespace mhkit {

/// Mutual information value; exact_integer is set when it came from the
/// stabilizer rank formula.
struct MiValue {
  double value = 0.0;
  std::optional<long> exact_integer;
};

/// -tr(rho log2 rho); eigenvalues below 1e-12 count as 0.
/// Requires PSD and unit trace within 1e-8.
double von_neumann(const Eigen::MatrixXcd& rho);
double entropy_from_spectrum(const Eigen::VectorXd& lam);

/// I(A:B) = E(A) + E(B) - E(AB) on a pure state; |A|+|B| <= 14, A,B disjoint.
MiValue mutual_info_dense(const StateVector& psi, const Region& A, const Region& B);

/// Lemma for stabilizer states: I(A:B) = |S_AB| - |S_A| - |S_B|, an integer.
MiValue mutual_info_stabilizer(const StabilizerTableau& t, const Region& A, const Region& B);

double binary_entropy(double p);
/// H(eps) <= e * eps^{1/ln 4} for eps in [0,1].
double binary_entropy_upper(double eps);

/// 2 eps (|A|+|B|) + 3 H(eps): how far MI can drift from the nearest
/// integer when the state is eps-close (trace distance) to stabilizer.
double fa_mi_deviation_bound(double eps, int size_a, int size_b);

}  // namespace mhkit
