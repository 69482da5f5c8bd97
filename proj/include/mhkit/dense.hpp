#pragma once

#include <complex>

#include <Eigen/Dense>

#include "mhkit/circuit.hpp"

namespace mhkit {

/// Dense complex amplitude array. Qubit 0 is the most significant index
/// bit: |x_0 x_1 ... x_{n-1}> sits at index sum x_j 2^{n-1-j}.
class StateVector {
public:
  StateVector() = default;
  /// |0^n>
  static StateVector zero_state(int n);
  static StateVector from_amplitudes(int n, Eigen::VectorXcd amps);  // checks norm (1e-10)
  static StateVector basis_state(int n, long index);

  int n() const { return n_; }
  long dim() const { return 1L << n_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }

  void apply_gate(const Gate& g);            // unitary kinds only
  void apply_circuit(const LayeredCircuit& c);
  void apply_pauli(const PauliString& p);

  /// Probability that qubit q reads 0.
  double prob_zero(int q) const;
  /// Projects qubit q onto outcome and renormalizes; returns the
  /// outcome probability (ImpossibleOutcomeError if ~0).
  double project(int q, int outcome);

  double norm() const { return amps_.norm(); }
  std::complex<double> inner(const StateVector& o) const { return amps_.dot(o.amps_); }

  Eigen::MatrixXcd density() const { return amps_ * amps_.adjoint(); }
  /// Reduced density matrix on A (increasing qubit order).
  Eigen::MatrixXcd reduced_density(const Region& A) const;
  /// Eigenvalues of the reduced state on A, computed on the smaller
  /// side of the cut (Gram matrix), cheapest route to entropies.
  Eigen::VectorXd subsystem_spectrum(const Region& A) const;

  std::complex<double> expectation(const Eigen::MatrixXcd& op, const Region& support) const;

private:
  int n_ = 0;
  Eigen::VectorXcd amps_;
};

/// Full 2^n x 2^n unitary of the circuit (n <= 13).
Eigen::MatrixXcd circuit_unitary(const LayeredCircuit& c);

/// Applies the circuit to every column of m (rows indexed like a
/// statevector on c.n() qubits).
void apply_circuit_to_columns(Eigen::MatrixXcd& m, const LayeredCircuit& c);

/// rho -> U rho U^dagger for the circuit's unitary U, without forming U.
void conjugate_density(Eigen::MatrixXcd& rho, const LayeredCircuit& c);

/// I (x) op (x) I placement of an operator on `support` into n qubits.
Eigen::MatrixXcd expand_op(const Eigen::MatrixXcd& op, const Region& support, int n);

/// Partial trace of an n-qubit density matrix down to region A.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, const Region& A, int n);

/// Trace norm ||X||_1 of a Hermitian matrix.
double trace_norm_hermitian(const Eigen::MatrixXcd& x);

}  // namespace mhkit
