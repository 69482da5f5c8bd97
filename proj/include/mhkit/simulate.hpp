#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mhkit/dense.hpp"
#include "mhkit/tableau.hpp"

namespace mhkit {

/// Conjugates every generator gate-by-gate; rank preserved. Clifford
/// gates only.
StabilizerTableau conjugate_by_clifford(const StabilizerTableau& t, const LayeredCircuit& c);

/// Alias for conjugate_by_clifford on state tableaux (scales to n >> 10^3).
StabilizerTableau tableau_run(const LayeredCircuit& c, const StabilizerTableau& t0);

/// Exact layer-by-layer dense run (n <= 26, no measurements).
StateVector dense_run(const LayeredCircuit& c, const StateVector& psi0);

/// F2-linear map from accumulated measurement outcomes to Pauli
/// corrections (x bits, then z bits, on the program's n qubits).
struct CorrectionMap {
  int n = 0;              // corrected qubits
  int outcome_bits = 0;   // columns
  std::vector<BitVec> rows;  // 2n rows, each of outcome_bits columns

  /// (x, z) masks for outcome vector y.
  std::pair<BitVec, BitVec> apply(const BitVec& y) const;
  PauliString correction_pauli(const BitVec& y) const;  // X(x)Z(z), phase 0
};

/// One adaptive round: a unitary block, a measured region, and an
/// optional F2 map from all outcomes seen so far to a Pauli correction.
struct MeasurementRound {
  LayeredCircuit block;
  Region measured;
  std::optional<CorrectionMap> correction;  // applied after this round's outcomes
};

struct MeasurementProgram {
  int n = 0;
  std::vector<MeasurementRound> rounds;
  int total_outcome_bits() const;
};

struct Transcript {
  BitVec outcomes;                 // all measured bits in program order
  std::vector<double> probabilities;  // per measured bit
  std::vector<PauliString> corrections_applied;
};

/// Outcomes are drawn from the seeded generator unless `forced` supplies
/// every bit. Deterministic given the seed.
struct OutcomeSource {
  std::optional<BitVec> forced;
  std::uint64_t seed = 0;
};

std::pair<StateVector, Transcript> run_measurement_program(const MeasurementProgram& p,
                                                           const StateVector& psi0,
                                                           const OutcomeSource& src);

/// Stabilizer-path execution of the same program (Clifford blocks only).
std::pair<StabilizerTableau, Transcript> run_measurement_program_tableau(
    const MeasurementProgram& p, const StabilizerTableau& t0, const OutcomeSource& src);

/// Expectation of a Hermitian O on region S of the state q . cl |0^n>,
/// where cl is Clifford and q is shallow. Cost is polynomial in n and
/// exponential only in |back_q(S)| (refused above 20).
double estimate_local_observable_a1cq(const LayeredCircuit& cl, const LayeredCircuit& q,
                                      const Eigen::MatrixXcd& obs, const Region& S);

/// Expectation of a Pauli observable on a stabilizer state: +-2^-k or 0.
double pauli_expectation(const StabilizerTableau& t, const PauliString& p);

}  // namespace mhkit
