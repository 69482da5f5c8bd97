#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mhkit/pauli.hpp"

namespace mhkit {

enum class GateKind {
  H,
  S,
  X,
  Y,
  Z,
  CNOT,
  CZ,
  SWAP,
  T,
  FANOUT,    // |b, x1..xm> -> |b, x1^b..xm^b>; Clifford
  GENERIC1,  // arbitrary 2x2 unitary
  GENERIC2,  // arbitrary 4x4 unitary
  MEASURE_Z,
  CLASSICAL_PARITY,  // classical parity feeding a Pauli correction (program-level)
};

const char* gate_kind_name(GateKind k);
bool is_clifford_kind(GateKind k);

struct Gate {
  GateKind kind;
  std::vector<int> qubits;           // distinct; FANOUT: control first
  Eigen::MatrixXcd matrix;           // GENERIC1/GENERIC2 only
  int classical_bit = -1;            // MEASURE_Z target register
  std::vector<int> parity_sources;   // CLASSICAL_PARITY inputs

  static Gate simple(GateKind k, std::vector<int> qubits);
  static Gate generic1(int q, const Eigen::Matrix2cd& u);
  static Gate generic2(int q0, int q1, const Eigen::Matrix4cd& u);
  static Gate fanout(std::vector<int> qubits);
  static Gate measure_z(int q, int cbit);

  int arity() const { return static_cast<int>(qubits.size()); }
  bool is_clifford() const { return is_clifford_kind(kind); }
  bool is_measure() const { return kind == GateKind::MEASURE_Z; }
  /// Checks distinct qubits, arity, unitarity of GENERIC matrices (1e-10).
  void validate(int n) const;
};

using Layer = std::vector<Gate>;

/// Gate list grouped into layers of pairwise-disjoint supports.
class LayeredCircuit {
public:
  LayeredCircuit() = default;
  explicit LayeredCircuit(int n) : n_(n) {}
  LayeredCircuit(int n, std::vector<Layer> layers);

  int n() const { return n_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  const std::vector<Layer>& layers() const { return layers_; }
  const Layer& layer(int i) const { return layers_[i]; }

  /// Appends a layer after validating disjoint supports.
  void push_layer(Layer layer);
  /// Appends the layers of another circuit (same n).
  void append(const LayeredCircuit& c);

  bool all_clifford() const;
  bool has_measurement() const;
  LayeredCircuit reversed() const;  // adjoint circuit (layers and gates inverted)

  bool operator==(const LayeredCircuit& o) const;

private:
  int n_ = 0;
  std::vector<Layer> layers_;
};

/// Parses the .mhq text format: one gate per line, layers separated by
/// '/' or blank lines, '#' comments; GENERIC matrices as re,im pairs.
LayeredCircuit parse_mhq(const std::string& text);
/// Byte-deterministic emitter (floats at 12 significant digits).
std::string emit_mhq(const LayeredCircuit& c);

/// 2x2 / 4x4 matrices for the fixed gate kinds (not FANOUT/MEASURE).
Eigen::MatrixXcd gate_matrix(const Gate& g);

/// Conjugates p in place by gate g (Clifford kinds only): p -> g p g^dagger.
void conjugate_pauli(PauliString& p, const Gate& g);

/// Floats at 12 significant digits; used by every serializer.
std::string format_double12(double v);

}  // namespace mhkit
