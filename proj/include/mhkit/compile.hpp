#pragma once

#include "mhkit/accounting.hpp"
#include "mhkit/simulate.hpp"

namespace mhkit {

/// Gate-teleportation layout shared by the measurement program and the
/// coherent fanout compilation: D stages of `layers_per_stage` layers on
/// blocks 0, 2, 4, ... with Bell pairs on the odd blocks.
struct TeleportLayout {
  int n = 0;
  int stages = 0;            // D
  int layers_per_stage = 1;
  int blocks() const { return stages == 0 ? 1 : 2 * stages - 1; }
  int block_qubit(int block, int i) const { return block * n + i; }
  int outcome_bits() const { return stages <= 1 ? 0 : 2 * n * (stages - 1); }
};

/// Constant-quantum-depth teleportation form of a Clifford circuit: one
/// round of Bell preps, parallel stage unitaries and Bell-basis
/// rotations, one measurement + classical parity round, one Pauli
/// correction layer. The returned CorrectionMap is the logical n-qubit
/// map; the program embeds it on the last block.
std::pair<MeasurementProgram, CorrectionMap> teleport_parallelize(const LayeredCircuit& c,
                                                                  int layers_per_stage = 1);

TeleportLayout teleport_layout(const LayeredCircuit& c, int layers_per_stage);

/// M with M(y) = (x', z'): outcome bits to Pauli corrections, built by
/// conjugating each outcome indicator through the Clifford suffix.
CorrectionMap extract_correction_map(const LayeredCircuit& c, int layers_per_stage = 1);

/// Measurement-free realization over {1,2-qubit gates, FANOUT} with
/// fanout depth at most 4 and all ancillas restored; block 0 carries
/// the circuit's action.
LayeredCircuit clifford_to_fanout(const LayeredCircuit& c, int layers_per_stage = 1);

struct GadgetReport {
  LayeredCircuit circuit;
  ComplexityReport accounting;
  int input_count = 0;   // inputs are qubits 0..m-1
  int output_qubit = 0;  // output register
  std::vector<int> expected;  // truth table, index = input bits
  std::vector<int> computed;
  bool functional_pass = false;
  bool clean = false;
  double min_ancilla_fidelity = 1.0;
};

/// |x, b> -> |x, b ^ EX^k(x)>, EX^k(x) = 1{|x| = k}; phase-collection
/// construction with one depth-1 QNC0 layer between Clifford blocks.
GadgetReport build_exact_gadget(int m, int k, bool clean);

/// |x, b> -> |x, b ^ TH^t(x)>, TH^t(x) = 1{|x| >= t}; a parity of
/// EX^k blocks for k = t..m.
GadgetReport build_threshold_gadget(int m, int t, bool clean);

/// Layered threshold-circuit description: wires 0..inputs-1 are inputs,
/// each gate appends one output wire in file order.
struct Tc0Gate {
  int layer = 0;
  int threshold = 0;
  std::vector<int> inputs;
};
struct Tc0Spec {
  int inputs = 0;
  std::vector<Tc0Gate> gates;
  /// "INPUTS n" then "GATE <layer> TH <t> <w...>" lines.
  static Tc0Spec parse(const std::string& text);
  int depth() const;
  /// Classical evaluation; returns the last gate's output.
  int eval(const std::vector<int>& bits) const;
};

struct Tc0Compiled {
  LayeredCircuit circuit;
  ComplexityReport accounting;
  int output_qubit = 0;
  std::vector<int> wire_qubits;  // wire id -> qubit carrying it
  bool functional_pass = false;  // set when inputs <= 10
};

Tc0Compiled compile_tc0(const Tc0Spec& spec);

}  // namespace mhkit
