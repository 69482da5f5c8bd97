#pragma once

#include <optional>
#include <utility>

#include "mhkit/circuit.hpp"

namespace mhkit {

/// Input qubits with a wire path to an output qubit in S.
Region back_lightcone(const LayeredCircuit& c, const Region& S);
/// Output qubits reachable from input qubits in S.
Region forward_lightcone(const LayeredCircuit& c, const Region& S);

/// Blowup B: the minimum integer with |back(S)|, |fwd(S)| <= B|S| for
/// all S. Computed as the maximum over singletons; unions of cones are
/// subadditive, so the singleton maximum already dominates every S, and
/// a singleton attains it.
int blowup(const LayeredCircuit& c);

/// The sub-circuit of gates lying on paths from back(S) inputs to S
/// outputs, re-indexed onto the qubits of back(S) (in increasing
/// order). Layer count is preserved; untouched layers become empty.
struct InducedSubcircuit {
  LayeredCircuit circuit;  // on |back(S)| qubits
  Region cone;             // back(S), giving the qubit mapping
};
InducedSubcircuit induced_subcircuit(const LayeredCircuit& c, const Region& S);

enum class DoubleConeMode {
  FwdOfBack,  // L_fwd(L_back(i)), outputs i
  BackOfFwd,  // L_back(L_fwd(i)), inputs i
};

/// First pair (i, j) from candidates, in lexicographic order, whose
/// double lightcones are disjoint; nullopt when none exists.
std::optional<std::pair<int, int>> find_disjoint_pair(const LayeredCircuit& c,
                                                      const Region& candidates,
                                                      DoubleConeMode mode);

Region double_cone(const LayeredCircuit& c, const Region& S, DoubleConeMode mode);

}  // namespace mhkit
