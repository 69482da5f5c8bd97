#pragma once

#include <string>
#include <vector>

#include "mhkit/circuit.hpp"

namespace mhkit {

enum class BlockTag { Clifford, Qnc0 };

/// Alternating Clifford / QNC0 block decomposition. Blocks strictly
/// alternate; an empty block is inserted where two same-kind groups of
/// layers are forced next to each other (an identity circuit of the
/// other kind).
struct MhBlock {
  BlockTag tag;
  std::vector<Layer> layers;
  int depth() const { return static_cast<int>(layers.size()); }
};

struct MhDecomposition {
  int n = 0;
  std::vector<MhBlock> blocks;
  int qnc0_budget = 1;

  BlockTag starts_with() const { return blocks.empty() ? BlockTag::Clifford : blocks.front().tag; }
  int mh_level() const { return blocks.empty() ? 0 : static_cast<int>(blocks.size()) - 1; }
  LayeredCircuit recompose() const;
};

struct ComplexityReport {
  int depth = 0;
  int clifford_rounds = 0;
  int qnc0_rounds = 0;
  int mh_level = 0;
  int t_count = 0;
  int t_depth = 0;
  int fanout_depth = 0;
  int measurement_rounds = 0;
  // True when the gate set is Clifford + T only; the T-depth relation is
  // only meaningful then.
  bool clifford_t_only = false;
};

/// Greedy left-to-right block assignment. A layer of Clifford gates
/// extends a Clifford block; a layer with a non-Clifford gate opens or
/// extends a QNC0 block of depth at most qnc0_budget (all its gates
/// must touch at most 2 qubits). Clifford layers of 2-local gates are
/// absorbed into an open QNC0 block with remaining budget, which keeps
/// the block count minimal among greedy assignments.
MhDecomposition mh_decompose(const LayeredCircuit& c, int qnc0_budget);

ComplexityReport account(const LayeredCircuit& c, int qnc0_budget = 0);
ComplexityReport account(const MhDecomposition& d);

/// Names of violated inequality relations; empty when all hold.
/// Checked: the round chain  mh/2 <= clifford_rounds, qnc0_rounds <= mh/2 + 1,
/// t_depth <= t_count always, mh/2 <= t_depth when clifford_t_only,
/// fanout_depth <= 2*mh + 4, measurement_rounds <= 2*mh + 4.
std::vector<std::string> check_relations(const ComplexityReport& r);

}  // namespace mhkit
