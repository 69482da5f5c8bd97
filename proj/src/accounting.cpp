#include "mhkit/accounting.hpp"

#include "mhkit/errors.hpp"

namespace mhkit {

LayeredCircuit MhDecomposition::recompose() const {
  LayeredCircuit c(n);
  for (const auto& b : blocks) {
    for (const auto& l : b.layers) c.push_layer(l);
  }
  return c;
}

namespace {

bool layer_is_clifford(const Layer& l) {
  for (const auto& g : l) {
    if (!g.is_clifford() && g.kind != GateKind::MEASURE_Z &&
        g.kind != GateKind::CLASSICAL_PARITY) {
      return false;
    }
  }
  return true;
}

bool layer_fits_qnc0(const Layer& l) {
  for (const auto& g : l) {
    if (g.is_measure() || g.kind == GateKind::CLASSICAL_PARITY) return false;
    if (g.arity() > 2) return false;
  }
  return true;
}

}  // namespace

MhDecomposition mh_decompose(const LayeredCircuit& c, int qnc0_budget) {
  if (qnc0_budget < 1) throw DimensionError("qnc0_budget must be >= 1");
  MhDecomposition d;
  d.n = c.n();
  d.qnc0_budget = qnc0_budget;
  auto& blocks = d.blocks;
  for (const auto& layer : c.layers()) {
    bool cliff = layer_is_clifford(layer);
    bool qnc = layer_fits_qnc0(layer);
    MhBlock* cur = blocks.empty() ? nullptr : &blocks.back();
    if (cliff) {
      if (cur && cur->tag == BlockTag::Clifford) {
        cur->layers.push_back(layer);
      } else if (cur && cur->tag == BlockTag::Qnc0 && qnc && cur->depth() < qnc0_budget) {
        cur->layers.push_back(layer);
      } else {
        blocks.push_back(MhBlock{BlockTag::Clifford, {layer}});
      }
    } else if (qnc) {
      if (cur && cur->tag == BlockTag::Qnc0 && cur->depth() < qnc0_budget) {
        cur->layers.push_back(layer);
      } else {
        if (cur && cur->tag == BlockTag::Qnc0) {
          // Two QNC0 groups forced together: identity Clifford between.
          blocks.push_back(MhBlock{BlockTag::Clifford, {}});
        }
        blocks.push_back(MhBlock{BlockTag::Qnc0, {layer}});
      }
    } else {
      throw GateClassError(
          "layer is neither all-Clifford nor 2-local; cannot place it in any block");
    }
  }
  return d;
}

namespace {

void count_layer_stats(const LayeredCircuit& c, ComplexityReport& r) {
  r.depth = c.depth();
  r.clifford_t_only = true;
  for (const auto& layer : c.layers()) {
    bool has_t = false, has_fanout = false, has_meas = false;
    for (const auto& g : layer) {
      switch (g.kind) {
        case GateKind::T:
          ++r.t_count;
          has_t = true;
          break;
        case GateKind::FANOUT: has_fanout = true; break;
        case GateKind::MEASURE_Z: has_meas = true; break;
        default: break;
      }
      if (g.kind == GateKind::GENERIC1 || g.kind == GateKind::GENERIC2 ||
          g.kind == GateKind::MEASURE_Z) {
        r.clifford_t_only = false;
      }
    }
    if (has_t) ++r.t_depth;
    if (has_fanout) ++r.fanout_depth;
    if (has_meas) ++r.measurement_rounds;
  }
}

}  // namespace

ComplexityReport account(const MhDecomposition& d) {
  ComplexityReport r;
  count_layer_stats(d.recompose(), r);
  for (const auto& b : d.blocks) {
    if (b.tag == BlockTag::Clifford) {
      ++r.clifford_rounds;
    } else {
      ++r.qnc0_rounds;
    }
  }
  r.mh_level = d.mh_level();
  return r;
}

ComplexityReport account(const LayeredCircuit& c, int qnc0_budget) {
  int budget = qnc0_budget > 0 ? qnc0_budget : std::max(1, c.depth());
  return account(mh_decompose(c, budget));
}

std::vector<std::string> check_relations(const ComplexityReport& r) {
  std::vector<std::string> v;
  if (r.mh_level > 2 * r.clifford_rounds) {
    v.push_back("mh_level/2 <= clifford_rounds violated");
  }
  if (2 * r.clifford_rounds > r.mh_level + 2) {
    v.push_back("clifford_rounds <= mh_level/2 + 1 violated");
  }
  if (r.mh_level > 2 * r.qnc0_rounds) {
    v.push_back("mh_level/2 <= qnc0_rounds violated");
  }
  if (2 * r.qnc0_rounds > r.mh_level + 2) {
    v.push_back("qnc0_rounds <= mh_level/2 + 1 violated");
  }
  if (r.t_depth > r.t_count) {
    v.push_back("t_depth <= t_count violated");
  }
  if (r.clifford_t_only && r.mh_level > 2 * r.t_depth) {
    v.push_back("mh_level/2 <= t_depth violated");
  }
  if (r.fanout_depth > 2 * r.mh_level + 4) {
    v.push_back("fanout_depth <= 2*mh_level + 4 violated");
  }
  // Stated as an equality with measurement rounds equal to Clifford
  // rounds in the source material; only the upper bound is enforced.
  if (r.measurement_rounds > 2 * r.mh_level + 4) {
    v.push_back("measurement_rounds <= 2*mh_level + 4 violated");
  }
  return v;
}

}  // namespace mhkit
