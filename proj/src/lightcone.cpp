#include "mhkit/lightcone.hpp"

#include <algorithm>

namespace mhkit {

namespace {

std::vector<bool> to_mask(const Region& S, int n) {
  std::vector<bool> m(n, false);
  for (int q : S) m[q] = true;
  return m;
}

Region from_mask(const std::vector<bool>& m) {
  std::vector<int> qs;
  for (int q = 0; q < static_cast<int>(m.size()); ++q) {
    if (m[q]) qs.push_back(q);
  }
  return Region(qs);
}

bool touches(const Gate& g, const std::vector<bool>& m) {
  for (int q : g.qubits) {
    if (m[q]) return true;
  }
  return false;
}

void absorb(const Gate& g, std::vector<bool>& m) {
  for (int q : g.qubits) m[q] = true;
}

}  // namespace

Region back_lightcone(const LayeredCircuit& c, const Region& S) {
  S.validate(c.n());
  std::vector<bool> m = to_mask(S, c.n());
  for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
    for (const auto& g : *it) {
      if (touches(g, m)) absorb(g, m);
    }
  }
  return from_mask(m);
}

Region forward_lightcone(const LayeredCircuit& c, const Region& S) {
  S.validate(c.n());
  std::vector<bool> m = to_mask(S, c.n());
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) {
      if (touches(g, m)) absorb(g, m);
    }
  }
  return from_mask(m);
}

int blowup(const LayeredCircuit& c) {
  int b = 1;
  for (int q = 0; q < c.n(); ++q) {
    Region s({q});
    b = std::max(b, back_lightcone(c, s).size());
    b = std::max(b, forward_lightcone(c, s).size());
  }
  return b;
}

InducedSubcircuit induced_subcircuit(const LayeredCircuit& c, const Region& S) {
  S.validate(c.n());
  // Backward sweep, remembering the active set entering each layer.
  std::vector<std::vector<bool>> active_after(c.depth() + 1);
  std::vector<bool> m = to_mask(S, c.n());
  active_after[c.depth()] = m;
  for (int li = c.depth() - 1; li >= 0; --li) {
    for (const auto& g : c.layer(li)) {
      if (touches(g, m)) absorb(g, m);
    }
    active_after[li] = m;
  }
  Region cone = from_mask(m);
  std::vector<int> remap(c.n(), -1);
  for (int i = 0; i < cone.size(); ++i) remap[cone[i]] = i;

  LayeredCircuit sub(cone.size());
  for (int li = 0; li < c.depth(); ++li) {
    Layer l;
    // A gate is on a path to S iff it touches the active set of the
    // following cut.
    const auto& cut = active_after[li + 1];
    for (const auto& g : c.layer(li)) {
      if (!touches(g, cut)) continue;
      Gate h = g;
      for (auto& q : h.qubits) q = remap[q];
      l.push_back(std::move(h));
    }
    sub.push_layer(std::move(l));
  }
  return InducedSubcircuit{std::move(sub), std::move(cone)};
}

Region double_cone(const LayeredCircuit& c, const Region& S, DoubleConeMode mode) {
  if (mode == DoubleConeMode::FwdOfBack) {
    return forward_lightcone(c, back_lightcone(c, S));
  }
  return back_lightcone(c, forward_lightcone(c, S));
}

std::optional<std::pair<int, int>> find_disjoint_pair(const LayeredCircuit& c,
                                                      const Region& candidates,
                                                      DoubleConeMode mode) {
  std::vector<Region> cones;
  cones.reserve(candidates.size());
  for (int q : candidates) cones.push_back(double_cone(c, Region({q}), mode));
  for (int i = 0; i < candidates.size(); ++i) {
    for (int j = i + 1; j < candidates.size(); ++j) {
      if (disjoint(cones[i], cones[j])) {
        return std::make_pair(candidates[i], candidates[j]);
      }
    }
  }
  return std::nullopt;
}

}  // namespace mhkit
