#include "mhkit/compile.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "mhkit/errors.hpp"
#include "mhkit/sparse_state.hpp"

namespace mhkit {

namespace {

std::vector<LayeredCircuit> split_stages(const LayeredCircuit& c, int layers_per_stage) {
  if (layers_per_stage < 1) throw DimensionError("layers_per_stage must be >= 1");
  std::vector<LayeredCircuit> stages;
  LayeredCircuit cur(c.n());
  for (const auto& layer : c.layers()) {
    cur.push_layer(layer);
    if (cur.depth() == layers_per_stage) {
      stages.push_back(std::move(cur));
      cur = LayeredCircuit(c.n());
    }
  }
  if (cur.depth() > 0) stages.push_back(std::move(cur));
  return stages;
}

void require_clifford(const LayeredCircuit& c) {
  if (!c.all_clifford()) {
    throw GateClassError("teleportation compilation needs a Clifford-only circuit");
  }
}

// Suffix-conjugated outcome indicator Paulis. Outcome bits are laid out
// stage-major: stage k in 1..D-1 owns bits [(k-1)2n, k*2n), z bits first.
// op_order lists bits as factors appear in the branch operator, leftmost
// first: stages D-1 down to 1, X factors then Z factors within a stage.
struct OutcomeFactors {
  int n = 0;
  int bits = 0;
  std::vector<PauliString> factor;  // by outcome bit
  std::vector<int> op_order;
};

OutcomeFactors outcome_factors(const std::vector<LayeredCircuit>& stages, int n) {
  const int d = static_cast<int>(stages.size());
  OutcomeFactors out;
  out.n = n;
  out.bits = d <= 1 ? 0 : 2 * n * (d - 1);
  out.factor.assign(out.bits, PauliString(n));
  auto conj_suffix = [&](PauliString p, int from_stage) {
    for (int s = from_stage; s < d; ++s) {
      for (const auto& layer : stages[s].layers()) {
        for (const auto& g : layer) conjugate_pauli(p, g);
      }
    }
    return p;
  };
  for (int k = 1; k <= d - 1; ++k) {
    for (int i = 0; i < n; ++i) {
      int zbit = (k - 1) * 2 * n + i;
      int xbit = (k - 1) * 2 * n + n + i;
      out.factor[zbit] = conj_suffix(PauliString::single(n, i, 'Z'), k);
      out.factor[xbit] = conj_suffix(PauliString::single(n, i, 'X'), k);
    }
  }
  for (int k = d - 1; k >= 1; --k) {
    for (int i = 0; i < n; ++i) out.op_order.push_back((k - 1) * 2 * n + n + i);  // X
    for (int i = 0; i < n; ++i) out.op_order.push_back((k - 1) * 2 * n + i);      // Z
  }
  return out;
}

CorrectionMap map_from_factors(const OutcomeFactors& f) {
  CorrectionMap m;
  m.n = f.n;
  m.outcome_bits = f.bits;
  m.rows.assign(2 * f.n, BitVec(f.bits));
  for (int b = 0; b < f.bits; ++b) {
    for (int i = 0; i < f.n; ++i) {
      if (f.factor[b].x().get(i)) m.rows[i].set(b, true);
      if (f.factor[b].z().get(i)) m.rows[f.n + i].set(b, true);
    }
  }
  return m;
}

Layer remap_layer(const Layer& l, int offset) {
  Layer out = l;
  for (auto& g : out) {
    for (auto& q : g.qubits) q += offset;
  }
  return out;
}

}  // namespace

TeleportLayout teleport_layout(const LayeredCircuit& c, int layers_per_stage) {
  TeleportLayout lay;
  lay.n = c.n();
  lay.layers_per_stage = layers_per_stage;
  lay.stages = static_cast<int>(split_stages(c, layers_per_stage).size());
  return lay;
}

CorrectionMap extract_correction_map(const LayeredCircuit& c, int layers_per_stage) {
  require_clifford(c);
  return map_from_factors(outcome_factors(split_stages(c, layers_per_stage), c.n()));
}

std::pair<MeasurementProgram, CorrectionMap> teleport_parallelize(const LayeredCircuit& c,
                                                                  int layers_per_stage) {
  require_clifford(c);
  const int n = c.n();
  auto stages = split_stages(c, layers_per_stage);
  const int d = static_cast<int>(stages.size());
  OutcomeFactors factors = outcome_factors(stages, n);
  CorrectionMap logical = map_from_factors(factors);

  MeasurementProgram prog;
  if (d <= 1) {
    prog.n = n;
    MeasurementRound round;
    round.block = d == 0 ? LayeredCircuit(n) : stages[0];
    prog.rounds.push_back(std::move(round));
    return {std::move(prog), std::move(logical)};
  }

  const int blocks = 2 * d - 1;
  const int total = blocks * n;
  prog.n = total;
  LayeredCircuit block(total);

  // Bell preps on the odd/even ancilla block pairs.
  Layer h_layer, cnot_layer;
  for (int k = 1; k <= d - 1; ++k) {
    for (int i = 0; i < n; ++i) {
      h_layer.push_back(Gate::simple(GateKind::H, {(2 * k - 1) * n + i}));
      cnot_layer.push_back(Gate::simple(GateKind::CNOT, {(2 * k - 1) * n + i, 2 * k * n + i}));
    }
  }
  block.push_layer(std::move(h_layer));
  block.push_layer(std::move(cnot_layer));

  // Parallel stage unitaries: stage k acts on block 2(k-1).
  for (int j = 0; j < layers_per_stage; ++j) {
    Layer merged;
    for (int k = 0; k < d; ++k) {
      if (j < stages[k].depth()) {
        Layer part = remap_layer(stages[k].layer(j), 2 * k * n);
        merged.insert(merged.end(), part.begin(), part.end());
      }
    }
    if (!merged.empty()) block.push_layer(std::move(merged));
  }

  // Bell-basis rotations: CNOT data -> bell half, then H on data.
  Layer bt_cnot, bt_h;
  for (int k = 1; k <= d - 1; ++k) {
    for (int i = 0; i < n; ++i) {
      bt_cnot.push_back(Gate::simple(GateKind::CNOT, {(2 * k - 2) * n + i, (2 * k - 1) * n + i}));
      bt_h.push_back(Gate::simple(GateKind::H, {(2 * k - 2) * n + i}));
    }
  }
  block.push_layer(std::move(bt_cnot));
  block.push_layer(std::move(bt_h));

  MeasurementRound round;
  round.block = std::move(block);
  std::vector<int> measured(2 * (d - 1) * n);
  for (std::size_t i = 0; i < measured.size(); ++i) measured[i] = static_cast<int>(i);
  round.measured = Region(measured);

  CorrectionMap embedded;
  embedded.n = total;
  embedded.outcome_bits = factors.bits;
  embedded.rows.assign(2 * total, BitVec(factors.bits));
  const int last = (blocks - 1) * n;
  for (int i = 0; i < n; ++i) {
    embedded.rows[last + i] = logical.rows[i];
    embedded.rows[total + last + i] = logical.rows[n + i];
  }
  round.correction = std::move(embedded);
  prog.rounds.push_back(std::move(round));
  return {std::move(prog), std::move(logical)};
}

namespace {

// Phase profile of the corrected branch operator: with corrections
// Z(z')X(x') already applied, branch y is left with scalar i^kappa(y),
// kappa(y) = sum lambda_b y_b + 2 sum mu_{bb'} y_b y_{b'} (mod 4).
struct PhaseProfile {
  std::vector<int> lambda;                    // per outcome bit, in Z4
  std::vector<std::pair<int, int>> cz_edges;  // mu = 1 pairs
};

PhaseProfile phase_profile(const OutcomeFactors& f, const CorrectionMap& m) {
  auto kappa = [&](const BitVec& y) {
    PauliString acc = PauliString::identity(f.n);
    for (int bit : f.op_order) {
      if (y.get(bit)) acc = acc * f.factor[bit];
    }
    auto [x, z] = m.apply(y);
    PauliString corr(f.n, x, z, 2 * (static_cast<int>(and_bits(x, z).popcount()) & 1));
    PauliString total = corr * acc;
    if (!total.is_identity_bits()) {
      throw std::logic_error("correction map does not cancel the branch operator");
    }
    return total.phase();
  };
  PhaseProfile out;
  out.lambda.assign(f.bits, 0);
  for (int b = 0; b < f.bits; ++b) {
    BitVec y(f.bits);
    y.set(b, true);
    out.lambda[b] = kappa(y);
  }
  for (int b = 0; b < f.bits; ++b) {
    for (int b2 = b + 1; b2 < f.bits; ++b2) {
      BitVec y(f.bits);
      y.set(b, true);
      y.set(b2, true);
      int diff = (kappa(y) - out.lambda[b] - out.lambda[b2]) & 3;
      if (diff & 1) throw std::logic_error("branch phase is not quadratic over F2");
      if (diff == 2) out.cz_edges.push_back({b, b2});
    }
  }
  return out;
}

std::vector<Layer> schedule_two_qubit(const std::vector<std::pair<int, int>>& edges,
                                      GateKind kind) {
  std::vector<Layer> layers;
  std::vector<std::pair<int, int>> pending = edges;
  while (!pending.empty()) {
    Layer layer;
    std::vector<std::pair<int, int>> rest;
    std::set<int> used;
    for (const auto& e : pending) {
      if (used.count(e.first) || used.count(e.second)) {
        rest.push_back(e);
        continue;
      }
      used.insert(e.first);
      used.insert(e.second);
      layer.push_back(Gate::simple(kind, {e.first, e.second}));
    }
    layers.push_back(std::move(layer));
    pending = std::move(rest);
  }
  return layers;
}

}  // namespace

LayeredCircuit clifford_to_fanout(const LayeredCircuit& c, int layers_per_stage) {
  require_clifford(c);
  const int n = c.n();
  auto stages = split_stages(c, layers_per_stage);
  const int d = static_cast<int>(stages.size());
  if (d <= 1) return c;

  OutcomeFactors factors = outcome_factors(stages, n);
  CorrectionMap logical = map_from_factors(factors);
  PhaseProfile phases = phase_profile(factors, logical);

  const int blocks = 2 * d - 1;
  const int a = factors.bits;  // outcome qubits are 0..a-1 after rotations
  int next = blocks * n;
  // Copy qubits per (row, bit) with M[row][bit] = 1; parity targets per row.
  std::vector<std::vector<std::pair<int, int>>> row_copies(2 * n);  // (bit, copy qubit)
  std::vector<std::vector<int>> bit_copies(a);
  for (int r = 0; r < 2 * n; ++r) {
    for (int b = 0; b < a; ++b) {
      if (logical.rows[r].get(b)) {
        row_copies[r].push_back({b, next});
        bit_copies[b].push_back(next);
        ++next;
      }
    }
  }
  std::vector<int> parity_target(2 * n, -1);
  for (int r = 0; r < 2 * n; ++r) {
    if (!row_copies[r].empty()) parity_target[r] = next++;
  }
  const int total = next;
  const int last = (blocks - 1) * n;

  LayeredCircuit out(total);
  // Bell preps, parallel stages, Bell-basis rotations (as in the program).
  Layer h_layer, cnot_layer;
  for (int k = 1; k <= d - 1; ++k) {
    for (int i = 0; i < n; ++i) {
      h_layer.push_back(Gate::simple(GateKind::H, {(2 * k - 1) * n + i}));
      cnot_layer.push_back(Gate::simple(GateKind::CNOT, {(2 * k - 1) * n + i, 2 * k * n + i}));
    }
  }
  out.push_layer(std::move(h_layer));
  out.push_layer(std::move(cnot_layer));
  for (int j = 0; j < layers_per_stage; ++j) {
    Layer merged;
    for (int k = 0; k < d; ++k) {
      if (j < stages[k].depth()) {
        Layer part = remap_layer(stages[k].layer(j), 2 * k * n);
        merged.insert(merged.end(), part.begin(), part.end());
      }
    }
    if (!merged.empty()) out.push_layer(std::move(merged));
  }
  Layer bt_cnot, bt_h;
  for (int k = 1; k <= d - 1; ++k) {
    for (int i = 0; i < n; ++i) {
      bt_cnot.push_back(Gate::simple(GateKind::CNOT, {(2 * k - 2) * n + i, (2 * k - 1) * n + i}));
      bt_h.push_back(Gate::simple(GateKind::H, {(2 * k - 2) * n + i}));
    }
  }
  out.push_layer(std::move(bt_cnot));
  out.push_layer(std::move(bt_h));

  // Fanout 1/4: copy each outcome qubit once per correction row using it.
  auto copy_fanout_layer = [&]() {
    Layer l;
    for (int b = 0; b < a; ++b) {
      if (bit_copies[b].empty()) continue;
      std::vector<int> qs = {b};
      qs.insert(qs.end(), bit_copies[b].begin(), bit_copies[b].end());
      l.push_back(Gate::fanout(std::move(qs)));
    }
    return l;
  };
  // Fanout 2/3: parity of the copies into the row's target, conjugated
  // by Hadamards.
  auto parity_h_layer = [&]() {
    Layer l;
    for (int r = 0; r < 2 * n; ++r) {
      if (parity_target[r] < 0) continue;
      l.push_back(Gate::simple(GateKind::H, {parity_target[r]}));
      for (auto& [bit, cq] : row_copies[r]) l.push_back(Gate::simple(GateKind::H, {cq}));
    }
    return l;
  };
  auto parity_fanout_layer = [&]() {
    Layer l;
    for (int r = 0; r < 2 * n; ++r) {
      if (parity_target[r] < 0) continue;
      std::vector<int> qs = {parity_target[r]};
      for (auto& [bit, cq] : row_copies[r]) qs.push_back(cq);
      l.push_back(Gate::fanout(std::move(qs)));
    }
    return l;
  };

  out.push_layer(copy_fanout_layer());
  out.push_layer(parity_h_layer());
  out.push_layer(parity_fanout_layer());
  out.push_layer(parity_h_layer());

  // Controlled corrections on the final block: X rows then Z rows.
  Layer cx_layer, cz_layer;
  for (int i = 0; i < n; ++i) {
    if (parity_target[i] >= 0) {
      cx_layer.push_back(Gate::simple(GateKind::CNOT, {parity_target[i], last + i}));
    }
    if (parity_target[n + i] >= 0) {
      cz_layer.push_back(Gate::simple(GateKind::CZ, {parity_target[n + i], last + i}));
    }
  }
  if (!cx_layer.empty()) out.push_layer(std::move(cx_layer));
  if (!cz_layer.empty()) out.push_layer(std::move(cz_layer));

  // Residual branch phases i^{-kappa(y)}: S-power gates and CZ edges on
  // the outcome qubits.
  Layer s_layer, z_layer;
  for (int b = 0; b < a; ++b) {
    int rem = (4 - phases.lambda[b]) & 3;
    if (rem & 1) s_layer.push_back(Gate::simple(GateKind::S, {b}));
    if (rem & 2) z_layer.push_back(Gate::simple(GateKind::Z, {b}));
  }
  if (!s_layer.empty()) out.push_layer(std::move(s_layer));
  if (!z_layer.empty()) out.push_layer(std::move(z_layer));
  for (auto& l : schedule_two_qubit(phases.cz_edges, GateKind::CZ)) {
    out.push_layer(std::move(l));
  }

  // Uncompute parities and copies.
  out.push_layer(parity_h_layer());
  out.push_layer(parity_fanout_layer());
  out.push_layer(parity_h_layer());
  out.push_layer(copy_fanout_layer());

  // Outcome registers are now uniform superpositions; rotate them home.
  Layer final_h;
  for (int b = 0; b < a; ++b) final_h.push_back(Gate::simple(GateKind::H, {b}));
  out.push_layer(std::move(final_h));

  Layer swap_layer;
  for (int i = 0; i < n; ++i) {
    swap_layer.push_back(Gate::simple(GateKind::SWAP, {i, last + i}));
  }
  out.push_layer(std::move(swap_layer));
  return out;
}

namespace {

long krawtchouk(int m, int k, int s) {
  // sum over |w| = k of (-1)^{<s,w>}; depends on |s| only.
  long total = 0;
  std::vector<int> idx(k);
  if (k == 0) return 1;
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    int par = 0;
    for (int i : idx) {
      if (s & (1 << i)) par ^= 1;
    }
    total += par ? -1 : 1;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

struct ExWires {
  int m = 0, k = 0;
  std::vector<int> x;
  int o = -1;
  std::vector<int> parity;  // index s, [0] unused
  std::vector<int> copies;  // index s
};

// Shared assembly for one or more phase-collection blocks running in
// parallel: pre-layers (H on outputs, CNOT parity forest, copy fanout),
// one diagonal QNC0 layer, and the mirrored post-layers.
struct PhaseBlockBuilder {
  std::vector<std::pair<int, int>> forest_edges;
  Layer h_out, fanouts, diag;

  void add_instance(const ExWires& w) {
    const int m = w.m;
    const long pow2 = 1L << m;
    h_out.push_back(Gate::simple(GateKind::H, {w.o}));
    for (long s = 1; s < pow2; ++s) {
      for (int j = 0; j < m; ++j) {
        if (s & (1L << j)) forest_edges.push_back({w.x[j], w.parity[s]});
      }
    }
    std::vector<int> fan = {w.o};
    fan.insert(fan.end(), w.copies.begin(), w.copies.end());
    fanouts.push_back(Gate::fanout(std::move(fan)));
    for (long s = 0; s < pow2; ++s) {
      long kraw = krawtchouk(m, w.k, static_cast<int>(s));
      if (kraw == 0) continue;
      double theta = std::numbers::pi * static_cast<double>(kraw) / static_cast<double>(pow2);
      if (s == 0) {
        Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
        u(1, 1) = std::polar(1.0, theta);
        diag.push_back(Gate::generic1(w.copies[0], u));
      } else {
        Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
        u(2, 2) = std::polar(1.0, theta);   // copy=1, parity=0
        u(3, 3) = std::polar(1.0, -theta);  // copy=1, parity=1
        diag.push_back(Gate::generic2(w.copies[s], w.parity[s], u));
      }
    }
  }

  std::vector<Layer> forest_layers() const {
    std::vector<Layer> layers;
    auto pending = forest_edges;
    while (!pending.empty()) {
      Layer layer;
      std::vector<std::pair<int, int>> rest;
      std::set<int> used;
      for (const auto& e : pending) {
        if (used.count(e.first) || used.count(e.second)) {
          rest.push_back(e);
          continue;
        }
        used.insert(e.first);
        used.insert(e.second);
        layer.push_back(Gate::simple(GateKind::CNOT, {e.first, e.second}));
      }
      layers.push_back(std::move(layer));
      pending = std::move(rest);
    }
    return layers;
  }

  void emit_pre(LayeredCircuit& c) const {
    if (!h_out.empty()) c.push_layer(h_out);
    for (auto& l : forest_layers()) c.push_layer(l);
    if (!fanouts.empty()) c.push_layer(fanouts);
  }
  void emit_diag(LayeredCircuit& c) const {
    if (!diag.empty()) c.push_layer(diag);
  }
  void emit_post(LayeredCircuit& c) const {
    if (!fanouts.empty()) c.push_layer(fanouts);
    auto layers = forest_layers();
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) c.push_layer(*it);
    if (!h_out.empty()) c.push_layer(h_out);
  }
};

int classical_ex(int m, int k, long x) { return std::popcount(static_cast<unsigned long>(x)) == k; }
int classical_th(int m, int t, long x) {
  return std::popcount(static_cast<unsigned long>(x)) >= t;
}

// Truth-table and ancilla checks through the sparse simulator.
void verify_gadget(GadgetReport& rep, int m, const std::function<int(long)>& expected_fn) {
  const int total = rep.circuit.n();
  rep.functional_pass = true;
  rep.min_ancilla_fidelity = 1.0;
  std::vector<int> anc;
  for (int q = m + 1; q < total; ++q) anc.push_back(q);
  BitVec anc_zero(static_cast<int>(anc.size()));
  for (long x = 0; x < (1L << m); ++x) {
    BitVec in(total);
    for (int j = 0; j < m; ++j) in.set(j, (x >> j) & 1);
    SparseState st = SparseState::basis(in);
    st.apply_circuit(rep.circuit);
    int expect = expected_fn(x);
    rep.expected.push_back(expect);
    double p1 = st.prob_one(m);
    int got = p1 > 0.5 ? 1 : 0;
    rep.computed.push_back(got);
    if (got != expect || std::abs(p1 - expect) > 1e-9) rep.functional_pass = false;
    if (rep.clean) {
      double fid = st.mass_with_bits(anc, anc_zero);
      rep.min_ancilla_fidelity = std::min(rep.min_ancilla_fidelity, fid);
    }
    // Input register must ride through untouched.
    std::vector<int> xs(m);
    for (int j = 0; j < m; ++j) xs[j] = j;
    BitVec xbits(m);
    for (int j = 0; j < m; ++j) xbits.set(j, (x >> j) & 1);
    if (st.mass_with_bits(xs, xbits) < 1.0 - 1e-9) rep.functional_pass = false;
  }
}

}  // namespace

GadgetReport build_exact_gadget(int m, int k, bool clean) {
  if (m < 1 || m > 8) throw FeasibilityError("exact gadget fan-in capped at 8");
  if (k < 0 || k > m) throw DimensionError("infeasible k for EX");
  const long pow2 = 1L << m;
  ExWires w;
  w.m = m;
  w.k = k;
  for (int j = 0; j < m; ++j) w.x.push_back(j);
  w.o = m;
  int next = m + 1;
  w.parity.assign(pow2, -1);
  for (long s = 1; s < pow2; ++s) w.parity[s] = next++;
  for (long s = 0; s < pow2; ++s) w.copies.push_back(next++);

  PhaseBlockBuilder pb;
  pb.add_instance(w);
  LayeredCircuit circuit(next);
  pb.emit_pre(circuit);
  pb.emit_diag(circuit);
  pb.emit_post(circuit);

  GadgetReport rep;
  rep.circuit = std::move(circuit);
  rep.input_count = m;
  rep.output_qubit = m;
  rep.clean = true;  // the direct construction restores its ancillas
  (void)clean;
  rep.accounting = account(rep.circuit, 1);
  verify_gadget(rep, m, [&](long x) { return classical_ex(m, k, x); });
  return rep;
}

GadgetReport build_threshold_gadget(int m, int t, bool clean) {
  if (m < 1 || m > 8) throw FeasibilityError("threshold gadget fan-in capped at 8");
  if (t < 0 || t > m) throw DimensionError("infeasible t for TH");
  const long pow2 = 1L << m;
  int next = m + 1;  // inputs 0..m-1, output b = m
  PhaseBlockBuilder pb;
  std::vector<ExWires> insts;
  for (int k = t; k <= m; ++k) {
    ExWires w;
    w.m = m;
    w.k = k;
    for (int j = 0; j < m; ++j) w.x.push_back(j);
    w.o = next++;
    w.parity.assign(pow2, -1);
    for (long s = 1; s < pow2; ++s) w.parity[s] = next++;
    for (long s = 0; s < pow2; ++s) w.copies.push_back(next++);
    pb.add_instance(w);
    insts.push_back(std::move(w));
  }
  LayeredCircuit circuit(next);
  pb.emit_pre(circuit);
  pb.emit_diag(circuit);
  pb.emit_post(circuit);
  // Collect the disjoint EX outcomes into b by parity.
  for (const auto& w : insts) {
    circuit.push_layer({Gate::simple(GateKind::CNOT, {w.o, m})});
  }
  if (clean) {
    pb.emit_pre(circuit);
    pb.emit_diag(circuit);
    pb.emit_post(circuit);
  }

  GadgetReport rep;
  rep.circuit = std::move(circuit);
  rep.input_count = m;
  rep.output_qubit = m;
  rep.clean = clean;
  rep.accounting = account(rep.circuit, 1);
  verify_gadget(rep, m, [&](long x) { return classical_th(m, t, x); });
  return rep;
}

Tc0Spec Tc0Spec::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Tc0Spec spec;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "INPUTS") {
      if (!(ls >> spec.inputs)) throw ParseError("INPUTS needs a count", line_no);
    } else if (head == "GATE") {
      Tc0Gate g;
      std::string kind;
      if (!(ls >> g.layer >> kind >> g.threshold)) {
        throw ParseError("expected GATE <layer> TH <t> <wires...>", line_no);
      }
      if (kind != "TH") throw ParseError("only TH gates are supported", line_no);
      int w;
      while (ls >> w) g.inputs.push_back(w);
      if (g.inputs.empty()) throw ParseError("gate needs input wires", line_no);
      spec.gates.push_back(std::move(g));
    } else {
      throw ParseError("unknown directive '" + head + "'", line_no);
    }
  }
  // Wire validity: inputs or outputs of strictly earlier layers.
  for (std::size_t gi = 0; gi < spec.gates.size(); ++gi) {
    for (int w : spec.gates[gi].inputs) {
      if (w < 0) throw ParseError("negative wire", 0);
      if (w >= spec.inputs) {
        int src = w - spec.inputs;
        if (src >= static_cast<int>(spec.gates.size()) ||
            spec.gates[src].layer >= spec.gates[gi].layer) {
          throw ParseError("wire " + std::to_string(w) + " not available to its gate", 0);
        }
      }
    }
  }
  return spec;
}

int Tc0Spec::depth() const {
  int d = 0;
  for (const auto& g : gates) d = std::max(d, g.layer);
  return d;
}

int Tc0Spec::eval(const std::vector<int>& bits) const {
  std::vector<int> wires(bits);
  wires.resize(inputs + gates.size(), 0);
  // Gates are listed in a valid order by construction of parse().
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    int sum = 0;
    for (int w : gates[gi].inputs) sum += wires[w];
    wires[inputs + gi] = sum >= gates[gi].threshold ? 1 : 0;
  }
  return gates.empty() ? 0 : wires[inputs + gates.size() - 1];
}

Tc0Compiled compile_tc0(const Tc0Spec& spec) {
  for (const auto& g : spec.gates) {
    if (static_cast<int>(g.inputs.size()) > 8) {
      throw FeasibilityError("TC0 compilation: threshold fan-in capped at 8");
    }
  }
  if (spec.depth() > 3) throw FeasibilityError("TC0 compilation capped at depth 3");

  Tc0Compiled out;
  out.wire_qubits.resize(spec.inputs + spec.gates.size());
  int next = 0;
  for (int i = 0; i < spec.inputs; ++i) out.wire_qubits[i] = next++;
  for (std::size_t gi = 0; gi < spec.gates.size(); ++gi) {
    out.wire_qubits[spec.inputs + gi] = next++;
  }

  // One phase-collection pass per classical layer.
  std::vector<std::vector<int>> by_layer(spec.depth() + 1);
  for (std::size_t gi = 0; gi < spec.gates.size(); ++gi) {
    by_layer[spec.gates[gi].layer].push_back(static_cast<int>(gi));
  }

  // First pass to size the circuit.
  struct GateInst {
    int gate_index;
    std::vector<ExWires> exs;
  };
  std::vector<std::vector<GateInst>> layer_insts(by_layer.size());
  for (std::size_t l = 1; l < by_layer.size(); ++l) {
    for (int gi : by_layer[l]) {
      const auto& g = spec.gates[gi];
      const int m = static_cast<int>(g.inputs.size());
      const long pow2 = 1L << m;
      GateInst inst;
      inst.gate_index = gi;
      for (int k = g.threshold; k <= m; ++k) {
        ExWires w;
        w.m = m;
        w.k = k;
        for (int in : g.inputs) w.x.push_back(out.wire_qubits[in]);
        w.o = next++;
        w.parity.assign(pow2, -1);
        for (long s = 1; s < pow2; ++s) w.parity[s] = next++;
        for (long s = 0; s < pow2; ++s) w.copies.push_back(next++);
        inst.exs.push_back(std::move(w));
      }
      layer_insts[l].push_back(std::move(inst));
    }
  }

  LayeredCircuit circuit(next);
  for (std::size_t l = 1; l < layer_insts.size(); ++l) {
    if (layer_insts[l].empty()) continue;
    PhaseBlockBuilder pb;
    for (const auto& inst : layer_insts[l]) {
      for (const auto& w : inst.exs) pb.add_instance(w);
    }
    pb.emit_pre(circuit);
    pb.emit_diag(circuit);
    pb.emit_post(circuit);
    // Parities into the gate output wires (distinct targets per gate).
    std::size_t max_exs = 0;
    for (const auto& inst : layer_insts[l]) max_exs = std::max(max_exs, inst.exs.size());
    for (std::size_t j = 0; j < max_exs; ++j) {
      Layer layer;
      for (const auto& inst : layer_insts[l]) {
        if (j < inst.exs.size()) {
          layer.push_back(Gate::simple(
              GateKind::CNOT,
              {inst.exs[j].o, out.wire_qubits[spec.inputs + inst.gate_index]}));
        }
      }
      circuit.push_layer(std::move(layer));
    }
  }
  out.circuit = std::move(circuit);
  out.accounting = account(out.circuit, 1);
  out.output_qubit =
      spec.gates.empty() ? 0 : out.wire_qubits[spec.inputs + spec.gates.size() - 1];

  if (spec.inputs <= 10 && !spec.gates.empty()) {
    out.functional_pass = true;
    for (long x = 0; x < (1L << spec.inputs); ++x) {
      BitVec in(out.circuit.n());
      std::vector<int> bits(spec.inputs);
      for (int j = 0; j < spec.inputs; ++j) {
        bits[j] = (x >> j) & 1;
        in.set(out.wire_qubits[j], bits[j]);
      }
      SparseState st = SparseState::basis(in);
      st.apply_circuit(out.circuit);
      int want = spec.eval(bits);
      double p1 = st.prob_one(out.output_qubit);
      if (std::abs(p1 - want) > 1e-9) out.functional_pass = false;
    }
  }
  return out;
}

}  // namespace mhkit
