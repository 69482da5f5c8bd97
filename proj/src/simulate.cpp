#include "mhkit/simulate.hpp"

#include <cmath>

#include "mhkit/errors.hpp"
#include "mhkit/lightcone.hpp"

namespace mhkit {

StabilizerTableau conjugate_by_clifford(const StabilizerTableau& t, const LayeredCircuit& c) {
  if (c.n() != t.n()) throw DimensionError("conjugate_by_clifford: qubit count mismatch");
  std::vector<PauliString> gens = t.generators();
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) {
      if (!g.is_clifford()) {
        throw GateClassError(std::string("non-Clifford gate ") + gate_kind_name(g.kind) +
                             " in tableau evolution");
      }
      for (auto& p : gens) conjugate_pauli(p, g);
    }
  }
  return StabilizerTableau::canonicalize(t.n(), std::move(gens));
}

StabilizerTableau tableau_run(const LayeredCircuit& c, const StabilizerTableau& t0) {
  return conjugate_by_clifford(t0, c);
}

StateVector dense_run(const LayeredCircuit& c, const StateVector& psi0) {
  if (c.has_measurement()) throw GateClassError("dense_run is unitary-only");
  StateVector s = psi0;
  s.apply_circuit(c);
  if (std::abs(s.norm() - 1.0) > 1e-9) {
    throw DimensionError("dense_run lost normalization beyond 1e-9");
  }
  return s;
}

std::pair<BitVec, BitVec> CorrectionMap::apply(const BitVec& y) const {
  BitVec x(n), z(n);
  for (int i = 0; i < n; ++i) {
    if (dot(rows[i], y)) x.set(i, true);
    if (dot(rows[n + i], y)) z.set(i, true);
  }
  return {x, z};
}

PauliString CorrectionMap::correction_pauli(const BitVec& y) const {
  auto [x, z] = apply(y);
  int yc = static_cast<int>(and_bits(x, z).popcount());
  return PauliString(n, x, z, yc & 1);  // Hermitian X(x)Z(z) up to that parity
}

int MeasurementProgram::total_outcome_bits() const {
  int b = 0;
  for (const auto& r : rounds) b += r.measured.size();
  return b;
}

namespace {

struct BitDrawer {
  std::optional<BitVec> forced;
  std::mt19937_64 rng;
  int cursor = 0;
  explicit BitDrawer(const OutcomeSource& src) : forced(src.forced), rng(src.seed) {}
  std::optional<int> next_forced() {
    if (!forced) return std::nullopt;
    return forced->get(cursor) ? 1 : 0;
  }
  void advance() { ++cursor; }
  bool coin() { return (rng() >> 33) & 1; }
};

}  // namespace

std::pair<StateVector, Transcript> run_measurement_program(const MeasurementProgram& p,
                                                           const StateVector& psi0,
                                                           const OutcomeSource& src) {
  StateVector s = psi0;
  Transcript tr;
  tr.outcomes = BitVec(p.total_outcome_bits());
  BitDrawer draw(src);
  for (const auto& round : p.rounds) {
    s.apply_circuit(round.block);
    for (int q : round.measured) {
      int outcome;
      if (auto f = draw.next_forced()) {
        outcome = *f;
      } else {
        double p0 = s.prob_zero(q);
        double u = std::uniform_real_distribution<double>()(draw.rng);
        outcome = (u < p0) ? 0 : 1;
      }
      double prob = s.project(q, outcome);
      tr.outcomes.set(draw.cursor, outcome);
      tr.probabilities.push_back(prob);
      draw.advance();
    }
    if (round.correction) {
      BitVec seen(round.correction->outcome_bits);
      for (int i = 0; i < round.correction->outcome_bits; ++i) seen.set(i, tr.outcomes.get(i));
      PauliString corr = round.correction->correction_pauli(seen);
      s.apply_pauli(corr);
      tr.corrections_applied.push_back(corr);
    }
  }
  return {std::move(s), std::move(tr)};
}

std::pair<StabilizerTableau, Transcript> run_measurement_program_tableau(
    const MeasurementProgram& p, const StabilizerTableau& t0, const OutcomeSource& src) {
  StabilizerTableau t = t0;
  Transcript tr;
  tr.outcomes = BitVec(p.total_outcome_bits());
  BitDrawer draw(src);
  for (const auto& round : p.rounds) {
    t = conjugate_by_clifford(t, round.block);
    for (int q : round.measured) {
      auto res = t.measure_z(q, draw.next_forced(), [&]() { return draw.coin(); });
      tr.outcomes.set(draw.cursor, res.outcome);
      tr.probabilities.push_back(res.probability);
      draw.advance();
    }
    if (round.correction) {
      BitVec seen(round.correction->outcome_bits);
      for (int i = 0; i < round.correction->outcome_bits; ++i) seen.set(i, tr.outcomes.get(i));
      PauliString corr = round.correction->correction_pauli(seen);
      t.apply_pauli_frame(corr);
      tr.corrections_applied.push_back(corr);
    }
  }
  return {std::move(t), std::move(tr)};
}

double estimate_local_observable_a1cq(const LayeredCircuit& cl, const LayeredCircuit& q,
                                      const Eigen::MatrixXcd& obs, const Region& S) {
  if (cl.n() != q.n()) throw DimensionError("Clifford and QNC0 blocks disagree on n");
  S.validate(q.n());
  if ((obs - obs.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw DimensionError("observable is not Hermitian");
  }
  if (obs.rows() != (1L << S.size())) throw DimensionError("observable shape != region");

  Region cone = back_lightcone(q, S);
  if (cone.size() > 20) {
    throw FeasibilityError("backwards lightcone exceeds the 20-qubit cap");
  }
  // Reduced stabilizer density of cl|0^n> on the cone, evolved through
  // the induced sub-circuit, then contracted with the observable.
  StabilizerTableau t = tableau_run(cl, StabilizerTableau::zero_state(cl.n()));
  StabilizerTableau sub = t.restrict_to(cone);
  Eigen::MatrixXcd rho = sub.density();

  InducedSubcircuit ind = induced_subcircuit(q, S);
  // induced cone equals `cone` by construction
  conjugate_density(rho, ind.circuit);

  // S's position inside the cone.
  std::vector<int> pos;
  {
    int i = 0;
    for (int c : cone) {
      if (S.contains(c)) pos.push_back(i);
      ++i;
    }
  }
  Eigen::MatrixXcd rho_s = partial_trace(rho, Region(pos), cone.size());
  return (obs * rho_s).trace().real();
}

double pauli_expectation(const StabilizerTableau& t, const PauliString& p) {
  // tr(P rho) with rho = 2^{rank-n} Pi: nonzero only when the bare P is
  // in the group, and then +-1 by the sign match... mixed states scale.
  auto ph = t.member_phase(p);
  if (!ph) return 0.0;
  int diff = (p.phase() - *ph) & 3;
  return diff == 0 ? 1.0 : (diff == 2 ? -1.0 : 0.0);
}

}  // namespace mhkit
