#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mhkit/codes.hpp"
#include "mhkit/simulate.hpp"
#include "oracles.hpp"

using namespace mhkit;

TEST_CASE("dense run basics") {
  auto h = parse_mhq("H 0");
  LayeredCircuit h2(2);
  h2.push_layer({Gate::simple(GateKind::H, {0})});
  StateVector out = dense_run(h2, StateVector::zero_state(2));
  CHECK(std::abs(out.amps()(0) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(out.amps()(2) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(dense_run(parse_mhq("MEASURE 0 0"), StateVector::zero_state(1)),
                  GateClassError);
  (void)h;
}

TEST_CASE("dense run agrees with the Kronecker oracle") {
  std::mt19937_64 rng(21);
  oracle::RandomCircuitOptions opt;
  opt.t_gates = true;
  opt.generics = true;
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);  // up to 6
    auto c = oracle::random_circuit(n, 6, rng, opt);
    Eigen::MatrixXcd u = oracle::kron_unitary(c);
    StateVector in = oracle::random_state(n, rng);
    Eigen::VectorXcd want = u * in.amps();
    StateVector got = dense_run(c, in);
    CHECK((got.amps() - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("fanout dense semantics") {
  LayeredCircuit c(3);
  c.push_layer({Gate::fanout({0, 1, 2})});
  // |1,0,0> -> |1,1,1>
  StateVector in = StateVector::basis_state(3, 0b100);
  StateVector out = dense_run(c, in);
  CHECK(std::abs(out.amps()(0b111) - 1.0) < 1e-12);
  Eigen::MatrixXcd u = oracle::kron_unitary(c);
  std::mt19937_64 rng(1);
  StateVector r = oracle::random_state(3, rng);
  StateVector got = dense_run(c, r);
  CHECK((got.amps() - (u * r.amps()).eval()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("tableau_run equals dense_run on random Cliffords") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto c = oracle::random_clifford_circuit(n, 8, rng);
    auto t = tableau_run(c, StabilizerTableau::zero_state(n));
    StateVector sv = dense_run(c, StateVector::zero_state(n));
    double fid = (t.density() * sv.density()).trace().real();
    CHECK(fid >= 1.0 - 1e-10);
  }
}

TEST_CASE("tableau ghz chain scales and matches small sizes") {
  auto ghz_prep = [](int n) {
    LayeredCircuit c(n);
    c.push_layer({Gate::simple(GateKind::H, {0})});
    for (int i = 0; i + 1 < n; ++i) {
      c.push_layer({Gate::simple(GateKind::CNOT, {i, i + 1})});
    }
    return c;
  };
  for (int n : {3, 4, 5}) {
    auto t = tableau_run(ghz_prep(n), StabilizerTableau::zero_state(n));
    StateVector sv = dense_run(ghz_prep(n), StateVector::zero_state(n));
    CHECK((t.density() - sv.density()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(t.contains(PauliString::parse(std::string(n, 'X'))));
  }
  auto big = tableau_run(ghz_prep(100), StabilizerTableau::zero_state(100));
  CHECK(big.contains(PauliString::parse(std::string(100, 'X'))));
  CHECK(big.rank() == 100);
}

TEST_CASE("depth-50 random clifford dense cross-check") {
  std::mt19937_64 rng(23);
  auto c = oracle::random_clifford_circuit(8, 50, rng);
  auto t = tableau_run(c, StabilizerTableau::zero_state(8));
  StateVector sv = dense_run(c, StateVector::zero_state(8));
  CHECK((t.density() - sv.density()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("measurement program: plus state forced to zero") {
  MeasurementProgram p;
  p.n = 1;
  MeasurementRound r;
  r.block = parse_mhq("H 0");
  r.measured = Region({0});
  p.rounds.push_back(r);
  OutcomeSource src;
  BitVec forced(1);
  src.forced = forced;  // outcome 0
  auto [state, tr] = run_measurement_program(p, StateVector::zero_state(1), src);
  CHECK(std::abs(state.amps()(0) - 1.0) < 1e-12);
  CHECK(tr.probabilities[0] == doctest::Approx(0.5));

  BitVec f1(1);
  f1.set(0, true);
  src.forced = f1;
  auto [s1, t1] = run_measurement_program(p, StateVector::zero_state(1), src);
  CHECK(std::abs(s1.amps()(1) - 1.0) < 1e-12);
}

TEST_CASE("impossible forced outcome") {
  MeasurementProgram p;
  p.n = 1;
  MeasurementRound r;
  r.block = LayeredCircuit(1);
  r.measured = Region({0});
  p.rounds.push_back(r);
  OutcomeSource src;
  BitVec f1(1);
  f1.set(0, true);
  src.forced = f1;
  CHECK_THROWS_AS(run_measurement_program(p, StateVector::zero_state(1), src),
                  ImpossibleOutcomeError);
}

TEST_CASE("single-qubit teleportation gadget corrects every branch") {
  // Wires: 0 = psi, 1/2 = Bell pair. Forced outcomes (z on wire0, x on
  // wire1); correction X^x Z^z on wire 2 restores psi for all four.
  MeasurementProgram p;
  p.n = 3;
  MeasurementRound r;
  LayeredCircuit block(3);
  block.push_layer({Gate::simple(GateKind::H, {1})});
  block.push_layer({Gate::simple(GateKind::CNOT, {1, 2})});
  block.push_layer({Gate::simple(GateKind::CNOT, {0, 1})});
  block.push_layer({Gate::simple(GateKind::H, {0})});
  r.block = block;
  r.measured = Region({0, 1});
  CorrectionMap m;
  m.n = 3;
  m.outcome_bits = 2;
  m.rows.assign(6, BitVec(2));
  m.rows[2].set(1, true);      // x part of qubit 2 <- outcome bit 1 (x)
  m.rows[3 + 2].set(0, true);  // z part of qubit 2 <- outcome bit 0 (z)
  r.correction = m;
  p.rounds.push_back(r);

  std::mt19937_64 rng(24);
  StateVector psi_in = oracle::random_state(1, rng);
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(8);
  full(0) = psi_in.amps()(0);  // |q0 q1 q2> with q1=q2=0
  full(4) = psi_in.amps()(1);
  StateVector in = StateVector::from_amplitudes(3, full);

  for (int z = 0; z < 2; ++z) {
    for (int x = 0; x < 2; ++x) {
      OutcomeSource src;
      BitVec f(2);
      f.set(0, z);
      f.set(1, x);
      src.forced = f;
      auto [out, tr] = run_measurement_program(p, in, src);
      // Extract wire 2 given wires 0,1 = (z,x).
      Eigen::VectorXcd got(2);
      long base = (static_cast<long>(z) << 2) | (static_cast<long>(x) << 1);
      got(0) = out.amps()(base);
      got(1) = out.amps()(base | 1);
      std::complex<double> ov = psi_in.amps().dot(got);
      CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("program determinism under a fixed seed") {
  std::mt19937_64 rng(25);
  auto c = oracle::random_clifford_circuit(4, 4, rng);
  MeasurementProgram p;
  p.n = 4;
  MeasurementRound r;
  r.block = c;
  r.measured = Region({0, 2});
  p.rounds.push_back(r);
  OutcomeSource src;
  src.seed = 99;
  auto [s1, t1] = run_measurement_program(p, StateVector::zero_state(4), src);
  auto [s2, t2] = run_measurement_program(p, StateVector::zero_state(4), src);
  CHECK(t1.outcomes == t2.outcomes);
  CHECK((s1.amps() - s2.amps()).cwiseAbs().maxCoeff() == 0.0);

  auto [ts1, tt1] = run_measurement_program_tableau(p, StabilizerTableau::zero_state(4), src);
  auto [ts2, tt2] = run_measurement_program_tableau(p, StabilizerTableau::zero_state(4), src);
  CHECK(tt1.outcomes == tt2.outcomes);
  CHECK(ts1 == ts2);
}

TEST_CASE("folklore estimator basics") {
  // q = identity, O = Z0, cl = H0: <+|Z|+> = 0
  LayeredCircuit cl(1);
  cl.push_layer({Gate::simple(GateKind::H, {0})});
  LayeredCircuit q(1);
  Eigen::MatrixXcd z = PauliString::parse("Z").dense();
  double v = estimate_local_observable_a1cq(cl, q, z, Region({0}));
  CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("folklore estimator vs dense on random instances") {
  std::mt19937_64 rng(26);
  oracle::RandomCircuitOptions qopt;
  qopt.t_gates = true;
  qopt.generics = true;
  qopt.gate_density = 0.5;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 8 + static_cast<int>(rng() % 3);
    auto cl = oracle::random_clifford_circuit(n, 6, rng);
    auto q = oracle::random_circuit(n, 1 + static_cast<int>(rng() % 3), rng, qopt);
    std::vector<int> sq = {static_cast<int>(rng() % n)};
    int s2 = static_cast<int>(rng() % n);
    if (s2 != sq[0]) sq.push_back(s2);
    Region s(sq);
    // random Hermitian observable on S
    long dim = 1L << s.size();
    Eigen::MatrixXcd o = Eigen::MatrixXcd::Random(dim, dim);
    o = (o + o.adjoint()).eval();

    double got = estimate_local_observable_a1cq(cl, q, o, s);
    LayeredCircuit full = cl;
    full.append(q);
    StateVector sv = dense_run(full, StateVector::zero_state(n));
    double want = sv.expectation(o, s).real();
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("folklore estimator at n = 200 in well under a second") {
  int n = 200;
  LayeredCircuit cl(n);
  cl.push_layer({Gate::simple(GateKind::H, {0})});
  std::vector<int> fan;
  for (int q = 0; q < n; ++q) fan.push_back(q);
  cl.push_layer({Gate::fanout(fan)});
  LayeredCircuit q(n);
  Eigen::MatrixXcd zz = oracle::pauli_dense("ZZ");
  auto t0 = std::chrono::steady_clock::now();
  double v = estimate_local_observable_a1cq(cl, q, zz, Region({0, 1}));
  auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ms < 1000);
}

TEST_CASE("estimator refuses oversized cones and non-Hermitian observables") {
  int n = 30;
  LayeredCircuit cl(n);
  LayeredCircuit q(n);
  // a CNOT cascade blowing the cone past 20
  for (int span = 1; span < n; span *= 2) {
    Layer l;
    for (int start = 0; start + span < n; start += 2 * span) {
      l.push_back(Gate::simple(GateKind::CNOT, {start, start + span}));
    }
    q.push_layer(std::move(l));
  }
  Eigen::MatrixXcd z = PauliString::parse("Z").dense();
  CHECK_THROWS_AS(estimate_local_observable_a1cq(cl, q, z, Region({0})), FeasibilityError);

  LayeredCircuit qid(2);
  LayeredCircuit clid(2);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(estimate_local_observable_a1cq(clid, qid, bad, Region({0})), DimensionError);
}

TEST_CASE("pauli expectation on stabilizer states") {
  auto t = tableau_run(parse_mhq("H 0 / CNOT 0 1"), StabilizerTableau::zero_state(2));
  CHECK(pauli_expectation(t, PauliString::parse("XX")) == 1.0);
  CHECK(pauli_expectation(t, PauliString::parse("-ZZ")) == -1.0);
  CHECK(pauli_expectation(t, PauliString::parse("ZI")) == 0.0);
}
