#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mhkit/accounting.hpp"
#include "mhkit/circuit.hpp"
#include "mhkit/simulate.hpp"
#include "oracles.hpp"

using namespace mhkit;

TEST_CASE("parse two-layer bell prep") {
  auto c = parse_mhq("H 0 / CNOT 0 1");
  CHECK(c.n() == 2);
  CHECK(c.depth() == 2);
  StateVector out = dense_run(c, StateVector::zero_state(2));
  CHECK(std::abs(out.amps()(0) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(out.amps()(3) - 1 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("parse layers by blank line and comments") {
  auto c = parse_mhq("# bell\nH 0\n\nCNOT 0 1\n");
  CHECK(c.depth() == 2);
  auto one_layer = parse_mhq("H 0\nX 1\n");
  CHECK(one_layer.depth() == 1);
  CHECK(one_layer.layer(0).size() == 2);
}

TEST_CASE("overlap within a layer rejected with line info") {
  CHECK_THROWS_AS(parse_mhq("H 0\nX 0\n"), ParseError);
  try {
    parse_mhq("H 0 / CNOT 1 1");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("repeated qubit") != std::string::npos);
  }
}

TEST_CASE("fanout parses as one clifford gate") {
  auto c = parse_mhq("FANOUT 0 1 2 3");
  CHECK(c.depth() == 1);
  CHECK(c.layer(0)[0].kind == GateKind::FANOUT);
  CHECK(c.layer(0)[0].is_clifford());
  CHECK(c.all_clifford());
  CHECK_THROWS_AS(parse_mhq("FANOUT 0"), ParseError);
}

TEST_CASE("generic gates parse, validate unitarity, and round trip") {
  std::string good =
      "GENERIC1 0 0.0,0.0 1.0,0.0 1.0,0.0 0.0,0.0\n";  // X as a generic
  auto c = parse_mhq(good);
  CHECK(c.layer(0)[0].kind == GateKind::GENERIC1);
  CHECK_THROWS_AS(parse_mhq("GENERIC1 0 1.0,0.0 1.0,0.0 1.0,0.0 1.0,0.0\n"), ParseError);

  std::mt19937_64 rng(11);
  LayeredCircuit rc(3);
  rc.push_layer({Gate::generic2(0, 2, oracle::random_u4(rng))});
  rc.push_layer({Gate::generic1(1, oracle::random_u2(rng)), Gate::simple(GateKind::T, {2})});
  std::string text = emit_mhq(rc);
  auto parsed = parse_mhq(text);
  CHECK(emit_mhq(parsed) == text);  // byte-deterministic round trip
  // action preserved within the 12-digit serialization
  StateVector a = dense_run(rc, StateVector::zero_state(3));
  StateVector b = dense_run(parsed, StateVector::zero_state(3));
  CHECK((a.amps() - b.amps()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("measure gates parse") {
  auto c = parse_mhq("H 0 / MEASURE 0 0");
  CHECK(c.has_measurement());
  CHECK(c.layer(1)[0].classical_bit == 0);
}

TEST_CASE("mh decomposition base cases") {
  auto cliff = parse_mhq("H 0 / CNOT 0 1 / S 1");
  auto d = mh_decompose(cliff, 1);
  CHECK(d.blocks.size() == 1);
  CHECK(d.mh_level() == 0);
  CHECK(d.starts_with() == BlockTag::Clifford);

  std::mt19937_64 rng(3);
  LayeredCircuit q(4);
  for (int i = 0; i < 3; ++i) {
    q.push_layer({Gate::generic2(0, 1, oracle::random_u4(rng)),
                  Gate::generic2(2, 3, oracle::random_u4(rng))});
  }
  auto dq = mh_decompose(q, 3);
  CHECK(dq.blocks.size() == 1);
  CHECK(dq.mh_level() == 0);
  CHECK(dq.starts_with() == BlockTag::Qnc0);
}

TEST_CASE("clifford, T, clifford with budget 1 gives C Q C") {
  auto c = parse_mhq("H 0 / T 0 / H 0");
  auto d = mh_decompose(c, 1);
  REQUIRE(d.blocks.size() == 3);
  CHECK(d.blocks[0].tag == BlockTag::Clifford);
  CHECK(d.blocks[1].tag == BlockTag::Qnc0);
  CHECK(d.blocks[2].tag == BlockTag::Clifford);
  CHECK(d.mh_level() == 2);
  auto r = account(d);
  CHECK(r.clifford_rounds == 2);
  CHECK(r.qnc0_rounds == 1);
}

TEST_CASE("budget exhaustion inserts an identity clifford block") {
  auto c = parse_mhq("T 0 / T 0");
  auto d = mh_decompose(c, 1);
  REQUIRE(d.blocks.size() == 3);
  CHECK(d.blocks[1].tag == BlockTag::Clifford);
  CHECK(d.blocks[1].depth() == 0);
  CHECK(d.mh_level() == 2);
}

TEST_CASE("decomposition infeasible for fanout forced into a QNC0 layer") {
  LayeredCircuit c(4);
  c.push_layer({Gate::simple(GateKind::T, {3}), Gate::fanout({0, 1, 2})});
  CHECK_THROWS_AS(mh_decompose(c, 1), GateClassError);
}

TEST_CASE("recomposition reproduces the layer sequence and the action") {
  std::mt19937_64 rng(4);
  oracle::RandomCircuitOptions opt;
  opt.t_gates = true;
  opt.generics = true;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto c = oracle::random_circuit(n, 1 + static_cast<int>(rng() % 5), rng, opt);
    auto d = mh_decompose(c, 1 + static_cast<int>(rng() % 3));
    auto rc = d.recompose();
    CHECK(rc == c);
    StateVector in = oracle::random_state(n, rng);
    StateVector a = dense_run(c, in);
    StateVector b = dense_run(rc, in);
    CHECK((a.amps() - b.amps()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("account counts") {
  auto bell = parse_mhq("H 0 / CNOT 0 1");
  auto r = account(bell);
  CHECK(r.depth == 2);
  CHECK(r.t_count == 0);
  CHECK(r.mh_level == 0);
  CHECK(r.measurement_rounds == 0);

  auto ts = parse_mhq("T 0\nT 1\nT 2\n");
  auto rt = account(ts);
  CHECK(rt.t_count == 3);
  CHECK(rt.t_depth == 1);
  CHECK(rt.depth == 1);

  auto fm = parse_mhq("FANOUT 0 1 2 / MEASURE 0 0 / FANOUT 0 1 2");
  auto rf = account(fm);
  CHECK(rf.fanout_depth == 2);
  CHECK(rf.measurement_rounds == 1);
}

TEST_CASE("account is deterministic and idempotent") {
  std::mt19937_64 rng(5);
  oracle::RandomCircuitOptions opt;
  opt.t_gates = true;
  auto c = oracle::random_circuit(5, 6, rng, opt);
  auto r1 = account(c, 2);
  auto r2 = account(c, 2);
  CHECK(r1.mh_level == r2.mh_level);
  CHECK(r1.t_depth == r2.t_depth);
  CHECK(r1.depth == r2.depth);
}

TEST_CASE("check_relations flags and passes") {
  ComplexityReport good;
  good.mh_level = 2;
  good.clifford_rounds = 2;
  good.qnc0_rounds = 1;
  CHECK(check_relations(good).empty());

  ComplexityReport bad;
  bad.mh_level = 4;
  bad.clifford_rounds = 1;
  bad.qnc0_rounds = 2;
  auto v = check_relations(bad);
  CHECK_FALSE(v.empty());
}

TEST_CASE("random circuits always produce relation-clean reports") {
  std::mt19937_64 rng(6);
  oracle::RandomCircuitOptions opt;
  opt.t_gates = true;
  opt.generics = true;
  for (int trial = 0; trial < 150; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int depth = 1 + static_cast<int>(rng() % 8);
    auto c = oracle::random_circuit(n, depth, rng, opt);
    auto r = account(c, 1 + static_cast<int>(rng() % 3));
    CAPTURE(trial);
    CHECK(check_relations(r).empty());
  }
}
