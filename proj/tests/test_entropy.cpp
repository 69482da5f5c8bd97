#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mhkit/entropy.hpp"
#include "mhkit/families.hpp"
#include "mhkit/simulate.hpp"
#include "oracles.hpp"

using namespace mhkit;

TEST_CASE("von Neumann entropy basics") {
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(von_neumann(pure) == doctest::Approx(0.0));
  CHECK(von_neumann(Eigen::MatrixXcd::Identity(2, 2) / 2.0) == doctest::Approx(1.0));
  Eigen::MatrixXcd biased = Eigen::MatrixXcd::Zero(2, 2);
  biased(0, 0) = 0.1;
  biased(1, 1) = 0.9;
  CHECK(von_neumann(biased) == doctest::Approx(binary_entropy(0.1)).epsilon(1e-12));
  CHECK(binary_entropy(0.1) == doctest::Approx(0.4689955935892812).epsilon(1e-12));
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(von_neumann(bad), DimensionError);
}

TEST_CASE("binary entropy endpoints and upper bound") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(binary_entropy(-0.1), DimensionError);
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    CHECK(binary_entropy(p) <= binary_entropy_upper(p) + 1e-12);
  }
}

TEST_CASE("fa deviation bound formula") {
  CHECK(fa_mi_deviation_bound(0.0, 3, 4) == 0.0);
  double v = fa_mi_deviation_bound(0.01, 1, 1);
  CHECK(v == doctest::Approx(0.04 + 3 * binary_entropy(0.01)).epsilon(1e-12));
  CHECK(v == doctest::Approx(0.28237941).epsilon(1e-6));
}

TEST_CASE("dense MI basics") {
  StateVector prod = StateVector::zero_state(4);
  CHECK(mutual_info_dense(prod, Region({0}), Region({2})).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(mutual_info_dense(prod, Region({0, 1}), Region({1})), DimensionError);

  StateVector w3 = StateFamily::w_state(3).build();
  CHECK(mutual_info_dense(w3, Region({0}), Region({1})).value ==
        doctest::Approx(0.9182958341).epsilon(1e-8));
}

TEST_CASE("biased CAT has MI H(gamma) between any proper disjoint pair") {
  for (double gamma : {0.0, 0.1, 0.3, 0.5}) {
    for (int n : {4, 6}) {
      StateVector cat = StateFamily::biased_cat(n, gamma).build();
      double want = binary_entropy(gamma);
      long pairs = 1;
      for (int q = 0; q < n; ++q) pairs *= 3;
      for (long code = 0; code < pairs; ++code) {
        long x = code;
        std::vector<int> av, bv;
        for (int q = 0; q < n; ++q) {
          int l = x % 3;
          x /= 3;
          if (l == 1) av.push_back(q);
          if (l == 2) bv.push_back(q);
        }
        if (av.empty() || bv.empty()) continue;
        if (static_cast<int>(av.size() + bv.size()) >= n) continue;
        double got = mutual_info_dense(cat, Region(av), Region(bv)).value;
        REQUIRE(std::abs(got - want) < 1e-9);
      }
    }
  }
}

TEST_CASE("stabilizer MI formula is an integer matching dense") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto c = oracle::random_clifford_circuit(n, 5, rng);
    auto t = tableau_run(c, StabilizerTableau::zero_state(n));
    int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (i == j) continue;
    MiValue mi = mutual_info_stabilizer(t, Region({i}), Region({j}));
    REQUIRE(mi.exact_integer.has_value());
    CHECK(*mi.exact_integer >= 0);
    StateVector sv = dense_run(c, StateVector::zero_state(n));
    double dense = mutual_info_dense(sv, Region({i}), Region({j})).value;
    CHECK(std::abs(dense - mi.value) < 1e-9);
  }
}

TEST_CASE("stabilizer MI on mixed tableaux against dense entropies") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    auto t = oracle::random_stabilizer(n, 4, rng);
    // drop a generator to mix the state
    auto gens = t.generators();
    if (!gens.empty()) gens.pop_back();
    auto mixed = StabilizerTableau::canonicalize(n, gens);
    std::vector<int> av = {static_cast<int>(rng() % n)};
    std::vector<int> bv = {static_cast<int>((av[0] + 1 + rng() % (n - 1)) % n)};
    if (av[0] == bv[0]) continue;
    Region a(av), b(bv);
    MiValue mi = mutual_info_stabilizer(mixed, a, b);
    auto ent = [&](const Region& r) {
      return entropy_from_spectrum(
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(mixed.reduced_density(r),
                                                          Eigen::EigenvaluesOnly)
              .eigenvalues());
    };
    double dense = ent(a) + ent(b) - ent(region_union(a, b));
    CHECK(std::abs(dense - mi.value) < 1e-9);
    CHECK(*mi.exact_integer >= 0);
  }
}

TEST_CASE("named stabilizer MI values") {
  auto ghz4 = tableau_run(parse_mhq("H 0 / CNOT 0 1 / CNOT 1 2 / CNOT 2 3"),
                          StabilizerTableau::zero_state(4));
  CHECK(*mutual_info_stabilizer(ghz4, Region({0}), Region({1})).exact_integer == 1);
  auto zeros = StabilizerTableau::zero_state(5);
  CHECK(*mutual_info_stabilizer(zeros, Region({0, 1}), Region({3})).exact_integer == 0);
  auto bell = tableau_run(parse_mhq("H 0 / CNOT 0 1"), StabilizerTableau::zero_state(2));
  CHECK(*mutual_info_stabilizer(bell, Region({0}), Region({1})).exact_integer == 2);
}

TEST_CASE("MI invariance under local unitaries and monotonicity") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 5;
    StateVector psi = oracle::random_state(n, rng);
    Region a({0, 1}), b({3});
    double base = mutual_info_dense(psi, a, b).value;
    // local unitaries on A and B
    LayeredCircuit local(n);
    local.push_layer({Gate::generic2(0, 1, oracle::random_u4(rng)),
                      Gate::generic1(3, oracle::random_u2(rng))});
    StateVector rotated = psi;
    rotated.apply_circuit(local);
    CHECK(mutual_info_dense(rotated, a, b).value == doctest::Approx(base).epsilon(1e-9));
    // monotone under region growth
    double bigger = mutual_info_dense(psi, region_union(a, Region({2})), b).value;
    CHECK(base <= bigger + 1e-9);
  }
}

TEST_CASE("fannes-audenaert entropy and MI deviations on perturbed stabilizer states") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);
    auto c = oracle::random_clifford_circuit(n, 4, rng);
    StateVector phi = dense_run(c, StateVector::zero_state(n));
    Eigen::VectorXcd noise(phi.dim());
    std::normal_distribution<double> g;
    for (long i = 0; i < noise.size(); ++i) noise(i) = std::complex<double>(g(rng), g(rng));
    noise *= 0.03 / noise.norm();
    Eigen::VectorXcd v = phi.amps() + noise;
    v.normalize();
    StateVector rho = StateVector::from_amplitudes(n, v);
    // trace distance of pure states from overlap
    double ov = std::abs(phi.amps().dot(rho.amps()));
    double eps = std::sqrt(std::max(0.0, 1.0 - ov * ov));
    REQUIRE(eps < 0.5);

    int i = static_cast<int>(rng() % n);
    int j = (i + 1 + static_cast<int>(rng() % (n - 1))) % n;
    Region a({i}), b({j});
    auto t = tableau_run(c, StabilizerTableau::zero_state(n));
    double mi_phi = mutual_info_stabilizer(t, a, b).value;
    double mi_rho = mutual_info_dense(rho, a, b).value;
    CHECK(std::abs(mi_rho - mi_phi) <= fa_mi_deviation_bound(eps, 1, 1) + 1e-9);

    // entropy-level Fannes-Audenaert on a subsystem
    Region sub({i});
    double e_phi = entropy_from_spectrum(phi.subsystem_spectrum(sub));
    double e_rho = entropy_from_spectrum(rho.subsystem_spectrum(sub));
    CHECK(std::abs(e_phi - e_rho) <= eps * sub.size() + binary_entropy(eps) + 1e-9);
  }
}

TEST_CASE("family construction") {
  StateVector ghz = StateFamily::biased_cat(4, 0.5).build();
  CHECK(std::abs(ghz.amps()(0) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(ghz.amps()(15) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(mutual_info_dense(ghz, Region({0}), Region({2})).value == doctest::Approx(1.0));

  StateVector w3 = StateFamily::w_state(3).build();
  for (long idx : {1L, 2L, 4L}) {
    CHECK(std::abs(w3.amps()(idx) - 1 / std::sqrt(3.0)) < 1e-12);
  }

  StateVector hist = StateFamily::cat_history(4).build();
  CHECK(hist.n() == 8);
  // exactly n+1 clock patterns appear
  std::set<long> clocks;
  for (long i = 0; i < hist.dim(); ++i) {
    if (std::abs(hist.amps()(i)) > 1e-12) clocks.insert(i >> 4);
  }
  CHECK(clocks.size() == 5);
  for (long cpat : clocks) {
    // valid unary: ones then zeros in the 4 clock bits (msb first)
    int ones = 0;
    bool seen_zero = false, valid = true;
    for (int b = 3; b >= 0; --b) {
      bool bit = (cpat >> b) & 1;
      if (bit) {
        if (seen_zero) valid = false;
        ++ones;
      } else {
        seen_zero = true;
      }
    }
    CHECK(valid);
    (void)ones;
  }
}

TEST_CASE("cat history correlation observables") {
  // A_i = |0><0|, B_j = |1><1| on state qubits i < j in the first half.
  for (int n : {4, 6}) {
    StateVector hist = StateFamily::cat_history(n).build();
    for (int i = 0; i < n / 2; ++i) {
      for (int j = i + 1; j < n / 2; ++j) {
        int qi = n + i, qj = n + j;
        Eigen::MatrixXcd rho = hist.reduced_density(Region({qi, qj}));
        double a_and_b = rho(1, 1).real();  // |0 1><0 1| entry
        CHECK(std::abs(a_and_b) < 1e-10);
        Eigen::MatrixXcd ri = hist.reduced_density(Region({qi}));
        Eigen::MatrixXcd rj = hist.reduced_density(Region({qj}));
        CHECK(ri(0, 0).real() >= 0.5 - 1e-10);
        CHECK(rj(1, 1).real() >= 0.25 - 1e-10);
      }
    }
  }
}

TEST_CASE("family parsing and analytic MI") {
  auto f = StateFamily::parse("biased_cat:0.1:8");
  CHECK(f.kind == FamilyKind::BiasedCat);
  CHECK(f.n == 8);
  CHECK(f.gamma == doctest::Approx(0.1));
  auto mi = f.analytic_mi(Region({0}), Region({4}));
  REQUIRE(mi.has_value());
  CHECK(*mi == doctest::Approx(binary_entropy(0.1)));
  CHECK_FALSE(f.analytic_mi(Region({0, 1, 2, 3}), Region({4, 5, 6, 7})).has_value());
  CHECK(StateFamily::parse("w_state:6").kind == FamilyKind::WState);
  CHECK(StateFamily::parse("cat_history:4").total_qubits() == 8);
}
