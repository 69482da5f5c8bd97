#include "mhkit/dense.hpp"

#include <cmath>

#include "mhkit/errors.hpp"

namespace mhkit {

StateVector StateVector::zero_state(int n) {
  if (n > 26) throw FeasibilityError("statevector capped at 26 qubits");
  StateVector s;
  s.n_ = n;
  s.amps_ = Eigen::VectorXcd::Zero(1L << n);
  s.amps_(0) = 1.0;
  return s;
}

StateVector StateVector::basis_state(int n, long index) {
  StateVector s = zero_state(n);
  s.amps_(0) = 0.0;
  s.amps_(index) = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int n, Eigen::VectorXcd amps) {
  if (n > 26) throw FeasibilityError("statevector capped at 26 qubits");
  if (amps.size() != (1L << n)) throw DimensionError("amplitude count != 2^n");
  if (std::abs(amps.norm() - 1.0) > 1e-10) {
    throw DimensionError("state vector is not normalized within 1e-10");
  }
  StateVector s;
  s.n_ = n;
  s.amps_ = std::move(amps);
  return s;
}

namespace {

// Strides for qubit q: bit position n-1-q of the index.
inline long bit_of(int n, int q) { return 1L << (n - 1 - q); }

template <typename Vec>
void apply_1q(Vec&& a, int n, int q, const Eigen::Matrix2cd& u) {
  const long bit = bit_of(n, q);
  const long dim = a.size();
  for (long base = 0; base < dim; ++base) {
    if (base & bit) continue;
    auto v0 = a(base);
    auto v1 = a(base | bit);
    a(base) = u(0, 0) * v0 + u(0, 1) * v1;
    a(base | bit) = u(1, 0) * v0 + u(1, 1) * v1;
  }
}

template <typename Vec>
void apply_2q(Vec&& a, int n, int q0, int q1, const Eigen::Matrix4cd& u) {
  const long b0 = bit_of(n, q0);  // most significant bit of the 4x4 index
  const long b1 = bit_of(n, q1);
  const long dim = a.size();
  for (long base = 0; base < dim; ++base) {
    if ((base & b0) || (base & b1)) continue;
    long i00 = base, i01 = base | b1, i10 = base | b0, i11 = base | b0 | b1;
    Eigen::Vector4cd v(a(i00), a(i01), a(i10), a(i11));
    Eigen::Vector4cd w = u * v;
    a(i00) = w(0);
    a(i01) = w(1);
    a(i10) = w(2);
    a(i11) = w(3);
  }
}

template <typename Vec>
void apply_fanout(Vec&& a, int n, const std::vector<int>& qubits) {
  const long cbit = bit_of(n, qubits[0]);
  long tmask = 0;
  for (std::size_t i = 1; i < qubits.size(); ++i) tmask |= bit_of(n, qubits[i]);
  const long dim = a.size();
  // |b, x> -> |b, x ^ (b..b)>; an involution on indices within the b=1 half.
  for (long i = 0; i < dim; ++i) {
    if (!(i & cbit)) continue;
    long j = i ^ tmask;
    if (j > i) std::swap(a(i), a(j));
  }
}

template <typename Vec>
void apply_gate_vec(Vec&& a, int n, const Gate& g) {
  switch (g.kind) {
    case GateKind::MEASURE_Z:
    case GateKind::CLASSICAL_PARITY:
      throw GateClassError("measurement gate in the unitary-only dense path");
    case GateKind::FANOUT:
      apply_fanout(a, n, g.qubits);
      return;
    default: {
      Eigen::MatrixXcd m = gate_matrix(g);
      if (g.arity() == 1) {
        apply_1q(a, n, g.qubits[0], m);
      } else {
        apply_2q(a, n, g.qubits[0], g.qubits[1], m);
      }
      return;
    }
  }
}

}  // namespace

void StateVector::apply_gate(const Gate& g) { apply_gate_vec(amps_, n_, g); }

void StateVector::apply_circuit(const LayeredCircuit& c) {
  if (c.n() != n_) throw DimensionError("apply_circuit: qubit count mismatch");
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) apply_gate(g);
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.n() != n_) throw DimensionError("apply_pauli: qubit count mismatch");
  using cd = std::complex<double>;
  static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  long xmask = 0, zmask = 0;
  for (int q = 0; q < n_; ++q) {
    if (p.x().get(q)) xmask |= bit_of(n_, q);
    if (p.z().get(q)) zmask |= bit_of(n_, q);
  }
  Eigen::VectorXcd out(amps_.size());
  cd v0 = ipow[p.phase()];
  for (long c = 0; c < amps_.size(); ++c) {
    cd v = v0;
    if (std::popcount(static_cast<unsigned long>(c & zmask)) & 1) v = -v;
    out(c ^ xmask) = v * amps_(c);
  }
  amps_ = std::move(out);
}

double StateVector::prob_zero(int q) const {
  const long bit = bit_of(n_, q);
  double p = 0;
  for (long i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) p += std::norm(amps_(i));
  }
  return p;
}

double StateVector::project(int q, int outcome) {
  const long bit = bit_of(n_, q);
  double p0 = prob_zero(q);
  double p = outcome ? (1.0 - p0) : p0;
  if (p < 1e-12) {
    throw ImpossibleOutcomeError("forced outcome has probability ~0");
  }
  double scale = 1.0 / std::sqrt(p);
  for (long i = 0; i < amps_.size(); ++i) {
    bool one = (i & bit) != 0;
    if (one != (outcome != 0)) {
      amps_(i) = 0.0;
    } else {
      amps_(i) *= scale;
    }
  }
  return p;
}

namespace {

// Gathers the sub-index of `region` bits (region order = qubit order) and
// the residual index of the rest.
struct CutIndexer {
  std::vector<long> region_bits;
  std::vector<long> rest_bits;
  CutIndexer(int n, const Region& A) {
    std::vector<bool> in(n, false);
    for (int q : A) in[q] = true;
    for (int q = 0; q < n; ++q) {
      (in[q] ? region_bits : rest_bits).push_back(1L << (n - 1 - q));
    }
  }
  long compose(long region_idx, long rest_idx) const {
    long out = 0;
    for (std::size_t k = 0; k < region_bits.size(); ++k) {
      if (region_idx & (1L << (region_bits.size() - 1 - k))) out |= region_bits[k];
    }
    for (std::size_t k = 0; k < rest_bits.size(); ++k) {
      if (rest_idx & (1L << (rest_bits.size() - 1 - k))) out |= rest_bits[k];
    }
    return out;
  }
};

}  // namespace

Eigen::MatrixXcd StateVector::reduced_density(const Region& A) const {
  A.validate(n_);
  CutIndexer cut(n_, A);
  const long da = 1L << A.size();
  const long dr = 1L << (n_ - A.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
  for (long e = 0; e < dr; ++e) {
    for (long i = 0; i < da; ++i) {
      auto ai = amps_(cut.compose(i, e));
      if (ai == std::complex<double>(0, 0)) continue;
      for (long j = 0; j < da; ++j) {
        rho(i, j) += ai * std::conj(amps_(cut.compose(j, e)));
      }
    }
  }
  return rho;
}

Eigen::VectorXd StateVector::subsystem_spectrum(const Region& A) const {
  A.validate(n_);
  // Spectrum of rho_A equals the nonzero spectrum on the other side of
  // the cut, so work on the smaller side.
  Region B = A.complement(n_);
  const Region& small = (A.size() <= B.size()) ? A : B;
  CutIndexer cut(n_, small);
  const long ds = 1L << small.size();
  const long dr = 1L << (n_ - small.size());
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(ds, ds);
  for (long e = 0; e < dr; ++e) {
    for (long i = 0; i < ds; ++i) {
      auto ai = amps_(cut.compose(i, e));
      if (ai == std::complex<double>(0, 0)) continue;
      for (long j = 0; j < ds; ++j) {
        gram(i, j) += ai * std::conj(amps_(cut.compose(j, e)));
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  Eigen::VectorXd lam = es.eigenvalues();
  if (A.size() == small.size()) return lam;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(1L << A.size());
  out.tail(lam.size()) = lam;
  return out;
}

std::complex<double> StateVector::expectation(const Eigen::MatrixXcd& op,
                                              const Region& support) const {
  Eigen::MatrixXcd rho = reduced_density(support);
  return (op * rho).trace();
}

Eigen::MatrixXcd circuit_unitary(const LayeredCircuit& c) {
  if (c.n() > 13) throw FeasibilityError("dense circuit unitary capped at 13 qubits");
  const long dim = 1L << c.n();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  apply_circuit_to_columns(u, c);
  return u;
}

void apply_circuit_to_columns(Eigen::MatrixXcd& m, const LayeredCircuit& c) {
  const long dim = 1L << c.n();
  if (m.rows() != dim) throw DimensionError("matrix row count != 2^n");
  for (long col = 0; col < m.cols(); ++col) {
    auto v = m.col(col);
    for (const auto& layer : c.layers()) {
      for (const auto& g : layer) apply_gate_vec(v, c.n(), g);
    }
  }
}

void conjugate_density(Eigen::MatrixXcd& rho, const LayeredCircuit& c) {
  // U rho U^dagger = (U (U rho)^dagger)^dagger, two column passes.
  apply_circuit_to_columns(rho, c);
  rho.adjointInPlace();
  apply_circuit_to_columns(rho, c);
  rho.adjointInPlace();
}

Eigen::MatrixXcd expand_op(const Eigen::MatrixXcd& op, const Region& support, int n) {
  support.validate(n);
  const long ds = 1L << support.size();
  if (op.rows() != ds || op.cols() != ds) throw DimensionError("expand_op: shape mismatch");
  CutIndexer cut(n, support);
  const long dr = 1L << (n - support.size());
  const long dim = 1L << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (long e = 0; e < dr; ++e) {
    for (long i = 0; i < ds; ++i) {
      for (long j = 0; j < ds; ++j) {
        if (op(i, j) == std::complex<double>(0, 0)) continue;
        out(cut.compose(i, e), cut.compose(j, e)) = op(i, j);
      }
    }
  }
  return out;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, const Region& A, int n) {
  A.validate(n);
  CutIndexer cut(n, A);
  const long da = 1L << A.size();
  const long dr = 1L << (n - A.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da, da);
  for (long e = 0; e < dr; ++e) {
    for (long i = 0; i < da; ++i) {
      long row = cut.compose(i, e);
      for (long j = 0; j < da; ++j) {
        out(i, j) += rho(row, cut.compose(j, e));
      }
    }
  }
  return out;
}

double trace_norm_hermitian(const Eigen::MatrixXcd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace mhkit
