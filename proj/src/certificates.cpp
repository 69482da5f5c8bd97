#include "mhkit/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhkit/entropy.hpp"
#include "mhkit/errors.hpp"

namespace mhkit {

const char* certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::MiBound: return "mi_bound";
    case CertificateKind::CatGluing: return "cat_gluing";
    case CertificateKind::CatGluingEpsIndep: return "cat_gluing_eps_indep";
    case CertificateKind::DimPower2: return "dim_power2";
    case CertificateKind::CorrelationBlowup: return "correlation_blowup";
    case CertificateKind::HistoryState: return "history_state";
  }
  return "?";
}

namespace {
const double kLn4 = std::log(4.0);
const double kE = std::exp(1.0);
}  // namespace

Certificate eval_mi_bound(double alpha, double beta, double s, double eps, double a, double n) {
  Certificate c;
  c.kind = CertificateKind::MiBound;
  c.inputs = {{"alpha", alpha}, {"beta", beta}, {"s", s}, {"eps", eps}, {"a", a}, {"n", n}};
  if (!(alpha > 0) || beta < alpha) {
    throw DimensionError("need 0 < alpha <= beta");
  }
  double k = std::floor(alpha);
  if (alpha == k) throw DimensionError("alpha must be strictly inside an integer band");
  if (beta >= k + 1) {
    throw DimensionError("band violation: need k < alpha <= beta < k+1");
  }
  if (!(eps > 0) || eps > 1) throw DimensionError("eps must lie in (0,1]");
  if (s < 1) throw DimensionError("s >= 1 required");
  if (a < 0) throw DimensionError("a >= 0 required");

  double gap = std::min(alpha - k, (k + 1) - beta);
  double threshold = std::pow(gap / (1.0 + 3.0 * kE), kLn4);
  c.aux["band_k"] = k;
  c.aux["gap"] = gap;
  c.aux["eps_threshold"] = threshold;
  if (k >= 1) {
    c.premise_note = "band k >= 1: gap = min{alpha-k, (k+1)-beta} generalization in use";
  }
  if (eps > threshold) {
    c.branch = "eps_above_threshold";
    c.bound = 0.0;
    c.fired = false;
    return c;
  }
  double bound_s = 0.25 * std::log2(s);
  double bound_eps = std::log2((gap - 3.0 * binary_entropy(eps)) / eps) - 2.0;
  c.aux["bound_region_size"] = bound_s;
  c.aux["bound_eps"] = bound_eps;
  c.aux["bound_eps_lemma_form"] = (1.0 - 1.0 / kLn4) * std::log2(1.0 / eps) - 1.0;
  double best = bound_s;
  c.branch = "region_size";
  if (a > 0) {
    double bound_anc = std::log2(n / a);
    c.aux["bound_ancilla"] = bound_anc;
    if (bound_anc < best) {
      best = bound_anc;
      c.branch = "ancilla";
    }
  }
  if (bound_eps < best) {
    best = bound_eps;
    c.branch = "eps";
  }
  c.bound = std::max(0.0, best);
  c.fired = true;
  return c;
}

MiPremises check_mi_premises(const StateVector& psi, int s) {
  const int n = psi.n();
  if (s < 2) throw DimensionError("premise scan needs s >= 2");
  MiPremises out;
  out.alpha = std::numeric_limits<double>::infinity();
  out.beta = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double mi = mutual_info_dense(psi, Region({i}), Region({j})).value;
      if (mi < out.alpha) {
        out.alpha = mi;
        out.alpha_witness_a = Region({i});
        out.alpha_witness_b = Region({j});
      }
    }
  }
  // All disjoint pairs with 1 <= |A|,|B| <= s-1 via a 3-way labeling.
  long pairs = 1;
  for (int q = 0; q < n; ++q) pairs *= 3;
  if (pairs > 4'000'000) throw FeasibilityError("premise enumeration too large");
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
    if (static_cast<int>(av.size()) >= s || static_cast<int>(bv.size()) >= s) continue;
    if (!av.empty() && !bv.empty() && av[0] > bv[0]) continue;  // unordered pair once
    Region A(av), B(bv);
    double mi = mutual_info_dense(psi, A, B).value;
    if (mi > out.beta) {
      out.beta = mi;
      out.beta_witness_a = A;
      out.beta_witness_b = B;
    }
  }
  return out;
}

Certificate eval_cat_gluing(double alpha, double beta, double eps, double n) {
  if (alpha < 0 || alpha > 1 || beta < 0 || beta > 1) {
    throw DimensionError("biases must lie in [0,1]");
  }
  if (n < 2) throw DimensionError("n >= 2 required");
  Certificate c;
  c.kind = CertificateKind::CatGluing;
  c.inputs = {{"alpha", alpha}, {"beta", beta}, {"eps", eps}, {"n", n}};
  double ha = binary_entropy(alpha);
  double hb = binary_entropy(beta);
  double gap = std::abs(2.0 * hb - ha);
  double threshold = 0.037 * std::pow(gap, kLn4);
  double log_bound = 0.5 * std::log2(n / 2.0);
  c.aux = {{"H_alpha", ha},
           {"H_beta", hb},
           {"gap", gap},
           {"eps_threshold", threshold},
           {"exact_case_bound", log_bound},
           {"threshold_exact_constant", std::pow(1.0 / (8.0 + kE), kLn4)}};
  c.aux["exact_case"] = (gap > 1e-12) ? 1.0 : 0.0;
  if (gap <= 1e-12) {
    c.branch = "entropy_balanced";
    c.bound = 0.0;
    c.fired = false;
    return c;
  }
  if (eps > threshold) {
    c.branch = "eps_above_threshold";
    c.bound = 0.0;
    c.fired = false;
    return c;
  }
  c.branch = "robust";
  c.bound = std::max(0.0, log_bound);
  c.fired = true;
  return c;
}

Certificate eval_cat_gluing_eps_indep(double alpha, double beta, double eps, double n) {
  double ha = binary_entropy(alpha);
  double hb = binary_entropy(beta);
  if (!(ha > 2.0 * hb)) {
    throw DimensionError("hypothesis H(alpha) > 2 H(beta) violated");
  }
  Certificate c;
  c.kind = CertificateKind::CatGluingEpsIndep;
  c.inputs = {{"alpha", alpha}, {"beta", beta}, {"eps", eps}, {"n", n}};
  double gap = ha - 2.0 * hb;
  double threshold = 0.037 * std::pow(gap, kLn4);
  double log_bound = 0.5 * std::log2(n / 2.0);
  // 2^d >= (1/8)(gap * eps^{-1/ln4} - e)
  double proof_rhs = (gap * std::pow(eps, -1.0 / kLn4) - kE) / 8.0;
  double proof_bound = proof_rhs > 0 ? std::log2(proof_rhs) : 0.0;
  c.aux = {{"H_alpha", ha},
           {"H_beta", hb},
           {"gap", gap},
           {"eps_threshold", threshold},
           {"proof_bound", proof_bound},
           {"log_n_bound", log_bound}};
  if (eps <= threshold) {
    // Below the threshold the pair-search disjunction resolves to the
    // n-branch outright, matching eval_cat_gluing on shared inputs.
    c.branch = "log_n";
    c.bound = std::max(0.0, log_bound);
    c.fired = true;
  } else {
    c.branch = "disjunction";
    c.bound = std::max(0.0, std::min(log_bound, proof_bound));
    c.fired = c.bound > 0;
  }
  return c;
}

Certificate eval_dim_power2(double l, double m, double delta, double d, long codespace_dim) {
  Certificate c;
  c.kind = CertificateKind::DimPower2;
  c.inputs = {{"l", l},
              {"m", m},
              {"delta", delta},
              {"d", d},
              {"dim", static_cast<double>(codespace_dim)}};
  if (delta > 1.0) throw DimensionError("gap Delta must be <= 1 (normalized terms)");
  if (!(d > l)) throw DimensionError("need distance d > locality l");
  if (codespace_dim < 1) throw DimensionError("dim >= 1 required");
  c.premise_note = "m >= n convention recorded, not enforced structurally";
  bool pow2 = (codespace_dim & (codespace_dim - 1)) == 0;
  c.aux["eps_threshold"] = delta / (64.0 * m);
  if (pow2) {
    c.branch = "dimension_power_of_two";
    c.bound = 0.0;
    c.fired = false;
    return c;
  }
  c.branch = "dimension_not_power_of_two";
  c.bound = 0.5 * std::log2(d / l);
  c.fired = true;
  return c;
}

Certificate eval_correlation_blowup(double d, double t, double l, double n, double gamma,
                                    double delta) {
  if (t < 2) throw DimensionError("need t >= 2 correlated regions");
  if (!(gamma > 2.0 * delta)) {
    throw DimensionError("premise gamma > 2*delta violated");
  }
  Certificate c;
  c.kind = CertificateKind::CorrelationBlowup;
  c.inputs = {{"d", d}, {"t", t}, {"l", l}, {"n", n}, {"gamma", gamma}, {"delta", delta}};
  double blowup = std::pow((std::min(d, t) - 1.0) * t / (2.0 * l * l * n), 0.2);
  c.branch = "blowup";
  c.bound = std::max(0.0, std::log2(std::max(blowup, 1.0)));  // depth form
  c.aux["blowup_bound"] = blowup;
  c.fired = blowup > 1.0;
  return c;
}

namespace {

using TermMap = std::map<std::pair<BitVec, BitVec>, std::complex<double>>;

void add_term(TermMap& m, const BitVec& x, const BitVec& z, std::complex<double> coef) {
  if (std::abs(coef) < 1e-14) return;
  auto key = std::make_pair(x, z);
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(std::move(key), coef);
  } else {
    it->second += coef;
  }
}

// Conjugates one term by a non-Clifford gate by densifying on its support.
void spread_generic(TermMap& out, const BitVec& x, const BitVec& z, std::complex<double> coef,
                    const Gate& g, bool forward) {
  Eigen::MatrixXcd u = gate_matrix(g);
  if (!forward) u.adjointInPlace();
  const int k = g.arity();
  const long dim = 1L << k;
  // Local part of the term's Hermitian representative on the gate support.
  PauliString local(k);
  for (int i = 0; i < k; ++i) {
    local.x().set(i, x.get(g.qubits[i]));
    local.z().set(i, z.get(g.qubits[i]));
  }
  local.set_phase(static_cast<int>(and_bits(local.x(), local.z()).popcount()) & 1);
  Eigen::MatrixXcd m = u * local.dense() * u.adjoint();
  // Decompose over the local Pauli basis.
  for (long code = 0; code < dim * dim; ++code) {
    PauliString basis(k);
    for (int i = 0; i < k; ++i) {
      int two = (code >> (2 * i)) & 3;
      basis.x().set(i, two & 1);
      basis.z().set(i, (two >> 1) & 1);
    }
    basis.set_phase(static_cast<int>(and_bits(basis.x(), basis.z()).popcount()) & 1);
    std::complex<double> comp = (basis.dense().adjoint() * m).trace() / static_cast<double>(dim);
    if (std::abs(comp) < 1e-14) continue;
    BitVec nx = x, nz = z;
    for (int i = 0; i < k; ++i) {
      nx.set(g.qubits[i], basis.x().get(i));
      nz.set(g.qubits[i], basis.z().get(i));
    }
    add_term(out, nx, nz, coef * comp);
  }
}

}  // namespace

long pauli_spread(const LayeredCircuit& c, const PauliString& o, SpreadDirection dir,
                  std::size_t term_cap) {
  if (o.n() != c.n()) throw DimensionError("observable length mismatch");
  if (c.has_measurement()) throw GateClassError("pauli_spread is unitary-only");
  const int n = c.n();
  const bool forward = (dir == SpreadDirection::Forward);
  TermMap terms;
  // Strip the phase into the coefficient; track bare (x, z).
  {
    PauliString h = o;
    int herm = static_cast<int>(and_bits(h.x(), h.z()).popcount()) & 1;
    std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    terms[{h.x(), h.z()}] = ip[(h.phase() - herm) & 3];
  }
  auto process_gate = [&](const Gate& g) {
    TermMap next;
    for (const auto& [key, coef] : terms) {
      if (g.is_clifford()) {
        PauliString p(n, key.first, key.second,
                      static_cast<int>(and_bits(key.first, key.second).popcount()) & 1);
        if (forward) {
          conjugate_pauli(p, g);
        } else {
          // U^dagger P U: conjugate by the inverse; Clifford kinds here are
          // self-inverse except S, where S^dagger P S = Z (S P S^dagger) Z when
          // the X bit is set; easiest exact route: conjugate 3 times (S^3 = S^-1
          // up to phase that cancels in conjugation).
          if (g.kind == GateKind::S) {
            conjugate_pauli(p, g);
            conjugate_pauli(p, g);
            conjugate_pauli(p, g);
          } else {
            conjugate_pauli(p, g);
          }
        }
        int herm = static_cast<int>(and_bits(p.x(), p.z()).popcount()) & 1;
        std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        add_term(next, p.x(), p.z(), coef * ip[(p.phase() - herm) & 3]);
      } else {
        spread_generic(next, key.first, key.second, coef, g, forward);
      }
    }
    terms = std::move(next);
    if (terms.size() > term_cap) {
      throw FeasibilityError("pauli_spread exceeded its term cap");
    }
  };
  if (forward) {
    for (const auto& layer : c.layers()) {
      for (const auto& g : layer) process_gate(g);
    }
  } else {
    for (auto lit = c.layers().rbegin(); lit != c.layers().rend(); ++lit) {
      for (const auto& g : *lit) process_gate(g);
    }
  }
  long count = 0;
  for (const auto& [key, coef] : terms) {
    if (std::abs(coef) > 1e-10) ++count;
  }
  return count;
}

}  // namespace mhkit
