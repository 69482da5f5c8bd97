#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhkit/dense.hpp"
#include "mhkit/lightcone.hpp"

namespace mhkit {

enum class CertificateKind {
  MiBound,
  CatGluing,
  CatGluingEpsIndep,
  DimPower2,
  CorrelationBlowup,
  HistoryState,
};

const char* certificate_kind_name(CertificateKind k);

/// Machine-readable record of a lower-bound evaluation: every formula
/// input echoed, one fired branch, the resulting bound (on circuit depth
/// unless stated as a blowup), plus named auxiliary values from the
/// relevant derivation.
struct Certificate {
  CertificateKind kind;
  std::map<std::string, double> inputs;
  std::string branch;
  double bound = 0.0;        // >= 0 always
  bool fired = false;        // false on the "no bound" branches
  std::map<std::string, double> aux;
  std::string premise_note;  // premise bookkeeping, empty when none
};

/// Depth bound for states with pairwise MI >= alpha and small-region MI
/// <= beta inside the integer band (k, k+1). Branches:
///   eps_above_threshold  (no bound),
///   region_size          depth >= (1/4) log2 s,
///   ancilla              depth >= log2(n/a)   (a > 0 only),
///   eps                  depth >= log2((gap - 3H(eps))/eps) - 2.
/// The bound is the minimum over the enabled branches; `branch` names
/// the minimizer. For k >= 1 the band gap min{alpha-k, (k+1)-beta} is
/// used and flagged in premise_note.
Certificate eval_mi_bound(double alpha, double beta, double s, double eps, double a, double n);

/// Scan of the MI premises on a concrete state: alpha = min over qubit
/// pairs, beta = max over disjoint regions with |A|,|B| < s.
struct MiPremises {
  double alpha = 0.0;
  double beta = 0.0;
  Region alpha_witness_a, alpha_witness_b;
  Region beta_witness_a, beta_witness_b;
};
MiPremises check_mi_premises(const StateVector& psi, int s);

/// CAT-gluing bound (biases alpha, beta): gluing two beta-biased CATs
/// into one alpha-biased CAT within eps needs depth >= (1/2) log2(n/2)
/// whenever eps <= 0.037 |2H(beta) - H(alpha)|^{ln 4}.
Certificate eval_cat_gluing(double alpha, double beta, double eps, double n);

/// Epsilon-independent variant, requires H(alpha) > 2H(beta); the proof
/// bound 2^d >= (1/8)(gap * eps^{-1/ln4} - e) is reported in aux.
Certificate eval_cat_gluing_eps_indep(double alpha, double beta, double eps, double n);

/// Fires iff codespace_dim is not a power of two: depth >= (1/2) log2(d/l),
/// valid for preparations within eps = Delta/(64 m).
Certificate eval_dim_power2(double l, double m, double delta, double d, long codespace_dim);

/// Blowup bound B >= ((min{d,t}-1) t / (2 l^2 n))^{1/5} for codes with t
/// pairwise-correlated regions (correlation > 2*delta); needs gamma > 2*delta.
Certificate eval_correlation_blowup(double d, double t, double l, double n, double gamma,
                                    double delta);

enum class SpreadDirection { Forward, Backward };

/// Number of Pauli terms (|coef| > 1e-10) of the Heisenberg-evolved
/// observable: U o U^dagger (Forward) or U^dagger o U (Backward).
long pauli_spread(const LayeredCircuit& c, const PauliString& o, SpreadDirection dir,
                  std::size_t term_cap = (1u << 22));

}  // namespace mhkit
