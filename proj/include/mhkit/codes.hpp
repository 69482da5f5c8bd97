#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhkit/dense.hpp"
#include "mhkit/simulate.hpp"
#include "mhkit/tableau.hpp"

namespace mhkit {

/// Sum of Hermitian terms, each on a few qubits. `normalized` rescales
/// any term with operator norm above 1.
class LocalHamiltonian {
public:
  struct Term {
    Region support;
    Eigen::MatrixXcd op;
  };

  LocalHamiltonian(int n, std::vector<Term> terms, bool normalize = false);

  int n() const { return n_; }
  int term_count() const { return static_cast<int>(terms_.size()); }
  int locality() const;
  const std::vector<Term>& terms() const { return terms_; }

  Eigen::MatrixXcd dense() const;           // n <= 13
  void apply(const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const;  // matrix-free
  bool is_real() const;
  double energy(const StateVector& psi) const;

  /// Extra -|0><0| term per listed ancilla qubit (indices must already
  /// exist in [0, n)).
  void add_ancilla_penalties(const Region& ancillas);

  /// Text format: lines `TERM q0,q1,... : re,im re,im ...` (row-major).
  static LocalHamiltonian parse(const std::string& text);
  std::string serialize() const;

private:
  int n_;
  std::vector<Term> terms_;
};

enum class CodeProvenance { StabilizerGenerators, HamiltonianGroundspace, LocalStabilizer };

/// Subspace of n-qubit states: dense projector plus, when it came from
/// stabilizer data, the tableau behind it.
class CodeSpace {
public:
  static CodeSpace from_projector(int n, Eigen::MatrixXcd projector, CodeProvenance prov);
  static CodeSpace from_stabilizer(const StabilizerTableau& t);  // dim 2^{n-rank}

  int n() const { return n_; }
  long dim() const { return dim_; }
  CodeProvenance provenance() const { return prov_; }
  const Eigen::MatrixXcd& projector() const { return projector_; }
  const std::optional<StabilizerTableau>& tableau() const { return stab_; }

  /// Orthonormal codeword basis (2^n x dim), cached.
  const Eigen::MatrixXcd& basis() const;

  /// Commuting projector terms (I+g)/2 for stabilizer-backed codes.
  std::vector<LocalHamiltonian::Term> commuting_projector_terms() const;

private:
  int n_ = 0;
  long dim_ = 0;
  CodeProvenance prov_ = CodeProvenance::HamiltonianGroundspace;
  Eigen::MatrixXcd projector_;
  std::optional<StabilizerTableau> stab_;
  mutable Eigen::MatrixXcd basis_;
};

struct GroundspaceResult {
  CodeSpace code;
  double gap = 0.0;            // lambda_1 - lambda_0 across the ground cluster
  double ground_energy = 0.0;  // lambda_0
};

/// Dense eigendecomposition; ground cluster within 1e-8 of the minimum.
/// Throws on ambiguous clustering near the tolerance.
GroundspaceResult groundspace(const LocalHamiltonian& h);

/// Matrix-free Lanczos estimate of (lambda_0, lambda_1) for real
/// Hamiltonians too large for the dense path (up to ~20 qubits).
std::pair<double, double> low_spectrum_lanczos(const LocalHamiltonian& h, int iters = 300,
                                               std::uint64_t seed = 1);

/// Largest d such that every region with fewer than d qubits passes the
/// Knill-Laflamme erasure conditions; dim-1 codes give n+1.
int distance_bruteforce(const CodeSpace& c);
bool region_correctable(const CodeSpace& c, const Region& A);

/// Joint +1 eigenspace of the weight <= l elements of the state's group.
CodeSpace local_stab_code(const StabilizerTableau& t, int l);

/// Span of states that match psi's reduced matrices on every size-l
/// region, realized as the groundspace of sum_A (I - supp(psi_A)).
CodeSpace local_equivalence_code(const StateVector& psi, int l);

struct InfectiousnessReport {
  int blowup = 1;
  int l = 1;
  long dim_small = 0, dim_mid = 0, dim_big = 0;
  double residual_lower = 0.0;  // C_{B^2 l}(psi) inside U C^stab_{Bl}(phi)
  double residual_upper = 0.0;  // U C^stab_{Bl}(phi) inside C_l(psi)
  bool premise_checked = false;
  bool premise_holds = false;   // d_l(psi) > B^2 l
  int distance_l = 0;
  bool equality_fired = false;
  double equality_residual = 0.0;
  bool inconclusive = false;    // premise unverifiable at this size
};

/// Containment chain for psi = U phi: builds all three spaces densely
/// and reports subspace residuals ||(I-P_outer) P_inner||_2.
InfectiousnessReport infectiousness_check(const StabilizerTableau& phi, const LayeredCircuit& u,
                                          int l);

/// (1/B) d(UC) <= d(C) <= B d(UC) with brute-force distances.
bool distance_sandwich_check(const CodeSpace& c, const LayeredCircuit& u);

struct RobustnessParams {
  double eps = 0.0;
  double delta = 0.0;  // sqrt(eps m / gap)
  int l = 0;
  bool empirical_pass = false;
  double worst_ratio = 0.0;  // max over samples of dist / bound
};

/// (eps, sqrt(eps m / gap), l)-robustness of the groundspace, with a
/// randomized check that locally-close states stay delta-close.
RobustnessParams robustness_params(const LocalHamiltonian& h, double eps, int samples = 20,
                                   std::uint64_t seed = 11);

/// rho_{MC} = rho_M (x) rho_C for codes from commuting projectors, with
/// C the complement of M and its projector neighborhood.
bool disentangle_product_check(const CodeSpace& c,
                               const std::vector<LocalHamiltonian::Term>& projectors,
                               const Region& m_region);

struct CorrelatedRegionsResult {
  std::vector<Region> surviving;  // maximal prefix, pairwise > gamma
  std::vector<double> pairwise;   // row-major over the checked prefix pairs
};
CorrelatedRegionsResult correlated_regions(const StateVector& psi,
                                           const std::vector<Region>& partition, double gamma);

/// Named small codes and Hamiltonians.
StabilizerTableau code_422_tableau();
StabilizerTableau code_513_tableau();
LocalHamiltonian stabilizer_hamiltonian(const StabilizerTableau& t);
/// Feynman-Kitaev Hamiltonian for the CAT-preparation history on
/// 2n qubits (clock 0..n-1, state n..2n-1): 5-local, 3n-1 terms,
/// unique frustration-free ground state.
LocalHamiltonian cat_history_hamiltonian(int n);

/// Statevector of a pure (rank n) stabilizer tableau, n <= 12.
StateVector tableau_to_statevector(const StabilizerTableau& t);

}  // namespace mhkit
