#pragma once

#include <complex>
#include <map>
#include <vector>

#include "mhkit/bitvec.hpp"
#include "mhkit/circuit.hpp"

namespace mhkit {

/// State held as a sparse superposition of computational basis states.
/// Suited to circuits that are mostly basis permutations and diagonal
/// phases with a few branching (H / generic) gates; qubit count is
/// unbounded, term count is capped.
class SparseState {
public:
  explicit SparseState(int n, std::size_t term_cap = (1u << 22));
  static SparseState basis(const BitVec& bits, std::size_t term_cap = (1u << 22));

  int n() const { return n_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<BitVec, std::complex<double>>& terms() const { return terms_; }

  void apply_gate(const Gate& g);
  void apply_circuit(const LayeredCircuit& c);

  double prob_one(int q) const;
  /// Squared overlap with "qubits in `qs` all equal the given bits".
  double mass_with_bits(const std::vector<int>& qs, const BitVec& bits) const;
  std::complex<double> amplitude(const BitVec& bits) const;
  double norm() const;

private:
  int n_;
  std::size_t cap_;
  std::map<BitVec, std::complex<double>> terms_;

  void add_term(std::map<BitVec, std::complex<double>>& into, BitVec key,
                std::complex<double> amp) const;
};

}  // namespace mhkit
