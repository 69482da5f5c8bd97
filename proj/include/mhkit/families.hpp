#pragma once

#include <optional>
#include <string>

#include "mhkit/dense.hpp"
#include "mhkit/entropy.hpp"

namespace mhkit {

enum class FamilyKind { BiasedCat, WState, CatHistory };

/// Explicit state families: the gamma-biased CAT state
/// sqrt(gamma)|0^n> + sqrt(1-gamma)|1^n>, the W state, and the
/// clock-state superposition recording the CAT preparation history
/// (n clock qubits 0..n-1 in unary, then n state qubits).
struct StateFamily {
  FamilyKind kind;
  int n = 0;           // CatHistory lives on 2n qubits
  double gamma = 0.5;  // BiasedCat only

  static StateFamily biased_cat(int n, double gamma);
  static StateFamily w_state(int n);
  static StateFamily cat_history(int n);
  /// "biased_cat:0.1:8" / "w_state:6" / "cat_history:4"
  static StateFamily parse(const std::string& text);

  int total_qubits() const { return kind == FamilyKind::CatHistory ? 2 * n : n; }
  StateVector build() const;

  /// Closed-form MI when one is known for (A, B); BiasedCat has
  /// I(A:B) = H(gamma) for disjoint nonempty A, B with A u B != [n].
  std::optional<double> analytic_mi(const Region& A, const Region& B) const;
};

}  // namespace mhkit
