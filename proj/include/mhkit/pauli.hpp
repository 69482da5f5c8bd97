#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mhkit/bitvec.hpp"
#include "mhkit/errors.hpp"

namespace mhkit {

/// Ordered set of distinct qubit indices in [0, n).
class Region {
public:
  Region() = default;
  Region(std::initializer_list<int> qs) : Region(std::vector<int>(qs)) {}
  explicit Region(std::vector<int> qs);

  /// Throws DimensionError unless every index is < n.
  void validate(int n) const;

  int size() const { return static_cast<int>(qubits_.size()); }
  bool empty() const { return qubits_.empty(); }
  bool contains(int q) const;
  const std::vector<int>& qubits() const { return qubits_; }
  int operator[](int i) const { return qubits_[i]; }

  Region complement(int n) const;
  friend Region region_union(const Region& a, const Region& b);
  friend Region region_intersection(const Region& a, const Region& b);
  friend bool disjoint(const Region& a, const Region& b);
  bool subset_of(const Region& o) const;
  bool operator==(const Region& o) const = default;

  auto begin() const { return qubits_.begin(); }
  auto end() const { return qubits_.end(); }

private:
  std::vector<int> qubits_;  // strictly increasing
};

/// n-qubit Pauli operator stored as i^phase * X^x Z^z with phase in Z_4.
/// Y = i XZ, so a Hermitian Pauli has phase == |{i : x_i z_i = 1}| (mod 2).
class PauliString {
public:
  PauliString() = default;
  explicit PauliString(int n) : n_(n), x_(n), z_(n), phase_(0) {}
  PauliString(int n, BitVec x, BitVec z, int phase)
      : n_(n), x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {}

  static PauliString identity(int n) { return PauliString(n); }
  /// Single-qubit X/Y/Z embedded at qubit q.
  static PauliString single(int n, int q, char which);

  /// Text form: optional sign prefix (+, -, +i, -i, i) then {I,X,Y,Z}^n.
  static PauliString parse(const std::string& text);
  std::string to_string() const;

  int n() const { return n_; }
  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }
  BitVec& x() { return x_; }
  BitVec& z() { return z_; }
  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = p & 3; }
  void mul_phase(int p) { phase_ = (phase_ + p) & 3; }

  bool is_identity_bits() const { return !x_.any() && !z_.any(); }
  bool is_hermitian() const;
  int weight() const { return static_cast<int>(or_bits(x_, z_).popcount()); }
  Region support() const;

  friend PauliString operator*(const PauliString& p, const PauliString& q);
  friend bool commutes(const PauliString& p, const PauliString& q);

  bool operator==(const PauliString& o) const = default;
  bool same_bits(const PauliString& o) const { return x_ == o.x_ && z_ == o.z_; }

  /// Dense 2^n x 2^n matrix; qubit 0 is the most significant index bit.
  Eigen::MatrixXcd dense() const;

  /// Restriction to the qubits of A (caller guarantees support(P) within A).
  PauliString restricted_to(const Region& A) const;
  /// Embedding of an |A|-qubit Pauli into n qubits at positions A.
  static PauliString embedded(const PauliString& p, const Region& A, int n);

private:
  int n_ = 0;
  BitVec x_, z_;
  int phase_ = 0;  // exponent of i
};

}  // namespace mhkit
