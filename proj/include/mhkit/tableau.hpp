#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mhkit/pauli.hpp"

namespace mhkit {

/// Overlap tr(rho sigma) of two stabilizer states: exactly 0 or 2^exponent.
struct DyadicOverlap {
  bool zero = false;
  int exponent = 0;  // value = 2^exponent when nonzero
  double value() const { return zero ? 0.0 : std::ldexp(1.0, exponent); }
};

/// Canonicalized generating set of a stabilizer group (abelian Pauli
/// subgroup without -I). rank < n describes a mixed stabilizer state,
/// rank == n a pure one. Canonical form is the unique reduced row
/// echelon form over F2 with column order x_0..x_{n-1}, z_0..z_{n-1},
/// phases carried through every row operation.
class StabilizerTableau {
public:
  StabilizerTableau() = default;

  /// Validates commutation and Hermiticity, row-reduces, rejects -I.
  static StabilizerTableau canonicalize(int n, std::vector<PauliString> generators);

  /// |0^n> (or the given computational basis state).
  static StabilizerTableau zero_state(int n);
  static StabilizerTableau basis_state(const BitVec& bits);

  int n() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<PauliString>& generators() const {
    ensure_canonical();
    return rows_;
  }

  bool operator==(const StabilizerTableau& o) const {
    ensure_canonical();
    o.ensure_canonical();
    return n_ == o.n_ && rows_ == o.rows_;
  }

  /// S_A = { sigma_A : sigma_A (x) I in S }, as a tableau on |A| qubits.
  StabilizerTableau restrict_to(const Region& A) const;

  /// (1/2^|A|) sum of the restricted group, dense. |A| <= 12.
  Eigen::MatrixXcd reduced_density(const Region& A) const;
  Eigen::MatrixXcd density() const;  // full-state density, n <= 12

  /// tr(rho sigma); a power of 1/2 or exactly 0.
  friend DyadicOverlap overlap(const StabilizerTableau& s, const StabilizerTableau& t);

  /// Is the signed Pauli p an element of the group? (bits and phase both match)
  bool contains(const PauliString& p) const;
  /// If p's bare (x,z) lies in the row space, the phase the group assigns it.
  std::optional<int> member_phase(const PauliString& p) const;

  /// Gray-code enumeration of all 2^rank signed elements. rank <= 20.
  std::vector<PauliString> enumerate_group() const;

  /// Z measurement of qubit q. `forced` pins the outcome (error when its
  /// Born probability is 0); otherwise `coin` supplies random bits.
  struct MeasureResult {
    int outcome = 0;
    bool deterministic = false;
    double probability = 1.0;
  };
  template <typename Coin>
  MeasureResult measure_z(int q, std::optional<int> forced, Coin&& coin);

  void apply_pauli_frame(const PauliString& p);  // conjugate every generator by p

private:
  int n_ = 0;
  // Measurement updates leave a valid independent generating set but not
  // the canonical form; reduction is deferred until a canonical view is
  // needed.
  mutable std::vector<PauliString> rows_;
  mutable bool canonical_ = true;

  void reduce_canonical();
  void ensure_canonical() const;
};

/// Gaussian elimination of Pauli rows over an arbitrary column order;
/// shared by canonicalization and restriction.
struct PauliRowReduce {
  // Column ids: 2*q for x_q, 2*q+1 for z_q.
  static bool col_bit(const PauliString& p, int col) {
    return (col & 1) ? p.z().get(col >> 1) : p.x().get(col >> 1);
  }
  /// In-place RREF over the given column order; returns the number of
  /// pivot rows. Rows beyond that count have zero bits in every listed
  /// column. Throws InvalidGroupError if an identity row with phase -1
  /// appears (the group would contain -I).
  static int run(std::vector<PauliString>& rows, const std::vector<int>& cols,
                 bool drop_identity_rows);
};

template <typename Coin>
StabilizerTableau::MeasureResult StabilizerTableau::measure_z(int q, std::optional<int> forced,
                                                              Coin&& coin) {
  MeasureResult r;
  int anti = -1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].x().get(q)) {
      anti = static_cast<int>(i);
      break;
    }
  }
  PauliString zq = PauliString::single(n_, q, 'Z');
  if (anti >= 0) {
    r.deterministic = false;
    r.probability = 0.5;
    r.outcome = forced ? *forced : (coin() ? 1 : 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) != anti && rows_[i].x().get(q)) {
        rows_[i] = rows_[i] * rows_[anti];
      }
    }
    zq.set_phase(r.outcome ? 2 : 0);
    rows_[anti] = zq;
    canonical_ = false;
    return r;
  }
  auto ph = member_phase(zq);
  if (ph) {
    r.deterministic = true;
    r.probability = 1.0;
    r.outcome = (*ph == 2) ? 1 : 0;
    if (forced && *forced != r.outcome) {
      throw ImpossibleOutcomeError("forced outcome has probability 0");
    }
    return r;
  }
  // Undetermined direction of a mixed state: outcome is a fresh coin and
  // the group grows by (-1)^o Z_q.
  r.deterministic = false;
  r.probability = 0.5;
  r.outcome = forced ? *forced : (coin() ? 1 : 0);
  zq.set_phase(r.outcome ? 2 : 0);
  rows_.push_back(zq);
  canonical_ = false;
  return r;
}

}  // namespace mhkit
