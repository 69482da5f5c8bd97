#include "mhkit/tableau.hpp"

#include <algorithm>

namespace mhkit {

int PauliRowReduce::run(std::vector<PauliString>& rows, const std::vector<int>& cols,
                        bool drop_identity_rows) {
  int pivot_row = 0;
  for (int col : cols) {
    int found = -1;
    for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r) {
      if (col_bit(rows[r], col)) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(rows[pivot_row], rows[found]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != pivot_row && col_bit(rows[r], col)) {
        rows[r] = rows[r] * rows[pivot_row];
      }
    }
    ++pivot_row;
  }
  for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r) {
    if (rows[r].is_identity_bits() && rows[r].phase() != 0) {
      throw InvalidGroupError("generators produce -I (or a non-Hermitian multiple of I)");
    }
  }
  if (drop_identity_rows) {
    rows.resize(pivot_row);
  }
  return pivot_row;
}

static std::vector<int> canonical_cols(int n) {
  std::vector<int> cols;
  cols.reserve(2 * n);
  for (int q = 0; q < n; ++q) cols.push_back(2 * q);      // x block first
  for (int q = 0; q < n; ++q) cols.push_back(2 * q + 1);  // then z block
  return cols;
}

void StabilizerTableau::reduce_canonical() {
  PauliRowReduce::run(rows_, canonical_cols(n_), /*drop_identity_rows=*/true);
  canonical_ = true;
}

void StabilizerTableau::ensure_canonical() const {
  if (!canonical_) {
    PauliRowReduce::run(rows_, canonical_cols(n_), /*drop_identity_rows=*/true);
    canonical_ = true;
  }
}

StabilizerTableau StabilizerTableau::canonicalize(int n, std::vector<PauliString> generators) {
  for (const auto& g : generators) {
    if (g.n() != n) throw DimensionError("generator length mismatch");
    if (!g.is_hermitian()) {
      throw InvalidGroupError("generator " + g.to_string() + " is not Hermitian");
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (!commutes(generators[i], generators[j])) {
        throw InvalidGroupError("generators " + generators[i].to_string() + " and " +
                                generators[j].to_string() + " anticommute");
      }
    }
  }
  StabilizerTableau t;
  t.n_ = n;
  t.rows_ = std::move(generators);
  t.reduce_canonical();
  return t;
}

StabilizerTableau StabilizerTableau::zero_state(int n) {
  std::vector<PauliString> gens;
  gens.reserve(n);
  for (int q = 0; q < n; ++q) gens.push_back(PauliString::single(n, q, 'Z'));
  return canonicalize(n, std::move(gens));
}

StabilizerTableau StabilizerTableau::basis_state(const BitVec& bits) {
  int n = static_cast<int>(bits.size());
  std::vector<PauliString> gens;
  for (int q = 0; q < n; ++q) {
    PauliString z = PauliString::single(n, q, 'Z');
    if (bits.get(q)) z.set_phase(2);
    gens.push_back(z);
  }
  return canonicalize(n, std::move(gens));
}

StabilizerTableau StabilizerTableau::restrict_to(const Region& A) const {
  A.validate(n_);
  ensure_canonical();
  // Eliminate on the complement's columns first; rows below those pivots
  // are exactly the subgroup supported inside A.
  Region comp = A.complement(n_);
  std::vector<int> cols;
  for (int q : comp) {
    cols.push_back(2 * q);
    cols.push_back(2 * q + 1);
  }
  std::vector<PauliString> rows = rows_;
  int outside_rank = PauliRowReduce::run(rows, cols, /*drop_identity_rows=*/false);
  std::vector<PauliString> inside;
  for (int r = outside_rank; r < static_cast<int>(rows.size()); ++r) {
    inside.push_back(rows[r].restricted_to(A));
  }
  return canonicalize(A.size(), std::move(inside));
}

std::vector<PauliString> StabilizerTableau::enumerate_group() const {
  if (rank() > 20) throw FeasibilityError("group enumeration capped at rank 20");
  std::vector<PauliString> out;
  out.reserve(std::size_t(1) << rank());
  PauliString cur = PauliString::identity(n_);
  out.push_back(cur);
  // Gray code walk: element k differs from k-1 by generator ctz(k).
  for (std::uint64_t k = 1; k < (std::uint64_t(1) << rank()); ++k) {
    int g = std::countr_zero(k);
    cur = cur * rows_[g];
    out.push_back(cur);
  }
  return out;
}

Eigen::MatrixXcd StabilizerTableau::reduced_density(const Region& A) const {
  if (A.size() > 12) throw FeasibilityError("reduced_density capped at 12 qubits");
  StabilizerTableau sub = restrict_to(A);
  return sub.density();
}

Eigen::MatrixXcd StabilizerTableau::density() const {
  if (n_ > 12) throw FeasibilityError("dense stabilizer density capped at 12 qubits");
  using cd = std::complex<double>;
  const long dim = 1L << n_;
  static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  PauliString cur = PauliString::identity(n_);
  auto add_element = [&](const PauliString& p) {
    long xmask = 0, zmask = 0;
    for (int q = 0; q < n_; ++q) {
      long bit = 1L << (n_ - 1 - q);
      if (p.x().get(q)) xmask |= bit;
      if (p.z().get(q)) zmask |= bit;
    }
    cd v0 = ipow[p.phase()];
    for (long c = 0; c < dim; ++c) {
      cd v = v0;
      if (std::popcount(static_cast<unsigned long>(c & zmask)) & 1) v = -v;
      m(c ^ xmask, c) += v;
    }
  };
  add_element(cur);
  for (std::uint64_t k = 1; k < (std::uint64_t(1) << rank()); ++k) {
    cur = cur * rows_[std::countr_zero(k)];
    add_element(cur);
  }
  m /= static_cast<double>(dim);
  return m;
}

std::optional<int> StabilizerTableau::member_phase(const PauliString& p) const {
  if (p.n() != n_) throw DimensionError("member_phase: length mismatch");
  ensure_canonical();
  // Reduce p by the canonical rows greedily: canonical form means each
  // pivot column is set in exactly one row.
  PauliString acc = p;
  for (const auto& row : rows_) {
    int lead = -1;
    for (int col : canonical_cols(n_)) {
      if (PauliRowReduce::col_bit(row, col)) {
        lead = col;
        break;
      }
    }
    if (lead >= 0 && PauliRowReduce::col_bit(acc, lead)) {
      acc = acc * row;
    }
  }
  if (!acc.is_identity_bits()) return std::nullopt;
  // p * (matched product) = i^k I, so the group assigns p phase p.phase - k... ;
  // acc = p * prod(rows), and prod(rows) is in the group, so p in <rows> bits-wise
  // with group element g = prod having g = i^{-acc.phase} p.
  int k = (p.phase() - acc.phase()) & 3;
  return k;
}

bool StabilizerTableau::contains(const PauliString& p) const {
  auto ph = member_phase(p);
  return ph && *ph == p.phase();
}

DyadicOverlap overlap(const StabilizerTableau& s, const StabilizerTableau& t) {
  if (s.n() != t.n()) throw DimensionError("overlap: qubit count mismatch");
  const int n = s.n();
  // Zassenhaus over the symplectic coordinates: rows [u|u] for u in S and
  // [w|0] for w in T; after elimination on the left block, rows with a
  // zero left half carry an intersection basis in the right half.
  const int cols = 4 * n;
  struct Row {
    BitVec left, right;
  };
  auto to_bits = [n](const PauliString& p) {
    BitVec v(2 * n);
    for (int q = 0; q < n; ++q) {
      v.set(2 * q, p.x().get(q));
      v.set(2 * q + 1, p.z().get(q));
    }
    return v;
  };
  std::vector<Row> rows;
  for (const auto& u : s.generators()) rows.push_back({to_bits(u), to_bits(u)});
  for (const auto& w : t.generators()) rows.push_back({to_bits(w), BitVec(2 * n)});
  int pivot = 0;
  for (int c = 0; c < cols / 2; ++c) {
    int found = -1;
    for (int r = pivot; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r].left.get(c)) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(rows[pivot], rows[found]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != pivot && rows[r].left.get(c)) {
        rows[r].left ^= rows[pivot].left;
        rows[r].right ^= rows[pivot].right;
      }
    }
    ++pivot;
  }
  // Intersection basis, as bare Paulis.
  std::vector<PauliString> basis;
  for (int r = pivot; r < static_cast<int>(rows.size()); ++r) {
    if (!rows[r].right.any()) continue;
    PauliString p(n);
    for (int q = 0; q < n; ++q) {
      p.x().set(q, rows[r].right.get(2 * q));
      p.z().set(q, rows[r].right.get(2 * q + 1));
    }
    basis.push_back(p);
  }
  int k = static_cast<int>(basis.size());
  // Signs: the discrepancy between the phase S assigns and the phase T
  // assigns is linear over the intersection; any mismatch zeroes the trace.
  for (auto& p : basis) {
    p.set_phase(static_cast<int>(and_bits(p.x(), p.z()).popcount()) & 1);  // Hermitian rep
    auto ps = s.member_phase(p);
    auto pt = t.member_phase(p);
    if (!ps || !pt) throw InvalidGroupError("internal: intersection element not in both groups");
    if (*ps != *pt) return DyadicOverlap{true, 0};
  }
  return DyadicOverlap{false, k - n};
}

void StabilizerTableau::apply_pauli_frame(const PauliString& p) {
  // Sign flips only; the canonical bit structure is untouched.
  for (auto& row : rows_) {
    if (!commutes(row, p)) row.mul_phase(2);
  }
}

}  // namespace mhkit
