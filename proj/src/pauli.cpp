#include "mhkit/pauli.hpp"

#include <algorithm>

namespace mhkit {

Region::Region(std::vector<int> qs) : qubits_(std::move(qs)) {
  std::sort(qubits_.begin(), qubits_.end());
  for (std::size_t i = 0; i + 1 < qubits_.size(); ++i) {
    if (qubits_[i] == qubits_[i + 1]) {
      throw DimensionError("region has a repeated qubit index");
    }
  }
  if (!qubits_.empty() && qubits_.front() < 0) {
    throw DimensionError("region has a negative qubit index");
  }
}

void Region::validate(int n) const {
  if (!qubits_.empty() && qubits_.back() >= n) {
    throw DimensionError("region index " + std::to_string(qubits_.back()) +
                         " out of range for n=" + std::to_string(n));
  }
}

bool Region::contains(int q) const {
  return std::binary_search(qubits_.begin(), qubits_.end(), q);
}

Region Region::complement(int n) const {
  std::vector<int> out;
  for (int q = 0; q < n; ++q) {
    if (!contains(q)) out.push_back(q);
  }
  return Region(out);
}

Region region_union(const Region& a, const Region& b) {
  std::vector<int> out;
  std::set_union(a.qubits_.begin(), a.qubits_.end(), b.qubits_.begin(), b.qubits_.end(),
                 std::back_inserter(out));
  return Region(out);
}

Region region_intersection(const Region& a, const Region& b) {
  std::vector<int> out;
  std::set_intersection(a.qubits_.begin(), a.qubits_.end(), b.qubits_.begin(), b.qubits_.end(),
                        std::back_inserter(out));
  return Region(out);
}

bool disjoint(const Region& a, const Region& b) {
  return region_intersection(a, b).empty();
}

bool Region::subset_of(const Region& o) const {
  return std::includes(o.qubits_.begin(), o.qubits_.end(), qubits_.begin(), qubits_.end());
}

PauliString PauliString::single(int n, int q, char which) {
  PauliString p(n);
  switch (which) {
    case 'X': p.x_.set(q, true); break;
    case 'Z': p.z_.set(q, true); break;
    case 'Y':
      p.x_.set(q, true);
      p.z_.set(q, true);
      p.phase_ = 1;
      break;
    case 'I': break;
    default: throw DimensionError("unknown Pauli letter");
  }
  return p;
}

PauliString PauliString::parse(const std::string& text) {
  std::size_t pos = 0;
  int sign = 0;  // i exponent of the printed sign
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    sign = (sign + 1) & 3;
    ++pos;
  }
  int n = static_cast<int>(text.size() - pos);
  if (n == 0) throw DimensionError("empty Pauli string");
  PauliString p(n);
  int ycount = 0;
  for (int q = 0; q < n; ++q) {
    switch (text[pos + q]) {
      case 'I': break;
      case 'X': p.x_.set(q, true); break;
      case 'Z': p.z_.set(q, true); break;
      case 'Y':
        p.x_.set(q, true);
        p.z_.set(q, true);
        ++ycount;
        break;
      default:
        throw DimensionError(std::string("unknown Pauli letter '") + text[pos + q] + "'");
    }
  }
  // The printed sign multiplies the sigma-string; Y = i XZ adds one i per Y.
  p.phase_ = (sign + ycount) & 3;
  return p;
}

std::string PauliString::to_string() const {
  int ycount = 0;
  std::string body(n_, 'I');
  for (int q = 0; q < n_; ++q) {
    bool xb = x_.get(q), zb = z_.get(q);
    if (xb && zb) {
      body[q] = 'Y';
      ++ycount;
    } else if (xb) {
      body[q] = 'X';
    } else if (zb) {
      body[q] = 'Z';
    }
  }
  static const char* signs[4] = {"", "i", "-", "-i"};
  return signs[(phase_ - ycount) & 3] + body;
}

bool PauliString::is_hermitian() const {
  return ((phase_ & 1) == (static_cast<int>(and_bits(x_, z_).popcount()) & 1));
}

Region PauliString::support() const {
  std::vector<int> qs;
  for (int q = 0; q < n_; ++q) {
    if (x_.get(q) || z_.get(q)) qs.push_back(q);
  }
  return Region(qs);
}

PauliString operator*(const PauliString& p, const PauliString& q) {
  if (p.n_ != q.n_) throw DimensionError("Pauli product: length mismatch");
  // (i^a X^x1 Z^z1)(i^b X^x2 Z^z2): moving Z^z1 past X^x2 costs (-1)^<z1,x2>.
  int phase = (p.phase_ + q.phase_ + 2 * static_cast<int>(dot(p.z_, q.x_))) & 3;
  return PauliString(p.n_, p.x_ ^ q.x_, p.z_ ^ q.z_, phase);
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n()) throw DimensionError("commutes: length mismatch");
  return !(dot(p.x(), q.z()) ^ dot(q.x(), p.z()));
}

Eigen::MatrixXcd PauliString::dense() const {
  using cd = std::complex<double>;
  const long dim = 1L << n_;
  static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // Column c maps to row c^xmask with sign from Z bits; qubit 0 is the
  // most significant index bit.
  long xmask = 0, zmask = 0;
  for (int q = 0; q < n_; ++q) {
    long bit = 1L << (n_ - 1 - q);
    if (x_.get(q)) xmask |= bit;
    if (z_.get(q)) zmask |= bit;
  }
  for (long c = 0; c < dim; ++c) {
    cd v = ipow[phase_];
    if (std::popcount(static_cast<unsigned long>(c & zmask)) & 1) v = -v;
    m(c ^ xmask, c) += v;
  }
  return m;
}

PauliString PauliString::restricted_to(const Region& A) const {
  PauliString out(A.size());
  int i = 0;
  for (int q : A) {
    out.x_.set(i, x_.get(q));
    out.z_.set(i, z_.get(q));
    ++i;
  }
  out.phase_ = phase_;
  return out;
}

PauliString PauliString::embedded(const PauliString& p, const Region& A, int n) {
  PauliString out(n);
  int i = 0;
  for (int q : A) {
    out.x_.set(q, p.x().get(i));
    out.z_.set(q, p.z().get(i));
    ++i;
  }
  out.phase_ = p.phase();
  return out;
}

}  // namespace mhkit
