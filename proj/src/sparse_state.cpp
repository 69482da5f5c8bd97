#include "mhkit/sparse_state.hpp"

#include <cmath>
#include <numbers>

#include "mhkit/errors.hpp"

namespace mhkit {

namespace {
constexpr double kPrune = 1e-12;
}

SparseState::SparseState(int n, std::size_t term_cap) : n_(n), cap_(term_cap) {
  terms_[BitVec(n)] = 1.0;
}

SparseState SparseState::basis(const BitVec& bits, std::size_t term_cap) {
  SparseState s(static_cast<int>(bits.size()), term_cap);
  s.terms_.clear();
  s.terms_[bits] = 1.0;
  return s;
}

void SparseState::add_term(std::map<BitVec, std::complex<double>>& into, BitVec key,
                           std::complex<double> amp) const {
  auto it = into.find(key);
  if (it == into.end()) {
    into.emplace(std::move(key), amp);
  } else {
    it->second += amp;
  }
}

void SparseState::apply_gate(const Gate& g) {
  using cd = std::complex<double>;
  switch (g.kind) {
    case GateKind::X: {
      std::map<BitVec, cd> out;
      for (auto& [k, a] : terms_) {
        BitVec nk = k;
        nk.flip(g.qubits[0]);
        out.emplace(std::move(nk), a);
      }
      terms_ = std::move(out);
      return;
    }
    case GateKind::Z: {
      for (auto& [k, a] : terms_) {
        if (k.get(g.qubits[0])) a = -a;
      }
      return;
    }
    case GateKind::S: {
      for (auto& [k, a] : terms_) {
        if (k.get(g.qubits[0])) a *= cd(0, 1);
      }
      return;
    }
    case GateKind::T: {
      cd w = std::polar(1.0, std::numbers::pi / 4);
      for (auto& [k, a] : terms_) {
        if (k.get(g.qubits[0])) a *= w;
      }
      return;
    }
    case GateKind::Y: {
      std::map<BitVec, cd> out;
      for (auto& [k, a] : terms_) {
        BitVec nk = k;
        bool was = nk.get(g.qubits[0]);
        nk.flip(g.qubits[0]);
        out.emplace(std::move(nk), was ? a * cd(0, -1) : a * cd(0, 1));
      }
      terms_ = std::move(out);
      return;
    }
    case GateKind::CZ: {
      for (auto& [k, a] : terms_) {
        if (k.get(g.qubits[0]) && k.get(g.qubits[1])) a = -a;
      }
      return;
    }
    case GateKind::CNOT: {
      std::map<BitVec, cd> out;
      for (auto& [k, a] : terms_) {
        BitVec nk = k;
        if (nk.get(g.qubits[0])) nk.flip(g.qubits[1]);
        add_term(out, std::move(nk), a);
      }
      terms_ = std::move(out);
      return;
    }
    case GateKind::SWAP: {
      std::map<BitVec, cd> out;
      for (auto& [k, a] : terms_) {
        BitVec nk = k;
        bool b0 = nk.get(g.qubits[0]), b1 = nk.get(g.qubits[1]);
        nk.set(g.qubits[0], b1);
        nk.set(g.qubits[1], b0);
        out.emplace(std::move(nk), a);
      }
      terms_ = std::move(out);
      return;
    }
    case GateKind::FANOUT: {
      std::map<BitVec, cd> out;
      for (auto& [k, a] : terms_) {
        BitVec nk = k;
        if (nk.get(g.qubits[0])) {
          for (std::size_t i = 1; i < g.qubits.size(); ++i) nk.flip(g.qubits[i]);
        }
        add_term(out, std::move(nk), a);
      }
      terms_ = std::move(out);
      return;
    }
    case GateKind::H:
    case GateKind::GENERIC1: {
      Eigen::MatrixXcd m = gate_matrix(g);
      int q = g.qubits[0];
      std::map<BitVec, cd> out;
      for (const auto& [k, a] : terms_) {
        int in = k.get(q) ? 1 : 0;
        for (int r = 0; r < 2; ++r) {
          cd coef = m(r, in) * a;
          if (std::abs(coef) < kPrune) continue;
          BitVec nk = k;
          nk.set(q, r);
          add_term(out, std::move(nk), coef);
        }
      }
      terms_ = std::move(out);
      break;
    }
    case GateKind::GENERIC2: {
      Eigen::MatrixXcd m = gate_matrix(g);
      int q0 = g.qubits[0], q1 = g.qubits[1];
      std::map<BitVec, cd> out;
      for (const auto& [k, a] : terms_) {
        int in = (k.get(q0) ? 2 : 0) | (k.get(q1) ? 1 : 0);
        for (int r = 0; r < 4; ++r) {
          cd coef = m(r, in) * a;
          if (std::abs(coef) < kPrune) continue;
          BitVec nk = k;
          nk.set(q0, (r >> 1) & 1);
          nk.set(q1, r & 1);
          add_term(out, std::move(nk), coef);
        }
      }
      terms_ = std::move(out);
      break;
    }
    default:
      throw GateClassError("sparse simulator: unsupported gate kind");
  }
  // Branching gates can cancel terms; sweep them out and enforce the cap.
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kPrune) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  if (terms_.size() > cap_) {
    throw FeasibilityError("sparse simulator exceeded its term cap");
  }
}

void SparseState::apply_circuit(const LayeredCircuit& c) {
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) apply_gate(g);
  }
}

double SparseState::prob_one(int q) const {
  double p = 0;
  for (const auto& [k, a] : terms_) {
    if (k.get(q)) p += std::norm(a);
  }
  return p;
}

double SparseState::mass_with_bits(const std::vector<int>& qs, const BitVec& bits) const {
  double p = 0;
  for (const auto& [k, a] : terms_) {
    bool match = true;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (k.get(qs[i]) != bits.get(i)) {
        match = false;
        break;
      }
    }
    if (match) p += std::norm(a);
  }
  return p;
}

std::complex<double> SparseState::amplitude(const BitVec& bits) const {
  auto it = terms_.find(bits);
  return it == terms_.end() ? std::complex<double>(0, 0) : it->second;
}

double SparseState::norm() const {
  double p = 0;
  for (const auto& [k, a] : terms_) p += std::norm(a);
  return std::sqrt(p);
}

}  // namespace mhkit
