#include "mhkit/families.hpp"

#include <cmath>

#include "mhkit/errors.hpp"

namespace mhkit {

StateFamily StateFamily::biased_cat(int n, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw DimensionError("biased_cat needs gamma in [0,1]");
  if (n < 1) throw DimensionError("biased_cat needs n >= 1");
  return StateFamily{FamilyKind::BiasedCat, n, gamma};
}

StateFamily StateFamily::w_state(int n) {
  if (n < 1) throw DimensionError("w_state needs n >= 1");
  return StateFamily{FamilyKind::WState, n, 0.0};
}

StateFamily StateFamily::cat_history(int n) {
  if (n < 1) throw DimensionError("cat_history needs n >= 1");
  return StateFamily{FamilyKind::CatHistory, n, 0.0};
}

StateFamily StateFamily::parse(const std::string& text) {
  auto c1 = text.find(':');
  std::string kind = text.substr(0, c1);
  if (kind == "biased_cat") {
    auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw DimensionError("expected biased_cat:<gamma>:<n>");
    }
    double g = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    int n = std::stoi(text.substr(c2 + 1));
    return biased_cat(n, g);
  }
  if (c1 == std::string::npos) throw DimensionError("expected <family>:<n>");
  int n = std::stoi(text.substr(c1 + 1));
  if (kind == "w_state") return w_state(n);
  if (kind == "cat_history") return cat_history(n);
  throw DimensionError("unknown family '" + kind + "'");
}

StateVector StateFamily::build() const {
  switch (kind) {
    case FamilyKind::BiasedCat: {
      Eigen::VectorXcd a = Eigen::VectorXcd::Zero(1L << n);
      a(0) = std::sqrt(gamma);
      a((1L << n) - 1) = std::sqrt(1.0 - gamma);
      return StateVector::from_amplitudes(n, std::move(a));
    }
    case FamilyKind::WState: {
      Eigen::VectorXcd a = Eigen::VectorXcd::Zero(1L << n);
      double c = 1.0 / std::sqrt(static_cast<double>(n));
      for (int q = 0; q < n; ++q) a(1L << (n - 1 - q)) = c;
      return StateVector::from_amplitudes(n, std::move(a));
    }
    case FamilyKind::CatHistory: {
      // (1/sqrt(n+1)) sum_t |1^t 0^{n-t}>_clock (x) |CAT_t 0^{n-t}>_state,
      // CAT_0 = |0^n|... CAT_t = (|0^t> + |1^t>)/sqrt(2) on state qubits 0..t-1.
      int m = 2 * n;
      Eigen::VectorXcd a = Eigen::VectorXcd::Zero(1L << m);
      double c = 1.0 / std::sqrt(static_cast<double>(n + 1));
      auto index_of = [&](long clock_bits, long state_bits) {
        // clock qubits 0..n-1 are the most significant index bits
        return (clock_bits << n) | state_bits;
      };
      auto unary = [&](int t) {
        long bits = 0;
        for (int i = 0; i < t; ++i) bits |= 1L << (n - 1 - i);
        return bits;
      };
      // t = 0: state |0^n>
      a(index_of(unary(0), 0)) += c;
      for (int t = 1; t <= n; ++t) {
        long ones = 0;
        for (int i = 0; i < t; ++i) ones |= 1L << (n - 1 - i);
        a(index_of(unary(t), 0)) += c / std::sqrt(2.0);
        a(index_of(unary(t), ones)) += c / std::sqrt(2.0);
      }
      return StateVector::from_amplitudes(m, std::move(a));
    }
  }
  throw DimensionError("unreachable family kind");
}

std::optional<double> StateFamily::analytic_mi(const Region& A, const Region& B) const {
  if (kind != FamilyKind::BiasedCat) return std::nullopt;
  if (A.empty() || B.empty() || !disjoint(A, B)) return std::nullopt;
  if (A.size() + B.size() >= n) return std::nullopt;  // A u B must miss a qubit
  return binary_entropy(gamma);
}

}  // namespace mhkit
