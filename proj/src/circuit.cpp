#include "mhkit/circuit.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "mhkit/errors.hpp"

namespace mhkit {

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::T: return "T";
    case GateKind::FANOUT: return "FANOUT";
    case GateKind::GENERIC1: return "GENERIC1";
    case GateKind::GENERIC2: return "GENERIC2";
    case GateKind::MEASURE_Z: return "MEASURE";
    case GateKind::CLASSICAL_PARITY: return "PARITY";
  }
  return "?";
}

bool is_clifford_kind(GateKind k) {
  switch (k) {
    case GateKind::H:
    case GateKind::S:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::FANOUT:
      return true;
    default:
      return false;
  }
}

Gate Gate::simple(GateKind k, std::vector<int> qubits) {
  Gate g;
  g.kind = k;
  g.qubits = std::move(qubits);
  return g;
}

Gate Gate::generic1(int q, const Eigen::Matrix2cd& u) {
  Gate g;
  g.kind = GateKind::GENERIC1;
  g.qubits = {q};
  g.matrix = u;
  return g;
}

Gate Gate::generic2(int q0, int q1, const Eigen::Matrix4cd& u) {
  Gate g;
  g.kind = GateKind::GENERIC2;
  g.qubits = {q0, q1};
  g.matrix = u;
  return g;
}

Gate Gate::fanout(std::vector<int> qubits) {
  Gate g;
  g.kind = GateKind::FANOUT;
  g.qubits = std::move(qubits);
  return g;
}

Gate Gate::measure_z(int q, int cbit) {
  Gate g;
  g.kind = GateKind::MEASURE_Z;
  g.qubits = {q};
  g.classical_bit = cbit;
  return g;
}

void Gate::validate(int n) const {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n) {
      throw DimensionError(std::string(gate_kind_name(kind)) + ": qubit index out of range");
    }
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) {
        throw DimensionError(std::string(gate_kind_name(kind)) + ": repeated qubit in one gate");
      }
    }
  }
  auto expect_arity = [&](int a) {
    if (arity() != a) {
      throw DimensionError(std::string(gate_kind_name(kind)) + ": expected " + std::to_string(a) +
                           " qubits");
    }
  };
  switch (kind) {
    case GateKind::H:
    case GateKind::S:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::T:
      expect_arity(1);
      break;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
      expect_arity(2);
      break;
    case GateKind::FANOUT:
      if (arity() < 2) throw DimensionError("FANOUT needs a control and at least one target");
      break;
    case GateKind::GENERIC1:
    case GateKind::GENERIC2: {
      int a = (kind == GateKind::GENERIC1) ? 1 : 2;
      expect_arity(a);
      long dim = 1L << a;
      if (matrix.rows() != dim || matrix.cols() != dim) {
        throw DimensionError("GENERIC matrix has wrong shape");
      }
      Eigen::MatrixXcd err = matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(dim, dim);
      if (err.cwiseAbs().maxCoeff() > 1e-10) {
        throw DimensionError("GENERIC matrix is not unitary within 1e-10");
      }
      break;
    }
    case GateKind::MEASURE_Z:
      expect_arity(1);
      if (classical_bit < 0) throw DimensionError("MEASURE needs a classical register target");
      break;
    case GateKind::CLASSICAL_PARITY:
      break;
  }
}

LayeredCircuit::LayeredCircuit(int n, std::vector<Layer> layers) : n_(n) {
  for (auto& l : layers) push_layer(std::move(l));
}

void LayeredCircuit::push_layer(Layer layer) {
  std::vector<bool> used(n_, false);
  for (const auto& g : layer) {
    g.validate(n_);
    for (int q : g.qubits) {
      if (used[q]) {
        throw DimensionError("overlapping supports in one layer (qubit " + std::to_string(q) +
                             ")");
      }
      used[q] = true;
    }
  }
  layers_.push_back(std::move(layer));
}

void LayeredCircuit::append(const LayeredCircuit& c) {
  if (c.n() != n_) throw DimensionError("append: qubit count mismatch");
  for (const auto& l : c.layers()) push_layer(l);
}

bool LayeredCircuit::all_clifford() const {
  for (const auto& l : layers_) {
    for (const auto& g : l) {
      if (!g.is_clifford()) return false;
    }
  }
  return true;
}

bool LayeredCircuit::has_measurement() const {
  for (const auto& l : layers_) {
    for (const auto& g : l) {
      if (g.is_measure()) return true;
    }
  }
  return false;
}

LayeredCircuit LayeredCircuit::reversed() const {
  LayeredCircuit out(n_);
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    Layer l;
    for (const auto& g : *it) {
      if (g.is_measure()) throw GateClassError("cannot reverse a measurement");
      Gate inv = g;
      switch (g.kind) {
        case GateKind::GENERIC1:
        case GateKind::GENERIC2:
          inv.matrix = g.matrix.adjoint();
          break;
        case GateKind::S:
          // S^dagger = Z S; keep it a single generic to stay layer-shaped.
          inv = Gate::generic1(g.qubits[0],
                               (Eigen::Matrix2cd() << 1, 0, 0, std::complex<double>(0, -1))
                                   .finished());
          break;
        case GateKind::T:
          inv = Gate::generic1(
              g.qubits[0],
              (Eigen::Matrix2cd() << 1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)).finished());
          break;
        default:
          break;  // self-inverse kinds
      }
      l.push_back(std::move(inv));
    }
    out.push_layer(std::move(l));
  }
  return out;
}

bool LayeredCircuit::operator==(const LayeredCircuit& o) const {
  if (n_ != o.n_ || layers_.size() != o.layers_.size()) return false;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].size() != o.layers_[i].size()) return false;
    for (std::size_t j = 0; j < layers_[i].size(); ++j) {
      const Gate &a = layers_[i][j], &b = o.layers_[i][j];
      if (a.kind != b.kind || a.qubits != b.qubits || a.classical_bit != b.classical_bit) {
        return false;
      }
      if (a.kind == GateKind::GENERIC1 || a.kind == GateKind::GENERIC2) {
        if ((a.matrix - b.matrix).cwiseAbs().maxCoeff() > 0) return false;
      }
    }
  }
  return true;
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
  using cd = std::complex<double>;
  switch (g.kind) {
    case GateKind::H: {
      Eigen::Matrix2cd m;
      double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      return m;
    }
    case GateKind::S: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, cd(0, 1);
      return m;
    }
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::Y: {
      Eigen::Matrix2cd m;
      m << 0, cd(0, -1), cd(0, 1), 0;
      return m;
    }
    case GateKind::Z: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, -1;
      return m;
    }
    case GateKind::T: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
      return m;
    }
    case GateKind::CNOT: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    }
    case GateKind::CZ: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m(3, 3) = -1;
      return m;
    }
    case GateKind::SWAP: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
      return m;
    }
    case GateKind::GENERIC1:
    case GateKind::GENERIC2:
      return g.matrix;
    default:
      throw GateClassError(std::string("no fixed matrix for ") + gate_kind_name(g.kind));
  }
}

void conjugate_pauli(PauliString& p, const Gate& g) {
  auto xb = [&](int q) { return p.x().get(q); };
  auto zb = [&](int q) { return p.z().get(q); };
  switch (g.kind) {
    case GateKind::H: {
      int q = g.qubits[0];
      bool x = xb(q), z = zb(q);
      if (x && z) p.mul_phase(2);
      p.x().set(q, z);
      p.z().set(q, x);
      break;
    }
    case GateKind::S: {
      int q = g.qubits[0];
      if (xb(q)) {
        p.mul_phase(1);
        p.z().flip(q);
      }
      break;
    }
    case GateKind::X: {
      int q = g.qubits[0];
      if (zb(q)) p.mul_phase(2);
      break;
    }
    case GateKind::Y: {
      int q = g.qubits[0];
      if (xb(q) != zb(q)) p.mul_phase(2);
      break;
    }
    case GateKind::Z: {
      int q = g.qubits[0];
      if (xb(q)) p.mul_phase(2);
      break;
    }
    case GateKind::CNOT: {
      int c = g.qubits[0], t = g.qubits[1];
      if (xb(c)) p.x().flip(t);
      if (zb(t)) p.z().flip(c);
      break;
    }
    case GateKind::CZ: {
      int a = g.qubits[0], b = g.qubits[1];
      bool xa = xb(a), xc = xb(b);
      if (xa && xc) p.mul_phase(2);
      if (xa) p.z().flip(b);
      if (xc) p.z().flip(a);
      break;
    }
    case GateKind::SWAP: {
      int a = g.qubits[0], b = g.qubits[1];
      bool xa = xb(a), za = zb(a), xc = xb(b), zc = zb(b);
      p.x().set(a, xc);
      p.z().set(a, zc);
      p.x().set(b, xa);
      p.z().set(b, za);
      break;
    }
    case GateKind::FANOUT: {
      // Product of CNOTs from the control to every target.
      int c = g.qubits[0];
      bool zsum = false;
      for (std::size_t i = 1; i < g.qubits.size(); ++i) {
        int t = g.qubits[i];
        if (xb(c)) p.x().flip(t);
        zsum ^= zb(t);
      }
      if (zsum) p.z().flip(c);
      break;
    }
    default:
      throw GateClassError(std::string("non-Clifford gate ") + gate_kind_name(g.kind) +
                           " in Clifford conjugation path");
  }
}

namespace {

struct Tok {
  std::string text;
  int line;
};

std::vector<Tok> tokenize(const std::string& text, std::vector<int>* layer_breaks) {
  std::vector<Tok> toks;
  int line = 1;
  std::string cur;
  bool line_had_token = false;
  auto flush = [&]() {
    if (!cur.empty()) {
      toks.push_back({cur, line});
      cur.clear();
    }
  };
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char ch = (i < text.size()) ? text[i] : '\n';
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      ch = '\n';
    }
    if (ch == '\n') {
      flush();
      if (!line_had_token && !toks.empty()) {
        // blank line: layer break
        layer_breaks->push_back(static_cast<int>(toks.size()));
      }
      line_had_token = false;
      ++line;
      continue;
    }
    if (ch == '/') {
      flush();
      layer_breaks->push_back(static_cast<int>(toks.size()));
      line_had_token = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
      continue;
    }
    cur.push_back(ch);
    line_had_token = true;
  }
  return toks;
}

int parse_int(const Tok& t) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) {
    throw ParseError("expected an integer, got '" + t.text + "'", t.line);
  }
  return v;
}

std::complex<double> parse_complex_pair(const Tok& t) {
  auto comma = t.text.find(',');
  if (comma == std::string::npos) {
    throw ParseError("expected re,im pair, got '" + t.text + "'", t.line);
  }
  try {
    double re = std::stod(t.text.substr(0, comma));
    double im = std::stod(t.text.substr(comma + 1));
    return {re, im};
  } catch (const std::exception&) {
    throw ParseError("bad complex pair '" + t.text + "'", t.line);
  }
}

}  // namespace

LayeredCircuit parse_mhq(const std::string& text) {
  std::vector<int> breaks;
  std::vector<Tok> toks = tokenize(text, &breaks);
  std::size_t bi = 0;

  std::vector<Layer> layers;
  Layer cur_layer;
  int max_qubit = -1;
  std::size_t i = 0;
  auto maybe_break = [&](std::size_t pos) {
    while (bi < breaks.size() && breaks[bi] == static_cast<int>(pos)) {
      if (!cur_layer.empty()) {
        layers.push_back(std::move(cur_layer));
        cur_layer.clear();
      }
      ++bi;
    }
  };
  while (i < toks.size()) {
    maybe_break(i);
    if (i >= toks.size()) break;
    const Tok& head = toks[i];
    std::string name = head.text;
    ++i;
    auto need = [&](const char* what) -> const Tok& {
      if (i >= toks.size()) throw ParseError(std::string("missing ") + what, head.line);
      return toks[i++];
    };
    Gate g;
    if (name == "H" || name == "S" || name == "X" || name == "Y" || name == "Z" || name == "T") {
      GateKind k = name == "H"   ? GateKind::H
                   : name == "S" ? GateKind::S
                   : name == "X" ? GateKind::X
                   : name == "Y" ? GateKind::Y
                   : name == "Z" ? GateKind::Z
                                 : GateKind::T;
      g = Gate::simple(k, {parse_int(need("qubit"))});
    } else if (name == "CNOT" || name == "CZ" || name == "SWAP") {
      GateKind k = name == "CNOT" ? GateKind::CNOT : name == "CZ" ? GateKind::CZ : GateKind::SWAP;
      int a = parse_int(need("qubit"));
      int b = parse_int(need("qubit"));
      g = Gate::simple(k, {a, b});
    } else if (name == "FANOUT") {
      std::vector<int> qs;
      while (i < toks.size() && (bi >= breaks.size() || breaks[bi] != static_cast<int>(i)) &&
             toks[i].line == head.line) {
        qs.push_back(parse_int(toks[i]));
        ++i;
      }
      if (qs.size() < 2) throw ParseError("FANOUT needs at least 2 qubits", head.line);
      g = Gate::fanout(std::move(qs));
    } else if (name == "GENERIC1" || name == "GENERIC2") {
      int nq = (name == "GENERIC1") ? 1 : 2;
      std::vector<int> qs;
      for (int k = 0; k < nq; ++k) qs.push_back(parse_int(need("qubit")));
      long dim = 1L << nq;
      Eigen::MatrixXcd m(dim, dim);
      for (long r = 0; r < dim; ++r) {
        for (long c = 0; c < dim; ++c) {
          m(r, c) = parse_complex_pair(need("matrix entry"));
        }
      }
      g = (nq == 1) ? Gate::generic1(qs[0], m) : Gate::generic2(qs[0], qs[1], m);
      try {
        g.validate(1 << 20);
      } catch (const DimensionError& e) {
        throw ParseError(e.what(), head.line);
      }
    } else if (name == "MEASURE") {
      int q = parse_int(need("qubit"));
      int c = parse_int(need("classical bit"));
      g = Gate::measure_z(q, c);
    } else {
      throw ParseError("unknown gate '" + name + "'", head.line);
    }
    for (int q : g.qubits) max_qubit = std::max(max_qubit, q);
    cur_layer.push_back(std::move(g));
  }
  maybe_break(i);
  if (!cur_layer.empty()) layers.push_back(std::move(cur_layer));

  int n = max_qubit + 1;
  try {
    return LayeredCircuit(n, std::move(layers));
  } catch (const DimensionError& e) {
    throw ParseError(e.what(), 1);
  }
}

std::string format_double12(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string emit_mhq(const LayeredCircuit& c) {
  std::ostringstream os;
  bool first_layer = true;
  for (const auto& layer : c.layers()) {
    if (!first_layer) os << "/\n";
    first_layer = false;
    for (const auto& g : layer) {
      os << gate_kind_name(g.kind);
      for (int q : g.qubits) os << ' ' << q;
      if (g.kind == GateKind::MEASURE_Z) os << ' ' << g.classical_bit;
      if (g.kind == GateKind::GENERIC1 || g.kind == GateKind::GENERIC2) {
        for (long r = 0; r < g.matrix.rows(); ++r) {
          for (long col = 0; col < g.matrix.cols(); ++col) {
            os << ' ' << format_double12(g.matrix(r, col).real()) << ','
               << format_double12(g.matrix(r, col).imag());
          }
        }
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace mhkit
