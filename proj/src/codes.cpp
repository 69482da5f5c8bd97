#include "mhkit/codes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mhkit/errors.hpp"
#include "mhkit/lightcone.hpp"

namespace mhkit {

LocalHamiltonian::LocalHamiltonian(int n, std::vector<Term> terms, bool normalize)
    : n_(n), terms_(std::move(terms)) {
  for (auto& t : terms_) {
    t.support.validate(n);
    long dim = 1L << t.support.size();
    if (t.op.rows() != dim || t.op.cols() != dim) {
      throw DimensionError("Hamiltonian term shape does not match its support");
    }
    if ((t.op - t.op.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
      throw DimensionError("Hamiltonian term is not Hermitian within 1e-10");
    }
    if (normalize) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t.op, Eigen::EigenvaluesOnly);
      double norm = es.eigenvalues().cwiseAbs().maxCoeff();
      if (norm > 1.0) t.op /= norm;
    }
  }
}

int LocalHamiltonian::locality() const {
  int l = 0;
  for (const auto& t : terms_) l = std::max(l, t.support.size());
  return l;
}

Eigen::MatrixXcd LocalHamiltonian::dense() const {
  if (n_ > 13) throw FeasibilityError("dense Hamiltonian capped at 13 qubits");
  const long dim = 1L << n_;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) h += expand_op(t.op, t.support, n_);
  return h;
}

void LocalHamiltonian::apply(const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const {
  const long dim = 1L << n_;
  if (v.size() != dim) throw DimensionError("apply: vector size != 2^n");
  out.setZero(dim);
  for (const auto& t : terms_) {
    const int k = t.support.size();
    const long dk = 1L << k;
    // The support is sorted, so bit i of the local index is qubit
    // support[i]; scatter local indices into global bit masks once.
    std::vector<long> bits(k);
    for (int i = 0; i < k; ++i) bits[i] = 1L << (n_ - 1 - t.support[i]);
    std::vector<long> scatter(dk, 0);
    for (long li = 0; li < dk; ++li) {
      for (int i = 0; i < k; ++i) {
        if (li & (1L << (k - 1 - i))) scatter[li] |= bits[i];
      }
    }
    struct Entry {
      long row, col;
      std::complex<double> val;
    };
    std::vector<Entry> entries;
    for (long li = 0; li < dk; ++li) {
      for (long lj = 0; lj < dk; ++lj) {
        if (t.op(li, lj) != std::complex<double>(0, 0)) {
          entries.push_back({scatter[li], scatter[lj], t.op(li, lj)});
        }
      }
    }
    long rest_mask = dim - 1;
    for (long b : bits) rest_mask &= ~b;
    for (long rest = 0;; rest = ((rest | ~rest_mask) + 1) & rest_mask) {
      for (const auto& e : entries) {
        out(rest | e.row) += e.val * v(rest | e.col);
      }
      if (rest == rest_mask) break;
    }
  }
}

bool LocalHamiltonian::is_real() const {
  for (const auto& t : terms_) {
    if (t.op.imag().cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return true;
}

double LocalHamiltonian::energy(const StateVector& psi) const {
  Eigen::VectorXcd out;
  apply(psi.amps(), out);
  return psi.amps().dot(out).real();
}

void LocalHamiltonian::add_ancilla_penalties(const Region& ancillas) {
  for (int q : ancillas) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
    p(0, 0) = -1.0;
    terms_.push_back(Term{Region({q}), p});
  }
}

LocalHamiltonian LocalHamiltonian::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Term> terms;
  int max_q = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "TERM") throw ParseError("expected TERM", line_no);
    std::string qlist;
    ls >> qlist;
    std::vector<int> qs;
    std::size_t pos = 0;
    while (pos < qlist.size()) {
      auto comma = qlist.find(',', pos);
      if (comma == std::string::npos) comma = qlist.size();
      qs.push_back(std::stoi(qlist.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    std::string colon;
    ls >> colon;
    if (colon != ":") throw ParseError("expected ':' after qubit list", line_no);
    Region support(qs);
    long dim = 1L << support.size();
    Eigen::MatrixXcd op(dim, dim);
    for (long r = 0; r < dim; ++r) {
      for (long c = 0; c < dim; ++c) {
        std::string pair;
        if (!(ls >> pair)) throw ParseError("missing matrix entries", line_no);
        auto comma = pair.find(',');
        if (comma == std::string::npos) throw ParseError("expected re,im", line_no);
        op(r, c) = {std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))};
      }
    }
    for (int q : qs) max_q = std::max(max_q, q);
    terms.push_back(Term{support, std::move(op)});
  }
  return LocalHamiltonian(max_q + 1, std::move(terms));
}

std::string LocalHamiltonian::serialize() const {
  std::ostringstream os;
  for (const auto& t : terms_) {
    os << "TERM ";
    for (int i = 0; i < t.support.size(); ++i) {
      if (i) os << ',';
      os << t.support[i];
    }
    os << " :";
    for (long r = 0; r < t.op.rows(); ++r) {
      for (long c = 0; c < t.op.cols(); ++c) {
        os << ' ' << format_double12(t.op(r, c).real()) << ','
           << format_double12(t.op(r, c).imag());
      }
    }
    os << '\n';
  }
  return os.str();
}

CodeSpace CodeSpace::from_projector(int n, Eigen::MatrixXcd projector, CodeProvenance prov) {
  CodeSpace c;
  c.n_ = n;
  c.prov_ = prov;
  Eigen::MatrixXcd idem = projector * projector - projector;
  if (idem.cwiseAbs().maxCoeff() > 1e-9) {
    throw DimensionError("projector is not idempotent within 1e-9");
  }
  double tr = projector.trace().real();
  long dim = std::lround(tr);
  if (std::abs(tr - dim) > 1e-6) {
    throw DimensionError("projector trace is not close to an integer");
  }
  c.dim_ = dim;
  c.projector_ = std::move(projector);
  return c;
}

CodeSpace CodeSpace::from_stabilizer(const StabilizerTableau& t) {
  CodeSpace c;
  c.n_ = t.n();
  c.prov_ = CodeProvenance::StabilizerGenerators;
  c.stab_ = t;
  c.dim_ = 1L << (t.n() - t.rank());
  c.projector_ = t.density() * std::pow(2.0, t.n() - t.rank());
  return c;
}

const Eigen::MatrixXcd& CodeSpace::basis() const {
  if (basis_.size() == 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(projector_);
    // Eigenvalues ascend; codewords live at the top.
    basis_ = es.eigenvectors().rightCols(dim_);
    for (long c = 0; c < dim_; ++c) {
      double ev = es.eigenvalues()(es.eigenvalues().size() - dim_ + c);
      if (std::abs(ev - 1.0) > 1e-6) {
        throw DimensionError("projector spectrum is not 0/1 within 1e-6");
      }
    }
  }
  return basis_;
}

std::vector<LocalHamiltonian::Term> CodeSpace::commuting_projector_terms() const {
  if (!stab_) throw DimensionError("commuting projectors need a stabilizer-backed code");
  std::vector<LocalHamiltonian::Term> out;
  for (const auto& g : stab_->generators()) {
    Region sup = g.support();
    PauliString local = g.restricted_to(sup);
    long dim = 1L << sup.size();
    Eigen::MatrixXcd p =
        (Eigen::MatrixXcd::Identity(dim, dim) + local.dense()) / 2.0;
    out.push_back(LocalHamiltonian::Term{sup, std::move(p)});
  }
  return out;
}

GroundspaceResult groundspace(const LocalHamiltonian& h) {
  if (h.n() > 13) throw FeasibilityError("dense groundspace capped at 13 qubits");
  Eigen::MatrixXcd hm = h.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
  const auto& lam = es.eigenvalues();
  double lam0 = lam(0);
  const double tol = 1e-8;
  long gdim = 0;
  while (gdim < lam.size() && lam(gdim) <= lam0 + tol) ++gdim;
  // Ambiguity: an eigenvalue hugging the cluster boundary.
  if (gdim < lam.size() && lam(gdim) < lam0 + 3 * tol) {
    throw FeasibilityError("ground cluster boundary within 3x tolerance; ambiguous degeneracy");
  }
  Eigen::MatrixXcd v = es.eigenvectors().leftCols(gdim);
  Eigen::MatrixXcd proj = v * v.adjoint();
  GroundspaceResult out{CodeSpace::from_projector(h.n(), std::move(proj),
                                                  CodeProvenance::HamiltonianGroundspace),
                        (gdim < lam.size() ? lam(gdim) - lam0 : 0.0), lam0};
  return out;
}

std::pair<double, double> low_spectrum_lanczos(const LocalHamiltonian& h, int iters,
                                               std::uint64_t seed) {
  if (!h.is_real()) throw FeasibilityError("Lanczos path implemented for real Hamiltonians");
  const long dim = 1L << h.n();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  // Crude upper bound on ||H|| for the deflation shift.
  double hnorm = 0;
  for (const auto& t : h.terms()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t.op, Eigen::EigenvaluesOnly);
    hnorm += es.eigenvalues().cwiseAbs().maxCoeff();
  }

  auto lanczos_min = [&](const Eigen::VectorXd* deflate, double shift,
                         Eigen::VectorXd* eigvec) -> double {
    int m = std::min<long>(iters, dim);
    Eigen::MatrixXd basis(dim, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd v(dim);
    for (long i = 0; i < dim; ++i) v(i) = gauss(rng);
    if (deflate) v -= (deflate->dot(v)) * (*deflate);
    v.normalize();
    Eigen::VectorXcd vc(dim), wc(dim);
    int built = 0;
    for (int j = 0; j < m; ++j) {
      basis.col(j) = v;
      ++built;
      vc = v.cast<std::complex<double>>();
      h.apply(vc, wc);
      Eigen::VectorXd w = wc.real();
      if (deflate) w += shift * (deflate->dot(v)) * (*deflate);
      alpha(j) = v.dot(w);
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      // second sweep to fight roundoff
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      double nb = w.norm();
      beta(j) = nb;
      if (nb < 1e-13) break;
      v = w / nb;
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
    for (int j = 0; j < built; ++j) {
      tri(j, j) = alpha(j);
      if (j + 1 < built) tri(j, j + 1) = tri(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    if (eigvec) {
      Eigen::VectorXd y = es.eigenvectors().col(0);
      *eigvec = basis.leftCols(built) * y;
      eigvec->normalize();
    }
    return es.eigenvalues()(0);
  };

  Eigen::VectorXd ground;
  double lam0 = lanczos_min(nullptr, 0.0, &ground);
  double lam1 = lanczos_min(&ground, hnorm - lam0 + 1.0, nullptr);
  return {lam0, lam1};
}

namespace {

// G V for a Pauli G and a basis matrix V (columns are states).
Eigen::MatrixXcd pauli_times_basis(const PauliString& p, const Eigen::MatrixXcd& v, int n) {
  using cd = std::complex<double>;
  static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  long xmask = 0, zmask = 0;
  for (int q = 0; q < n; ++q) {
    long bit = 1L << (n - 1 - q);
    if (p.x().get(q)) xmask |= bit;
    if (p.z().get(q)) zmask |= bit;
  }
  Eigen::MatrixXcd out(v.rows(), v.cols());
  cd v0 = ipow[p.phase()];
  for (long c = 0; c < v.rows(); ++c) {
    cd coef = v0;
    if (std::popcount(static_cast<unsigned long>(c & zmask)) & 1) coef = -coef;
    out.row(c ^ xmask) = coef * v.row(c);
  }
  return out;
}

bool kl_pauli_ok(const Eigen::MatrixXcd& v, const PauliString& g, int n, double tol) {
  Eigen::MatrixXcd m = v.adjoint() * pauli_times_basis(g, v, n);
  std::complex<double> lambda = m.trace() / static_cast<double>(m.rows());
  m -= lambda * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return m.cwiseAbs().maxCoeff() <= tol;
}

// All Paulis with support exactly A, bits chosen from {X, Y, Z} per qubit.
template <typename F>
bool for_each_full_support_pauli(const Region& a, int n, F&& f) {
  long count = 1;
  for (int i = 0; i < a.size(); ++i) count *= 3;
  for (long code = 0; code < count; ++code) {
    PauliString p(n);
    long x = code;
    for (int i = 0; i < a.size(); ++i) {
      int kind = x % 3;
      x /= 3;
      int q = a[i];
      if (kind == 0) {
        p.x().set(q, true);
      } else if (kind == 1) {
        p.z().set(q, true);
      } else {
        p.x().set(q, true);
        p.z().set(q, true);
      }
    }
    p.set_phase(static_cast<int>(and_bits(p.x(), p.z()).popcount()) & 1);
    if (!f(p)) return false;
  }
  return true;
}

template <typename F>
void for_each_region(int n, int w, F&& f) {
  std::vector<int> idx(w);
  for (int i = 0; i < w; ++i) idx[i] = i;
  while (true) {
    f(Region(idx));
    int i = w - 1;
    while (i >= 0 && idx[i] == n - w + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool region_correctable(const CodeSpace& c, const Region& a) {
  const Eigen::MatrixXcd& v = c.basis();
  // KL over every nontrivial Pauli supported inside A: sub-supports first.
  for (int w = 1; w <= a.size(); ++w) {
    bool ok = true;
    std::vector<int> qs(a.qubits());
    // subsets of A of size w
    std::vector<int> idx(w);
    for (int i = 0; i < w; ++i) idx[i] = i;
    while (ok) {
      std::vector<int> sub;
      for (int i : idx) sub.push_back(qs[i]);
      ok = for_each_full_support_pauli(Region(sub), c.n(),
                                       [&](const PauliString& g) {
                                         return kl_pauli_ok(v, g, c.n(), 1e-8);
                                       });
      if (!ok) break;
      int i = w - 1;
      while (i >= 0 && idx[i] == a.size() - w + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!ok) return false;
  }
  return true;
}

int distance_bruteforce(const CodeSpace& c) {
  if (c.n() > 10) throw FeasibilityError("brute-force distance capped at 10 qubits");
  const Eigen::MatrixXcd& v = c.basis();
  for (int w = 1; w <= c.n(); ++w) {
    bool all_ok = true;
    for_each_region(c.n(), w, [&](const Region& a) {
      if (!all_ok) return;
      if (!for_each_full_support_pauli(a, c.n(), [&](const PauliString& g) {
            return kl_pauli_ok(v, g, c.n(), 1e-8);
          })) {
        all_ok = false;
      }
    });
    if (!all_ok) return w;
  }
  return c.n() + 1;
}

CodeSpace local_stab_code(const StabilizerTableau& t, int l) {
  if (t.n() > 13) throw FeasibilityError("local stabilizer code capped at 13 qubits");
  std::vector<PauliString> low;
  for (const auto& e : t.enumerate_group()) {
    if (!e.is_identity_bits() && e.weight() <= l) low.push_back(e);
  }
  StabilizerTableau sub = StabilizerTableau::canonicalize(t.n(), std::move(low));
  CodeSpace c = CodeSpace::from_stabilizer(sub);
  return CodeSpace::from_projector(t.n(), c.projector(), CodeProvenance::LocalStabilizer);
}

CodeSpace local_equivalence_code(const StateVector& psi, int l) {
  const int n = psi.n();
  const int ll = std::min(l, n);
  std::vector<LocalHamiltonian::Term> terms;
  for_each_region(n, ll, [&](const Region& a) {
    Eigen::MatrixXcd rho = psi.reduced_density(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    long dim = rho.rows();
    Eigen::MatrixXcd supp = Eigen::MatrixXcd::Zero(dim, dim);
    for (long i = 0; i < dim; ++i) {
      if (es.eigenvalues()(i) > 1e-10) {
        supp += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      }
    }
    terms.push_back(
        LocalHamiltonian::Term{a, Eigen::MatrixXcd::Identity(dim, dim) - supp});
  });
  LocalHamiltonian h(n, std::move(terms));
  return groundspace(h).code;
}

namespace {

double containment_residual(const Eigen::MatrixXcd& inner, const Eigen::MatrixXcd& outer) {
  // ||(I - P_outer) P_inner||_2 (largest singular value).
  Eigen::MatrixXcd m =
      (Eigen::MatrixXcd::Identity(outer.rows(), outer.cols()) - outer) * inner;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace

InfectiousnessReport infectiousness_check(const StabilizerTableau& phi, const LayeredCircuit& u,
                                          int l) {
  if (phi.rank() != phi.n()) throw DimensionError("infectiousness_check needs a pure tableau");
  if (phi.n() > 10) throw FeasibilityError("infectiousness check capped at 10 qubits");
  const int n = phi.n();
  InfectiousnessReport rep;
  rep.l = l;
  rep.blowup = blowup(u);
  const int B = rep.blowup;

  StateVector psi = tableau_to_statevector(phi);
  psi.apply_circuit(u);

  CodeSpace big = local_equivalence_code(psi, l);
  CodeSpace small = local_equivalence_code(psi, std::min(B * B * l, n));
  CodeSpace stab_mid = local_stab_code(phi, std::min(B * l, n));
  Eigen::MatrixXcd mid = stab_mid.projector();
  conjugate_density(mid, u);

  rep.dim_small = small.dim();
  rep.dim_mid = stab_mid.dim();
  rep.dim_big = big.dim();
  rep.residual_lower = containment_residual(small.projector(), mid);
  rep.residual_upper = containment_residual(mid, big.projector());

  try {
    rep.distance_l = distance_bruteforce(big);
    rep.premise_checked = true;
    rep.premise_holds = rep.distance_l > B * B * l;
  } catch (const FeasibilityError&) {
    rep.inconclusive = true;
  }
  if (rep.premise_checked && rep.premise_holds) {
    rep.equality_fired = true;
    rep.equality_residual = (mid - big.projector()).cwiseAbs().maxCoeff();
  }
  return rep;
}

bool distance_sandwich_check(const CodeSpace& c, const LayeredCircuit& u) {
  int b = blowup(u);
  Eigen::MatrixXcd rotated = c.projector();
  conjugate_density(rotated, u);
  CodeSpace uc = CodeSpace::from_projector(c.n(), std::move(rotated), c.provenance());
  int dc = distance_bruteforce(c);
  int duc = distance_bruteforce(uc);
  return dc * b >= duc && dc <= b * duc;
}

RobustnessParams robustness_params(const LocalHamiltonian& h, double eps, int samples,
                                   std::uint64_t seed) {
  GroundspaceResult gs = groundspace(h);
  if (gs.gap < 1e-8) throw FeasibilityError("gapless Hamiltonian (gap < 1e-8)");
  RobustnessParams out;
  out.eps = eps;
  out.l = h.locality();
  out.delta = std::sqrt(eps * h.term_count() / gs.gap);

  // Random locally-close states: perturb a ground state and measure the
  // actual local closeness; the claimed bound must hold with the
  // measured epsilon too.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const long dim = 1L << h.n();
  const Eigen::MatrixXcd& p0 = gs.code.projector();
  out.empirical_pass = true;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXcd g = gs.code.basis().col(s % gs.code.dim());
    Eigen::VectorXcd noise(dim);
    for (long i = 0; i < dim; ++i) noise(i) = {gauss(rng), gauss(rng)};
    noise *= (0.02 * (s + 1.0) / samples) / noise.norm();
    Eigen::VectorXcd v = g + noise;
    v.normalize();
    StateVector chi = StateVector::from_amplitudes(h.n(), v);
    // Nearest codeword proxy: the normalized projection.
    Eigen::VectorXcd proj = p0 * v;
    double pn = proj.norm();
    if (pn < 1e-9) continue;
    proj /= pn;
    StateVector near = StateVector::from_amplitudes(h.n(), proj);
    double eps_hat = 0;
    for (const auto& t : h.terms()) {
      Eigen::MatrixXcd d = chi.reduced_density(t.support) - near.reduced_density(t.support);
      eps_hat = std::max(eps_hat, 0.5 * trace_norm_hermitian(d));
    }
    double dist = std::sqrt(std::max(0.0, 1.0 - (v.adjoint() * p0 * v)(0, 0).real()));
    double bound = std::sqrt(eps_hat * h.term_count() / gs.gap);
    if (bound > 1e-12) out.worst_ratio = std::max(out.worst_ratio, dist / bound);
    if (dist > bound + 1e-9) out.empirical_pass = false;
  }
  return out;
}

bool disentangle_product_check(const CodeSpace& c,
                               const std::vector<LocalHamiltonian::Term>& projectors,
                               const Region& m_region) {
  const int n = c.n();
  // Pairwise commutation of the projector terms.
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    Eigen::MatrixXcd a = expand_op(projectors[i].op, projectors[i].support, n);
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      Eigen::MatrixXcd b = expand_op(projectors[j].op, projectors[j].support, n);
      if ((a * b - b * a).cwiseAbs().maxCoeff() > 1e-9) {
        throw DimensionError("projectors do not pairwise commute within 1e-9");
      }
    }
  }
  // Neighborhood N(M) = M plus every qubit sharing a projector with M.
  std::vector<int> nb(m_region.qubits());
  for (const auto& t : projectors) {
    bool touches = false;
    for (int q : t.support) {
      if (m_region.contains(q)) touches = true;
    }
    if (touches) {
      for (int q : t.support) nb.push_back(q);
    }
  }
  std::sort(nb.begin(), nb.end());
  nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  Region neighborhood(nb);
  if (!region_correctable(c, neighborhood)) {
    throw FeasibilityError("N(M) is not a correctable region; the lemma does not apply");
  }
  Region cc = neighborhood.complement(n);
  Region mc = region_union(m_region, cc);

  // Factorization for each basis codeword and a few fixed combinations.
  std::vector<Eigen::VectorXcd> words;
  for (long k = 0; k < c.dim(); ++k) words.push_back(c.basis().col(k));
  if (c.dim() > 1) {
    Eigen::VectorXcd mix = c.basis().col(0) + c.basis().col(c.dim() - 1);
    mix.normalize();
    words.push_back(mix);
  }
  for (const auto& w : words) {
    StateVector psi = StateVector::from_amplitudes(n, w);
    Eigen::MatrixXcd rho_mc = psi.reduced_density(mc);
    Eigen::MatrixXcd rho_m = psi.reduced_density(m_region);
    Eigen::MatrixXcd rho_c = psi.reduced_density(cc);
    // mc is sorted, with m_region's qubits interleaved among cc's; build
    // the product in mc's qubit order via index mapping.
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Zero(rho_mc.rows(), rho_mc.cols());
    const int k = mc.size();
    std::vector<int> is_m(k, 0);
    for (int i = 0; i < k; ++i) is_m[i] = m_region.contains(mc[i]) ? 1 : 0;
    auto split = [&](long idx, long& mi, long& ci) {
      mi = ci = 0;
      for (int i = 0; i < k; ++i) {
        int bit = (idx >> (k - 1 - i)) & 1;
        if (is_m[i]) {
          mi = (mi << 1) | bit;
        } else {
          ci = (ci << 1) | bit;
        }
      }
    };
    for (long r = 0; r < prod.rows(); ++r) {
      long rm, rc;
      split(r, rm, rc);
      for (long cidx = 0; cidx < prod.cols(); ++cidx) {
        long cm, ccol;
        split(cidx, cm, ccol);
        prod(r, cidx) = rho_m(rm, cm) * rho_c(rc, ccol);
      }
    }
    if (0.5 * trace_norm_hermitian(rho_mc - prod) > 1e-8) return false;
  }
  return true;
}

CorrelatedRegionsResult correlated_regions(const StateVector& psi,
                                           const std::vector<Region>& partition, double gamma) {
  CorrelatedRegionsResult out;
  for (const auto& s : partition) s.validate(psi.n());
  for (std::size_t k = 0; k < partition.size(); ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      Region both = region_union(partition[i], partition[k]);
      Eigen::MatrixXcd rho_ij = psi.reduced_density(both);
      Eigen::MatrixXcd rho_i = psi.reduced_density(partition[i]);
      Eigen::MatrixXcd rho_j = psi.reduced_density(partition[k]);
      // Tensor order matches `both` because partitions are disjoint and
      // regions sorted; when interleaved, rebuild via the same split.
      const int kk = both.size();
      std::vector<int> in_i(kk, 0);
      for (int t = 0; t < kk; ++t) in_i[t] = partition[i].contains(both[t]) ? 1 : 0;
      Eigen::MatrixXcd prod = Eigen::MatrixXcd::Zero(rho_ij.rows(), rho_ij.cols());
      auto split = [&](long idx, long& ai, long& bi) {
        ai = bi = 0;
        for (int t = 0; t < kk; ++t) {
          int bit = (idx >> (kk - 1 - t)) & 1;
          if (in_i[t]) {
            ai = (ai << 1) | bit;
          } else {
            bi = (bi << 1) | bit;
          }
        }
      };
      for (long r = 0; r < prod.rows(); ++r) {
        long ra, rb;
        split(r, ra, rb);
        for (long cidx = 0; cidx < prod.cols(); ++cidx) {
          long ca, cb;
          split(cidx, ca, cb);
          prod(r, cidx) = rho_i(ra, ca) * rho_j(rb, cb);
        }
      }
      double corr = 0.5 * trace_norm_hermitian(rho_ij - prod);
      out.pairwise.push_back(corr);
      if (corr <= gamma) ok = false;
    }
    if (!ok) break;
    out.surviving.push_back(partition[k]);
  }
  return out;
}

StabilizerTableau code_422_tableau() {
  return StabilizerTableau::canonicalize(
      4, {PauliString::parse("XXXX"), PauliString::parse("ZZZZ")});
}

StabilizerTableau code_513_tableau() {
  return StabilizerTableau::canonicalize(5, {
                                                PauliString::parse("XZZXI"),
                                                PauliString::parse("IXZZX"),
                                                PauliString::parse("XIXZZ"),
                                                PauliString::parse("ZXIXZ"),
                                            });
}

LocalHamiltonian stabilizer_hamiltonian(const StabilizerTableau& t) {
  std::vector<LocalHamiltonian::Term> terms;
  for (const auto& g : t.generators()) {
    Region sup = g.support();
    PauliString local = g.restricted_to(sup);
    long dim = 1L << sup.size();
    terms.push_back(LocalHamiltonian::Term{
        sup, (Eigen::MatrixXcd::Identity(dim, dim) - local.dense()) / 2.0});
  }
  return LocalHamiltonian(t.n(), std::move(terms));
}

LocalHamiltonian cat_history_hamiltonian(int n) {
  if (n < 2) throw DimensionError("cat_history_hamiltonian needs n >= 2");
  using M = Eigen::MatrixXcd;
  const int total = 2 * n;
  auto clock_q = [&](int i) { return i; };
  auto state_q = [&](int j) { return n + j; };
  std::vector<LocalHamiltonian::Term> terms;

  // Clock: penalize |0 1> on adjacent clock qubits (invalid unary).
  for (int i = 0; i + 1 < n; ++i) {
    M p = M::Zero(4, 4);
    p(1, 1) = 1.0;  // |01><01|
    terms.push_back({Region({clock_q(i), clock_q(i + 1)}), p});
  }
  // Input: at t = 0 (clock qubit 0 reads 0) the state register is 0.
  for (int j = 0; j < n; ++j) {
    M p = M::Zero(4, 4);
    p(1, 1) = 1.0;  // |0>_c |1>_s
    terms.push_back({Region({clock_q(0), state_q(j)}), p});
  }
  // Propagation. Gate at t=1 is H on state 0; t>=2 is CNOT 0 -> t-1.
  Eigen::Matrix2cd hgate;
  hgate << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;

  auto prop_term = [&](const std::vector<int>& clock_qs, long pat_prev, long pat_next,
                       const Eigen::MatrixXcd& gate, const std::vector<int>& gate_qs) {
    // 1/2 (|prev><prev| + |next><next|) (x) I - 1/2 (|next><prev| (x) U + h.c.)
    std::vector<int> sup = clock_qs;
    for (int q : gate_qs) sup.push_back(q);
    Region support(sup);
    const int ck = static_cast<int>(clock_qs.size());
    const int gk = static_cast<int>(gate_qs.size());
    const long cd_ = 1L << ck, gd = 1L << gk;
    M t = M::Zero(cd_ * gd, cd_ * gd);
    // Region sorts its qubits; clock indices are all below state indices,
    // so clock bits stay the leading block.
    for (long a = 0; a < gd; ++a) {
      t(pat_prev * gd + a, pat_prev * gd + a) += 0.5;
      t(pat_next * gd + a, pat_next * gd + a) += 0.5;
      for (long b = 0; b < gd; ++b) {
        t(pat_next * gd + a, pat_prev * gd + b) -= 0.5 * gate(a, b);
        t(pat_prev * gd + a, pat_next * gd + b) -= 0.5 * std::conj(gate(b, a));
      }
    }
    terms.push_back({support, std::move(t)});
  };

  // t = 1: clock (0,1), patterns 00 -> 10.
  prop_term({clock_q(0), clock_q(1)}, 0b00, 0b10, hgate, {state_q(0)});
  // 1 < t < n: clock (t-2, t-1, t), patterns 100 -> 110.
  for (int t = 2; t < n; ++t) {
    prop_term({clock_q(t - 2), clock_q(t - 1), clock_q(t)}, 0b100, 0b110, cnot,
              {state_q(0), state_q(t - 1)});
  }
  // t = n: clock (n-2, n-1), patterns 10 -> 11.
  prop_term({clock_q(n - 2), clock_q(n - 1)}, 0b10, 0b11, cnot, {state_q(0), state_q(n - 1)});

  return LocalHamiltonian(total, std::move(terms));
}

StateVector tableau_to_statevector(const StabilizerTableau& t) {
  if (t.rank() != t.n()) throw DimensionError("tableau_to_statevector needs a pure state");
  if (t.n() > 12) throw FeasibilityError("tableau_to_statevector capped at 12 qubits");
  Eigen::MatrixXcd rho = t.density();
  // rho = |psi><psi|: the column with the largest diagonal is psi up to
  // normalization and a global phase.
  long best = 0;
  for (long i = 1; i < rho.rows(); ++i) {
    if (rho(i, i).real() > rho(best, best).real()) best = i;
  }
  Eigen::VectorXcd v = rho.col(best);
  v /= v.norm();
  return StateVector::from_amplitudes(t.n(), v);
}

}  // namespace mhkit
