#include "dirac/lab.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "dirac/subspace.hpp"

namespace dirac {

namespace {

// x-factor (x) s-factor acting on the basis x_j (x) s_a, index j * dim_s + a
ExactMatrix kron(const ExactMatrix& xf, const ExactMatrix& sf) {
  ExactMatrix r(xf.rows() * sf.rows(), xf.cols() * sf.cols());
  for (std::size_t i = 0; i < xf.rows(); ++i)
    for (std::size_t j = 0; j < xf.cols(); ++j) {
      if (xf.at(i, j) == 0) continue;
      for (std::size_t a = 0; a < sf.rows(); ++a)
        for (std::size_t b = 0; b < sf.cols(); ++b)
          if (sf.at(a, b) != 0) r.at(i * sf.rows() + a, j * sf.cols() + b) = xf.at(i, j) * sf.at(a, b);
    }
  return r;
}

int insert_sign(std::uint32_t mask, int pos) {
  // sign of sorting u_pos to the front of the ascending wedge `mask`
  int below = std::popcount(mask & ((std::uint32_t{1} << pos) - 1));
  return below % 2 == 0 ? 1 : -1;
}

std::vector<int> sorted_bits(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if (mask & (std::uint32_t{1} << i)) out.push_back(i);
  return out;
}

}  // namespace

const ExactMatrix& MatrixHCModule::action(const Coords& root) const {
  auto it = root_actions.find(root);
  require(it != root_actions.end(), Errc::ShapeMismatch,
          "no action matrix for root " + coords_to_string(root));
  return it->second;
}

MatrixHCModule sl2_finite_dim_module(const RootDatum& datum, int n) {
  require(datum.rank() == 1 && datum.roots().size() == 2 && datum.roots()[0] == Coords{2},
          Errc::UnsupportedDatum, "sl2 modules need the sl2R root datum");
  require(n >= 0, Errc::InvalidParameter, "n must be nonnegative");
  std::int64_t g = datum.gram()[0][0];
  MatrixHCModule x;
  x.name = "F_" + std::to_string(n);
  x.dimension = static_cast<std::size_t>(n + 1);
  for (int j = 0; j <= n; ++j) x.weights.push_back({n - 2 * j});
  ExactMatrix e(x.dimension, x.dimension), f(x.dimension, x.dimension);
  for (int j = 1; j <= n; ++j) e.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)) =
      Rat(std::int64_t{j} * (n - j + 1));
  for (int j = 0; j < n; ++j) f.at(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(j)) = 1;
  // B(u_alpha, u_{-alpha}) = 1 forces u_{-alpha} = (g/2) F for the trace-form
  // family parametrized by the gram entry g.
  x.root_actions.emplace(Coords{2}, e);
  x.root_actions.emplace(Coords{-2}, Rat(g, 2) * f);
  x.infinitesimal_character = Weight({n + 1}, Lattice::Ktilde);
  return x;
}

void validate_module(const RootDatum& datum, const MatrixHCModule& x) {
  require(datum.is_abelian_k(), Errc::UnsupportedDatum,
          "matrix modules are supported over abelian-K data only");
  require(x.weights.size() == x.dimension, Errc::ShapeMismatch, "weight table size");
  for (const auto& w : x.weights)
    require(w.size() == datum.rank(), Errc::ShapeMismatch, "weight rank");

  for (const auto& root : datum.roots()) {
    const ExactMatrix& a = x.action(root);
    require(a.rows() == x.dimension && a.cols() == x.dimension, Errc::ShapeMismatch,
            "action matrix shape for " + coords_to_string(root));
    // root vectors shift the weight grading by their root
    for (std::size_t i = 0; i < x.dimension; ++i)
      for (std::size_t j = 0; j < x.dimension; ++j)
        if (a.at(i, j) != 0)
          require(x.weights[i] == x.weights[j] + root, Errc::ShapeMismatch,
                  "action of " + coords_to_string(root) + " breaks the weight grading");
  }

  // [u_beta, u_{-beta}] acts on a weight-w vector by <w, beta>
  for (const auto& root : datum.roots()) {
    const ExactMatrix& a = x.action(root);
    const ExactMatrix& b = x.action(-root);
    ExactMatrix comm = a * b - b * a;
    for (std::size_t i = 0; i < x.dimension; ++i)
      for (std::size_t j = 0; j < x.dimension; ++j) {
        Rat expect = i == j ? datum.ip(x.weights[i], root) : Rat(0);
        require(comm.at(i, j) == expect, Errc::ShapeMismatch,
                "coroot bracket fails for " + coords_to_string(root));
      }
  }
  // brackets of root vectors with beta + gamma neither zero nor a root vanish
  std::set<Coords> root_set(datum.roots().begin(), datum.roots().end());
  for (const auto& b1 : datum.roots())
    for (const auto& b2 : datum.roots()) {
      Coords s = b1 + b2;
      if (is_zero(s) || root_set.count(s)) continue;
      ExactMatrix comm = x.action(b1) * x.action(b2) - x.action(b2) * x.action(b1);
      require(comm.is_zero(), Errc::ShapeMismatch, "non-root bracket does not vanish");
    }

  // Casimir scalar |Lambda|^2 - |rho|^2
  require(datum.valid_weight(x.infinitesimal_character), Errc::InvalidParameter,
          "infinitesimal character off the lattice");
  ExactMatrix cas(x.dimension, x.dimension);
  for (std::size_t i = 0; i < x.dimension; ++i) cas.at(i, i) = Rat(datum.norm_dd(x.weights[i]), 4);
  for (const auto& root : datum.roots()) cas = cas + x.action(root) * x.action(-root);
  Rat scalar = Rat(datum.norm_dd(x.infinitesimal_character.coords) - datum.norm_dd(datum.rho_dd(0)), 4);
  ExactMatrix expect = scalar * ExactMatrix::identity(x.dimension);
  require(cas == expect, Errc::InvalidParameter,
          "Casimir does not act by |Lambda|^2 - |rho|^2 on " + x.name);
}

SpinorMatrices build_spinor_matrices(const RootDatum& datum) {
  require(datum.dim_p() % 2 == 0, Errc::OddNoncompactDimension, "dim p must be even");
  SpinorMatrices sp;
  sp.u_roots = datum.noncompact_positive_roots(datum.reference_chamber());
  std::size_t m = sp.u_roots.size();
  sp.dim = std::size_t{1} << m;
  Coords rho_n = datum.rho_n_dd(datum.reference_chamber());

  for (std::uint32_t mask = 0; mask < sp.dim; ++mask) {
    sp.parity.push_back(std::popcount(mask) % 2);
    Coords w = -rho_n;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint32_t{1} << i)) w = w + sp.u_roots[i];
    sp.s_weights.push_back(w);
  }

  for (std::size_t i = 0; i < m; ++i) {
    ExactMatrix wedge(sp.dim, sp.dim), contract(sp.dim, sp.dim);
    std::uint32_t bit = std::uint32_t{1} << i;
    for (std::uint32_t mask = 0; mask < sp.dim; ++mask) {
      if (!(mask & bit)) {
        wedge.at(mask | bit, mask) = insert_sign(mask, static_cast<int>(i));
      } else {
        // gamma(u*) lambda_1^...^lambda_r = 2 sum_j (-1)^j B(u*, lambda_j) ...
        auto bits = sorted_bits(mask);
        int j = 1;
        for (int b : bits) {
          if (b == static_cast<int>(i)) break;
          ++j;
        }
        contract.at(mask & ~bit, mask) = Rat((j % 2 == 0) ? 2 : -2);
      }
    }
    sp.gamma_u.push_back(wedge);
    sp.gamma_ustar.push_back(contract);
  }

  // Clifford relation on the chosen basis: gamma(v)gamma(w) + gamma(w)gamma(v)
  // = -2 B(v,w), with B(u_i, u_j) = B(u_i*, u_j*) = 0 and B(u_i, u_j*) = d_ij.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ExactMatrix uu = sp.gamma_u[i] * sp.gamma_u[j] + sp.gamma_u[j] * sp.gamma_u[i];
      require(uu.is_zero(), Errc::CliffordRelationFailed, "gamma(u)gamma(u) relation");
      ExactMatrix ss = sp.gamma_ustar[i] * sp.gamma_ustar[j] + sp.gamma_ustar[j] * sp.gamma_ustar[i];
      require(ss.is_zero(), Errc::CliffordRelationFailed, "gamma(u*)gamma(u*) relation");
      ExactMatrix us = sp.gamma_u[i] * sp.gamma_ustar[j] + sp.gamma_ustar[j] * sp.gamma_u[i];
      ExactMatrix expect = (i == j ? Rat(-2) : Rat(0)) * ExactMatrix::identity(sp.dim);
      require(us == expect, Errc::CliffordRelationFailed, "gamma(u)gamma(u*) relation");
    }
  return sp;
}

DiracMatrix dirac_matrix(const RootDatum& datum, const MatrixHCModule& x,
                         const SpinorMatrices& sp) {
  validate_module(datum, x);
  std::size_t m = sp.u_roots.size();
  std::size_t n = x.dimension * sp.dim;
  DiracMatrix d;
  d.full = ExactMatrix(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    const Coords& beta = sp.u_roots[i];
    d.full = d.full + kron(x.action(beta), sp.gamma_ustar[i]) + kron(x.action(-beta), sp.gamma_u[i]);
  }

  // independence of the defining basis: recompute with the rotated dual pair
  // (u + u*, u - u*), whose B-dual pair is ((u + u*)/2, (u* - u)/2)
  ExactMatrix alt(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    const Coords& beta = sp.u_roots[i];
    ExactMatrix xs = x.action(beta) + x.action(-beta);
    ExactMatrix xd = x.action(beta) - x.action(-beta);
    ExactMatrix gs = sp.gamma_u[i] + sp.gamma_ustar[i];
    ExactMatrix gd = sp.gamma_ustar[i] - sp.gamma_u[i];
    alt = alt + kron(xs, Rat(1, 2) * gs) + kron(xd, Rat(1, 2) * gd);
  }
  require(alt == d.full, Errc::IdentityFailed, "Dirac operator depends on the basis choice");

  for (std::size_t j = 0; j < x.dimension; ++j)
    for (std::size_t a = 0; a < sp.dim; ++a) {
      d.parity.push_back(sp.parity[a]);
      d.weights.push_back(x.weights[j] + sp.s_weights[a]);
      if (sp.parity[a] == 0)
        d.even_ids.push_back(j * sp.dim + a);
      else
        d.odd_ids.push_back(j * sp.dim + a);
    }

  d.plus = ExactMatrix(d.odd_ids.size(), d.even_ids.size());
  d.minus = ExactMatrix(d.even_ids.size(), d.odd_ids.size());
  for (std::size_t r = 0; r < d.odd_ids.size(); ++r)
    for (std::size_t c = 0; c < d.even_ids.size(); ++c) {
      d.plus.at(r, c) = d.full.at(d.odd_ids[r], d.even_ids[c]);
      d.minus.at(c, r) = d.full.at(d.even_ids[c], d.odd_ids[r]);
    }
  // D is odd: no even-even or odd-odd entries
  for (std::size_t a : d.even_ids)
    for (std::size_t b : d.even_ids)
      require(d.full.at(a, b) == 0, Errc::IdentityFailed, "Dirac operator is not odd");
  for (std::size_t a : d.odd_ids)
    for (std::size_t b : d.odd_ids)
      require(d.full.at(a, b) == 0, Errc::IdentityFailed, "Dirac operator is not odd");
  return d;
}

namespace {

// alpha(H_i) on S for the coordinate basis of t dual to the actual weight
// coordinates: -(1/4) sum_beta beta(H_i) [gamma(u_beta) gamma(u_beta*) -
// gamma(u_beta*) gamma(u_beta)]
std::vector<ExactMatrix> spinor_t_action(const RootDatum& datum, const SpinorMatrices& sp) {
  std::vector<ExactMatrix> alpha;
  for (std::size_t i = 0; i < datum.rank(); ++i) {
    ExactMatrix acc(sp.dim, sp.dim);
    for (std::size_t b = 0; b < sp.u_roots.size(); ++b) {
      Rat beta_i(sp.u_roots[b][i], 2);
      acc = acc + (Rat(-1, 4) * beta_i) *
                      (sp.gamma_u[b] * sp.gamma_ustar[b] - sp.gamma_ustar[b] * sp.gamma_u[b]);
    }
    // must be diagonal with the spinor weights
    for (std::size_t a = 0; a < sp.dim; ++a)
      for (std::size_t c = 0; c < sp.dim; ++c) {
        Rat expect = a == c ? Rat(sp.s_weights[a][i], 2) : Rat(0);
        require(acc.at(a, c) == expect, Errc::IdentityFailed,
                "spinor torus action disagrees with the subset-sum weights");
      }
    alpha.push_back(acc);
  }
  return alpha;
}

}  // namespace

void verify_parthasarathy(const RootDatum& datum, const MatrixHCModule& x,
                          const SpinorMatrices& sp) {
  DiracMatrix d = dirac_matrix(datum, x, sp);
  std::size_t n = x.dimension * sp.dim;

  // -Cas_g (x) 1
  ExactMatrix cas_g(x.dimension, x.dimension);
  for (std::size_t i = 0; i < x.dimension; ++i)
    cas_g.at(i, i) = Rat(datum.norm_dd(x.weights[i]), 4);
  for (const auto& root : datum.roots()) cas_g = cas_g + x.action(root) * x.action(-root);

  // Delta(Cas_k): abelian k, so Cas_k = sum_ij G_ij H_i H_j
  auto alpha = spinor_t_action(datum, sp);
  std::vector<ExactMatrix> delta_h;
  for (std::size_t i = 0; i < datum.rank(); ++i) {
    ExactMatrix hx(x.dimension, x.dimension);
    for (std::size_t j = 0; j < x.dimension; ++j) hx.at(j, j) = Rat(x.weights[j][i], 2);
    delta_h.push_back(kron(hx, ExactMatrix::identity(sp.dim)) +
                      kron(ExactMatrix::identity(x.dimension), alpha[i]));
  }
  ExactMatrix delta_cas(n, n);
  for (std::size_t i = 0; i < datum.rank(); ++i)
    for (std::size_t j = 0; j < datum.rank(); ++j) {
      Rat g(datum.gram()[i][j]);
      if (g != 0) delta_cas = delta_cas + g * (delta_h[i] * delta_h[j]);
    }

  Rat constant = Rat(datum.norm_dd(datum.rho_c_dd(0)) - datum.norm_dd(datum.rho_dd(0)), 4);
  ExactMatrix rhs = Rat(-1) * kron(cas_g, ExactMatrix::identity(sp.dim)) + delta_cas +
                    constant * ExactMatrix::identity(n);
  require(d.full * d.full == rhs, Errc::IdentityFailed,
          "Parthasarathy identity fails on " + x.name);
}

void verify_scalar_action(const RootDatum& datum, const MatrixHCModule& x,
                          const SpinorMatrices& sp) {
  DiracMatrix d = dirac_matrix(datum, x, sp);
  ExactMatrix d2 = d.full * d.full;
  std::size_t n = x.dimension * sp.dim;
  Coords rho_c = datum.rho_c_dd(0);
  std::int64_t lam = datum.norm_dd(x.infinitesimal_character.coords);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat expect(0);
      if (d.weights[i] == d.weights[j]) {
        if (i == j) expect = Rat(-lam + datum.norm_dd(d.weights[i] + rho_c), 4);
        // off-diagonal inside a 1-dimensional isotypic label appears only for
        // multiplicity > 1; D^2 must still be the scalar there
        else
          expect = d2.at(i, j);  // checked below by block scalar test
      }
      if (d.weights[i] != d.weights[j])
        require(d2.at(i, j) == 0, Errc::IdentityFailed, "D^2 mixes isotypic components");
    }
  // block scalar: D^2 restricted to each weight block equals the scalar
  std::map<Coords, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[d.weights[i]].push_back(i);
  for (const auto& [w, ids] : blocks) {
    Rat scalar = Rat(-lam + datum.norm_dd(w + rho_c), 4);
    for (auto i : ids)
      for (auto j : ids)
        require(d2.at(i, j) == (i == j ? scalar : Rat(0)), Errc::IdentityFailed,
                "D^2 is not the stated scalar on the component of weight " + coords_to_string(w));
  }
}

DiracCohomology dirac_cohomology(const RootDatum& datum, const MatrixHCModule& x,
                                 const SpinorMatrices& sp) {
  DiracMatrix d = dirac_matrix(datum, x, sp);
  std::size_t n = x.dimension * sp.dim;
  std::map<Coords, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[d.weights[i]].push_back(i);

  DiracCohomology out;
  out.index.lattice = Lattice::Ktilde;
  for (const auto& [w, ids] : blocks) {
    std::vector<std::size_t> ev, od;
    for (auto i : ids) (d.parity[i] == 0 ? ev : od).push_back(i);
    ExactMatrix dp(od.size(), ev.size()), dm(ev.size(), od.size());
    for (std::size_t r = 0; r < od.size(); ++r)
      for (std::size_t c = 0; c < ev.size(); ++c) {
        dp.at(r, c) = d.full.at(od[r], ev[c]);
        dm.at(c, r) = d.full.at(ev[c], od[r]);
      }
    FredholmIndex fi = fredholm_index({dp, dm});
    if (fi.a != 0 || fi.b != 0) out.graded_dims[w] = {fi.a, fi.b};
    out.index.add_term(w, fi.a - fi.b);
  }
  return out;
}

SuperHomSpace build_hom_space(const RootDatum& datum, const MatrixHCModule& x,
                              const MatrixHCModule& y, const SpinorMatrices& sp) {
  SuperHomSpace hs;
  hs.dx = dirac_matrix(datum, x, sp);
  hs.dy = dirac_matrix(datum, y, sp);
  std::size_t nx = x.dimension * sp.dim, ny = y.dimension * sp.dim;
  for (std::size_t from = 0; from < nx; ++from)
    for (std::size_t to = 0; to < ny; ++to)
      if (hs.dx.weights[from] == hs.dy.weights[to]) {
        int par = (hs.dx.parity[from] + hs.dy.parity[to]) % 2;
        if (par == 0)
          hs.even_ids.push_back(hs.units.size());
        else
          hs.odd_ids.push_back(hs.units.size());
        hs.units.push_back({from, to, par});
      }

  // dimension must agree with the character pairing
  LaurentElement chx, chy;
  chx.lattice = chy.lattice = Lattice::Ktilde;
  for (const auto& w : hs.dx.weights) chx.add_term(w, 1);
  for (const auto& w : hs.dy.weights) chy.add_term(w, 1);
  std::int64_t expected = pairing(decompose(datum, chx), decompose(datum, chy));
  require(static_cast<std::int64_t>(hs.units.size()) == expected, Errc::IdentityFailed,
          "Hom-space dimension disagrees with the character pairing");
  return hs;
}

namespace {

// F(phi) = D_Y o phi o eps_X - phi o D_X on the matrix-unit basis.
ExactMatrix hom_operator(const SuperHomSpace& hs) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unit_index;
  for (std::size_t u = 0; u < hs.units.size(); ++u)
    unit_index[{hs.units[u].from, hs.units[u].to}] = u;
  std::size_t n = hs.units.size();
  ExactMatrix f(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    auto [from, to, par] = hs.units[u];
    Rat eps = hs.dx.parity[from] == 0 ? Rat(1) : Rat(-1);
    for (std::size_t r = 0; r < hs.dy.full.rows(); ++r) {
      if (hs.dy.full.at(r, to) == 0) continue;
      auto it = unit_index.find({from, r});
      require(it != unit_index.end(), Errc::IdentityFailed, "operator leaves the unit basis");
      f.at(it->second, u) += eps * hs.dy.full.at(r, to);
    }
    for (std::size_t c = 0; c < hs.dx.full.cols(); ++c) {
      if (hs.dx.full.at(from, c) == 0) continue;
      auto it = unit_index.find({c, to});
      require(it != unit_index.end(), Errc::IdentityFailed, "operator leaves the unit basis");
      f.at(it->second, u) -= hs.dx.full.at(from, c);
    }
  }
  return f;
}

ExactMatrix submatrix(const ExactMatrix& m, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  ExactMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = m.at(rows[i], cols[j]);
  return r;
}

}  // namespace

STOperators build_ST(const RootDatum& datum, const MatrixHCModule& x, const MatrixHCModule& y,
                     const SpinorMatrices& sp) {
  STOperators st{build_hom_space(datum, x, y, sp), {}, {}};
  const SuperHomSpace& hs = st.space;
  ExactMatrix f = hom_operator(hs);
  // F is odd for the unit grading
  for (auto a : hs.even_ids)
    for (auto b : hs.even_ids)
      require(f.at(a, b) == 0, Errc::IdentityFailed, "S,T operator is not odd");
  for (auto a : hs.odd_ids)
    for (auto b : hs.odd_ids)
      require(f.at(a, b) == 0, Errc::IdentityFailed, "S,T operator is not odd");
  st.S = submatrix(f, hs.odd_ids, hs.even_ids);
  st.T = submatrix(f, hs.even_ids, hs.odd_ids);

  // TS phi = D^2 o phi + phi o D^2 (and ST likewise)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unit_index;
  for (std::size_t u = 0; u < hs.units.size(); ++u)
    unit_index[{hs.units[u].from, hs.units[u].to}] = u;
  ExactMatrix dx2 = hs.dx.full * hs.dx.full;
  ExactMatrix dy2 = hs.dy.full * hs.dy.full;
  ExactMatrix rhs(hs.units.size(), hs.units.size());
  for (std::size_t u = 0; u < hs.units.size(); ++u) {
    auto [from, to, par] = hs.units[u];
    for (std::size_t r = 0; r < dy2.rows(); ++r)
      if (dy2.at(r, to) != 0) rhs.at(unit_index.at({from, r}), u) += dy2.at(r, to);
    for (std::size_t c = 0; c < dx2.cols(); ++c)
      if (dx2.at(from, c) != 0) rhs.at(unit_index.at({c, to}), u) += dx2.at(from, c);
  }
  ExactMatrix ts = st.T * st.S;
  ExactMatrix st_prod = st.S * st.T;
  ExactMatrix rhs_even = submatrix(rhs, hs.even_ids, hs.even_ids);
  ExactMatrix rhs_odd = submatrix(rhs, hs.odd_ids, hs.odd_ids);
  require(ts == rhs_even, Errc::IdentityFailed, "TS != D^2 o phi + phi o D^2");
  require(st_prod == rhs_odd, Errc::IdentityFailed, "ST != D^2 o psi + psi o D^2");

  // ker(TS) (+) im(TS) spans C^0, and likewise for ST
  for (const auto& block : {ts, st_prod}) {
    ExactMatrix ker = kernel_basis(block);
    ExactMatrix im = image_basis(block);
    require(intersection_basis(ker, im).cols() == 0, Errc::IdentityFailed,
            "ker and im of TS/ST are not complementary");
  }
  return st;
}

std::int64_t index_ST(const RootDatum& datum, const MatrixHCModule& x, const MatrixHCModule& y,
                      const SpinorMatrices& sp) {
  STOperators st = build_ST(datum, x, y, sp);
  std::int64_t ind = fredholm_index({st.S, st.T}).index;
  DiracCohomology hx = dirac_cohomology(datum, x, sp);
  DiracCohomology hy = dirac_cohomology(datum, y, sp);
  std::int64_t pair_value = pairing(hx.index, hy.index);
  require(ind == pair_value, Errc::IdentityFailed,
          "ind(S,T) differs from the Dirac index pairing");
  return ind;
}

namespace {

struct PBasis {
  std::size_t m = 0;  // #u-roots; p-basis size is 2m (u's then u*'s)
  const MatrixHCModule* x;
  const SpinorMatrices* sp;

  Coords weight_of(std::size_t q) const {
    return q < m ? sp->u_roots[q] : -sp->u_roots[q - m];
  }
  const ExactMatrix& act(const MatrixHCModule& mod, std::size_t q) const {
    return q < m ? mod.action(sp->u_roots[q]) : mod.action(-sp->u_roots[q - m]);
  }
};

Coords subset_weight(const PBasis& pb, std::uint32_t mask) {
  Coords w(pb.sp->u_roots.empty() ? pb.x->weights[0].size() : pb.sp->u_roots[0].size(), 0);
  for (std::size_t q = 0; q < 2 * pb.m; ++q)
    if (mask & (std::uint32_t{1} << q)) w = w + pb.weight_of(q);
  return w;
}

}  // namespace

ExtComplex ext_complex(const RootDatum& datum, const MatrixHCModule& x, const MatrixHCModule& y) {
  validate_module(datum, x);
  validate_module(datum, y);
  SpinorMatrices sp = build_spinor_matrices(datum);
  PBasis pb{sp.u_roots.size(), &x, &sp};
  std::size_t pdim = 2 * pb.m;

  ExtComplex ec;
  ec.bases.resize(pdim + 1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pdim); ++mask) {
    std::size_t deg = static_cast<std::size_t>(std::popcount(mask));
    Coords wm = subset_weight(pb, mask);
    for (std::size_t j = 0; j < x.dimension; ++j)
      for (std::size_t k = 0; k < y.dimension; ++k)
        if (wm + x.weights[j] == y.weights[k])
          ec.bases[deg].push_back({mask, j, k});
  }
  // canonical order inside each degree: by (mask, x, y); the fill above is
  // mask-major already
  ec.complex.lowest = 0;
  for (auto& b : ec.bases) ec.complex.dims.push_back(static_cast<std::int64_t>(b.size()));

  auto index_in = [&](std::size_t deg, std::uint32_t mask, std::size_t xj,
                      std::size_t yk) -> std::int64_t {
    const auto& base = ec.bases[deg];
    for (std::size_t i = 0; i < base.size(); ++i)
      if (base[i].subset == mask && base[i].x_index == xj && base[i].y_index == yk)
        return static_cast<std::int64_t>(i);
    return -1;
  };

  // d phi (B (x) x) = sum_j (-1)^j [ p_j . phi(B\p_j (x) x) - phi(B\p_j (x) p_j . x) ],
  // positions 1-based over the ascending order of B
  for (std::size_t deg = 0; deg < pdim; ++deg) {
    ExactMatrix d(ec.bases[deg + 1].size(), ec.bases[deg].size());
    for (std::size_t out = 0; out < ec.bases[deg + 1].size(); ++out) {
      const auto& el = ec.bases[deg + 1][out];
      auto bits = sorted_bits(el.subset);
      for (std::size_t pos = 0; pos < bits.size(); ++pos) {
        std::size_t q = static_cast<std::size_t>(bits[pos]);
        int sign = (pos + 1) % 2 == 0 ? 1 : -1;
        std::uint32_t sub = el.subset & ~(std::uint32_t{1} << q);
        const ExactMatrix& ay = pb.act(y, q);
        for (std::size_t w = 0; w < y.dimension; ++w) {
          if (ay.at(el.y_index, w) == 0) continue;
          std::int64_t in = index_in(deg, sub, el.x_index, w);
          require(in >= 0, Errc::NotAComplex, "differential leaves the weight-matched basis");
          d.at(out, static_cast<std::size_t>(in)) += Rat(sign) * ay.at(el.y_index, w);
        }
        const ExactMatrix& ax = pb.act(x, q);
        for (std::size_t c = 0; c < x.dimension; ++c) {
          if (ax.at(c, el.x_index) == 0) continue;
          std::int64_t in = index_in(deg, sub, c, el.y_index);
          require(in >= 0, Errc::NotAComplex, "differential leaves the weight-matched basis");
          d.at(out, static_cast<std::size_t>(in)) -= Rat(sign) * ax.at(c, el.x_index);
        }
      }
    }
    ec.complex.differentials.push_back(d);
  }
  validate_complex(ec.complex);
  EulerReport er = euler_via_pair(ec.complex);
  ec.cohomology_dims = er.cohomology_dims;
  ec.euler = er.pair_index.index;
  return ec;
}

SplitOperators split_operators(const RootDatum& datum, const MatrixHCModule& x,
                               const MatrixHCModule& y, const SpinorMatrices& sp) {
  ExtComplex ec = ext_complex(datum, x, y);
  PBasis pb{sp.u_roots.size(), &x, &sp};
  std::size_t m = pb.m;
  std::uint32_t umask_all = (std::uint32_t{1} << m) - 1;

  // global bold-C indexing
  std::vector<std::size_t> offset(ec.bases.size() + 1, 0);
  for (std::size_t i = 0; i < ec.bases.size(); ++i) offset[i + 1] = offset[i] + ec.bases[i].size();
  std::size_t n = offset.back();

  std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, std::size_t> global_index;
  SplitOperators so;
  for (std::size_t deg = 0; deg < ec.bases.size(); ++deg)
    for (const auto& el : ec.bases[deg]) {
      std::size_t g = global_index.size();
      global_index[{el.subset, el.x_index, el.y_index}] = g;
      so.parity.push_back(static_cast<int>(deg % 2));
      (deg % 2 == 0 ? so.even_ids : so.odd_ids).push_back(g);
    }

  auto amask = [&](std::uint32_t mask) { return mask & umask_all; };
  auto bmask = [&](std::uint32_t mask) { return mask >> m; };

  so.d_parts.assign(4, ExactMatrix(n, n));
  so.delta_parts.assign(4, ExactMatrix(n, n));

  // Evaluate each of the eight pieces on the output element (A;B) (x) x_l -> y_n.
  for (const auto& [key, out] : global_index) {
    auto [mask, xl, yn] = key;
    std::uint32_t a_bits = amask(mask), b_bits = bmask(mask);
    int r = std::popcount(a_bits);
    Rat sign_r = (r % 2 == 0) ? Rat(1) : Rat(-1);
    auto abits = sorted_bits(a_bits);
    auto bbits = sorted_bits(b_bits);

    auto add_y_action = [&](ExactMatrix& target, std::uint32_t in_mask, const ExactMatrix& ay,
                            Rat coeff) {
      for (std::size_t w = 0; w < y.dimension; ++w) {
        if (ay.at(yn, w) == 0) continue;
        auto it = global_index.find({in_mask, xl, w});
        require(it != global_index.end(), Errc::IdentityFailed, "term leaves the basis");
        target.at(out, it->second) += coeff * ay.at(yn, w);
      }
    };
    auto add_x_action = [&](ExactMatrix& target, std::uint32_t in_mask, const ExactMatrix& ax,
                            Rat coeff) {
      for (std::size_t c = 0; c < x.dimension; ++c) {
        if (ax.at(c, xl) == 0) continue;
        auto it = global_index.find({in_mask, c, yn});
        require(it != global_index.end(), Errc::IdentityFailed, "term leaves the basis");
        target.at(out, it->second) += coeff * ax.at(c, xl);
      }
    };

    // d1, d2: remove a u from A (1-based position signs)
    for (std::size_t pos = 0; pos < abits.size(); ++pos) {
      std::size_t i = static_cast<std::size_t>(abits[pos]);
      Rat sgn((pos + 1) % 2 == 0 ? 1 : -1);
      std::uint32_t in_mask = mask & ~(std::uint32_t{1} << i);
      add_y_action(so.d_parts[0], in_mask, y.action(sp.u_roots[i]), sgn);
      add_x_action(so.d_parts[1], in_mask, x.action(sp.u_roots[i]), -sgn);
    }
    // d3, d4: remove a u* from B; global factor (-1)^r
    for (std::size_t pos = 0; pos < bbits.size(); ++pos) {
      std::size_t i = static_cast<std::size_t>(bbits[pos]);
      Rat sgn((pos + 1) % 2 == 0 ? 1 : -1);
      std::uint32_t in_mask = mask & ~(std::uint32_t{1} << (i + m));
      add_y_action(so.d_parts[2], in_mask, y.action(-sp.u_roots[i]), sign_r * sgn);
      add_x_action(so.d_parts[3], in_mask, x.action(-sp.u_roots[i]), -sign_r * sgn);
    }
    // delta1, delta2: insert u_i^* into B; factor (-1)^r and the sort sign
    for (std::size_t i = 0; i < m; ++i) {
      if (b_bits & (std::uint32_t{1} << i)) continue;
      Rat sgn(insert_sign(b_bits, static_cast<int>(i)));
      std::uint32_t in_mask = mask | (std::uint32_t{1} << (i + m));
      add_y_action(so.delta_parts[0], in_mask, y.action(sp.u_roots[i]), sign_r * sgn);
      add_x_action(so.delta_parts[1], in_mask, x.action(sp.u_roots[i]), -sign_r * sgn);
    }
    // delta3, delta4: insert u_i into A
    for (std::size_t i = 0; i < m; ++i) {
      if (a_bits & (std::uint32_t{1} << i)) continue;
      Rat sgn(insert_sign(a_bits, static_cast<int>(i)));
      std::uint32_t in_mask = mask | (std::uint32_t{1} << i);
      add_y_action(so.delta_parts[2], in_mask, y.action(-sp.u_roots[i]), sgn);
      add_x_action(so.delta_parts[3], in_mask, x.action(-sp.u_roots[i]), -sgn);
    }
  }

  so.d_total = so.d_parts[0] + so.d_parts[1] + so.d_parts[2] + so.d_parts[3];
  so.delta_total = so.delta_parts[0] + so.delta_parts[1] + so.delta_parts[2] + so.delta_parts[3];
  so.op_a = Rat(2) * so.d_parts[0] + so.delta_parts[0] + Rat(2) * so.d_parts[1] + so.delta_parts[1];
  so.op_b = so.delta_parts[2] + Rat(2) * so.d_parts[2] + so.delta_parts[3] + Rat(2) * so.d_parts[3];
  so.ecal = Rat(2) * so.d_parts[0] + so.delta_parts[1] + so.delta_parts[2] + Rat(2) * so.d_parts[3];

  // independent d: the Ext differential assembled as one odd operator
  so.d_transport = ExactMatrix(n, n);
  for (std::size_t deg = 0; deg + 1 < ec.bases.size(); ++deg) {
    const ExactMatrix& d = ec.complex.differentials[deg];
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (d.at(r, c) != 0) so.d_transport.at(offset[deg + 1] + r, offset[deg] + c) = d.at(r, c);
  }

  // independent Dcal: transport of (S, T) through phi(x (x) s_A) =
  // sum_B (-1/2)^{|B|} phi((A;B) (x) x) (x) s_B
  STOperators st = build_ST(datum, x, y, sp);
  const SuperHomSpace& hs = st.space;
  ExactMatrix f = hom_operator(hs);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unit_index;
  for (std::size_t u = 0; u < hs.units.size(); ++u)
    unit_index[{hs.units[u].from, hs.units[u].to}] = u;
  require(hs.units.size() == n, Errc::IdentityFailed, "Hom spaces do not correspond");

  std::vector<std::size_t> to_hom(n);      // bold-C index -> unit index
  std::vector<Rat> j_factor(n);
  for (const auto& [key, g] : global_index) {
    auto [mask, xj, yk] = key;
    std::size_t from = xj * sp.dim + amask(mask);
    std::size_t to = yk * sp.dim + bmask(mask);
    auto it = unit_index.find({from, to});
    require(it != unit_index.end(), Errc::IdentityFailed, "transport misses a unit");
    to_hom[g] = it->second;
    int s = std::popcount(bmask(mask));
    j_factor[g] = Rat((s % 2 == 0) ? 1 : -1, std::int64_t{1} << s);
  }
  so.dcal_transport = ExactMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row) {
      Rat v = f.at(to_hom[row], to_hom[col]);
      if (v != 0) so.dcal_transport.at(row, col) = v * j_factor[col] / j_factor[row];
    }

  ExactMatrix dcal_parts = so.delta_parts[0] + Rat(2) * so.d_parts[1] + Rat(2) * so.d_parts[2] +
                           so.delta_parts[3];
  auto first_mismatch = [](const ExactMatrix& a, const ExactMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a.at(i, j) != b.at(i, j))
          return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                 "): " + to_string(a.at(i, j)) + " vs " + to_string(b.at(i, j));
    return std::string("none");
  };
  require(so.d_total == so.d_transport, Errc::IdentityFailed,
          "d parts do not sum to the Ext differential; first mismatch at " +
              first_mismatch(so.d_total, so.d_transport));
  require(dcal_parts == so.dcal_transport, Errc::IdentityFailed,
          "Dcal parts do not sum to the transported (S,T); first mismatch at " +
              first_mismatch(dcal_parts, so.dcal_transport));
  ExactMatrix lhs = Rat(2) * so.d_transport + so.delta_total;
  ExactMatrix rhs = so.dcal_transport + so.ecal;
  require(lhs == rhs, Errc::IdentityFailed,
          "2d + delta != Dcal + Ecal; first mismatch at " + first_mismatch(lhs, rhs));
  require((so.delta_total * so.delta_total).is_zero(), Errc::IdentityFailed,
          "delta^2 != 0");
  return so;
}

namespace {

FredholmPairData odd_pair(const ExactMatrix& op, const std::vector<std::size_t>& even,
                          const std::vector<std::size_t>& odd) {
  FredholmPairData p{ExactMatrix(odd.size(), even.size()), ExactMatrix(even.size(), odd.size())};
  for (std::size_t r = 0; r < odd.size(); ++r)
    for (std::size_t c = 0; c < even.size(); ++c) {
      p.S.at(r, c) = op.at(odd[r], even[c]);
      p.T.at(c, r) = op.at(even[c], odd[r]);
    }
  return p;
}

}  // namespace

ConjectureReport conjecture_check(const RootDatum& datum, const MatrixHCModule& x,
                                  const MatrixHCModule& y, const SpinorMatrices& sp) {
  SplitOperators so = split_operators(datum, x, y, sp);
  ConjectureReport rep;
  rep.ind_d = fredholm_index(odd_pair(so.d_transport, so.even_ids, so.odd_ids)).index;
  rep.ind_dcal = fredholm_index(odd_pair(so.dcal_transport, so.even_ids, so.odd_ids)).index;
  rep.equal = rep.ind_d == rep.ind_dcal;
  return rep;
}

std::pair<OddOperator, OddOperator> bigop_export(const RootDatum& datum,
                                                 const MatrixHCModule& x,
                                                 const MatrixHCModule& y,
                                                 const SpinorMatrices& sp) {
  SplitOperators so = split_operators(datum, x, y, sp);
  FredholmPairData dpair = odd_pair(Rat(2) * so.d_transport, so.even_ids, so.odd_ids);
  FredholmPairData delpair = odd_pair(so.delta_total, so.even_ids, so.odd_ids);
  return {OddOperator{dpair.S, dpair.T}, OddOperator{delpair.S, delpair.T}};
}

}  // namespace dirac
