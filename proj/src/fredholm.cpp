#include "dirac/fredholm.hpp"

#include <algorithm>

namespace dirac {

void validate_pair(const FredholmPairData& p) {
  require(p.S.rows() == p.T.cols() && p.S.cols() == p.T.rows(), Errc::ShapeMismatch,
          "S and T do not connect the same two spaces");
}

FredholmIndex fredholm_index(const FredholmPairData& p) {
  validate_pair(p);
  ExactMatrix ker_s = kernel_basis(p.S);
  ExactMatrix ker_t = kernel_basis(p.T);
  ExactMatrix im_s = image_basis(p.S);
  ExactMatrix im_t = image_basis(p.T);
  FredholmIndex r;
  r.a = static_cast<std::int64_t>(ker_s.cols()) -
        static_cast<std::int64_t>(intersection_basis(ker_s, im_t).cols());
  r.b = static_cast<std::int64_t>(ker_t.cols()) -
        static_cast<std::int64_t>(intersection_basis(ker_t, im_s).cols());
  r.index = r.a - r.b;
  return r;
}

void validate_complex(const GradedComplexData& c) {
  require(c.dims.size() >= 1, Errc::NotAComplex, "empty complex");
  require(c.differentials.size() + 1 == c.dims.size(), Errc::NotAComplex,
          "wrong number of differentials");
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    require(c.differentials[i].cols() == static_cast<std::size_t>(c.dims[i]) &&
                c.differentials[i].rows() == static_cast<std::size_t>(c.dims[i + 1]),
            Errc::NotAComplex, "differential shape mismatch at degree " + std::to_string(i));
    if (i + 1 < c.differentials.size())
      require((c.differentials[i + 1] * c.differentials[i]).is_zero(), Errc::NotAComplex,
              "d o d != 0 at degree " + std::to_string(i));
  }
}

FredholmPairData complex_to_pair(const GradedComplexData& c) {
  validate_complex(c);
  // Split by actual degree parity.
  std::vector<std::size_t> even, odd;  // indices into dims
  for (std::size_t i = 0; i < c.dims.size(); ++i)
    (((c.lowest + static_cast<int>(i)) % 2 + 2) % 2 == 0 ? even : odd).push_back(i);
  std::int64_t dim_even = 0, dim_odd = 0;
  std::vector<std::int64_t> off(c.dims.size(), 0);
  for (auto i : even) {
    off[i] = dim_even;
    dim_even += c.dims[i];
  }
  for (auto i : odd) {
    off[i] = dim_odd;
    dim_odd += c.dims[i];
  }
  FredholmPairData p{ExactMatrix(static_cast<std::size_t>(dim_odd),
                                 static_cast<std::size_t>(dim_even)),
                     ExactMatrix(static_cast<std::size_t>(dim_even),
                                 static_cast<std::size_t>(dim_odd))};
  for (std::size_t i = 0; i + 1 < c.dims.size(); ++i) {
    const ExactMatrix& d = c.differentials[i];
    bool from_even = ((c.lowest + static_cast<int>(i)) % 2 + 2) % 2 == 0;
    ExactMatrix& target = from_even ? p.S : p.T;
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t cc = 0; cc < d.cols(); ++cc)
        target.at(static_cast<std::size_t>(off[i + 1]) + r,
                  static_cast<std::size_t>(off[i]) + cc) = d.at(r, cc);
  }
  return p;
}

EulerReport euler_via_pair(const GradedComplexData& c) {
  EulerReport rep;
  rep.pair_index = fredholm_index(complex_to_pair(c));
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    int deg = c.lowest + static_cast<int>(i);
    int sign = ((deg % 2) + 2) % 2 == 0 ? 1 : -1;
    rep.alternating_dim_sum += sign * c.dims[i];
    std::int64_t ker =
        i < c.differentials.size()
            ? static_cast<std::int64_t>(kernel_basis(c.differentials[i]).cols())
            : c.dims[i];
    std::int64_t im_prev =
        i > 0 ? static_cast<std::int64_t>(rank_of(c.differentials[i - 1])) : 0;
    rep.cohomology_dims.push_back(ker - im_prev);
    rep.alternating_cohomology_sum += sign * (ker - im_prev);
  }
  require(rep.pair_index.index == rep.alternating_dim_sum &&
              rep.pair_index.index == rep.alternating_cohomology_sum,
          Errc::IdentityFailed, "pair index does not match the Euler characteristic");
  return rep;
}

ReducedPairReport reduced_pair(const FredholmPairData& p) {
  validate_pair(p);
  ReducedPairReport rep;
  rep.original = fredholm_index(p);
  ExactMatrix im_ts = image_basis(p.T * p.S);
  ExactMatrix im_st = image_basis(p.S * p.T);
  QuotientSpace qx = quotient_by(im_ts, p.S.cols());
  QuotientSpace qy = quotient_by(im_st, p.S.rows());
  rep.dim_xbar = static_cast<std::int64_t>(qx.dim);
  rep.dim_ybar = static_cast<std::int64_t>(qy.dim);
  rep.reduced.S = qy.proj * (p.S * qx.section);
  rep.reduced.T = qx.proj * (p.T * qy.section);
  rep.reduced_index = fredholm_index(rep.reduced);
  require(rep.reduced_index.index == rep.original.index, Errc::IdentityFailed,
          "reduction changed the index");
  require(rep.reduced_index.index == rep.dim_xbar - rep.dim_ybar, Errc::IdentityFailed,
          "reduced index differs from dim Xbar - dim Ybar");
  return rep;
}

AdditivityReport check_additivity(const FredholmPairData& p1, const FredholmPairData& p2,
                                  const FredholmPairData& p3, const ExactMatrix& alpha,
                                  const ExactMatrix& beta, const ExactMatrix& gamma,
                                  const ExactMatrix& delta) {
  for (const auto* p : {&p1, &p2, &p3}) {
    validate_pair(*p);
    require((p->S * p->T).is_zero() && (p->T * p->S).is_zero(), Errc::HypothesisSTnotZero,
            "need S T = 0 and T S = 0");
  }
  require(p2.S * alpha == gamma * p1.S, Errc::DiagramNotCommutative, "S square (1,2)");
  require(p3.S * beta == delta * p2.S, Errc::DiagramNotCommutative, "S square (2,3)");
  require(p2.T * gamma == alpha * p1.T, Errc::DiagramNotCommutative, "T square (1,2)");
  require(p3.T * delta == beta * p2.T, Errc::DiagramNotCommutative, "T square (2,3)");

  auto check_exact = [](const ExactMatrix& inj, const ExactMatrix& surj, std::size_t dim1,
                        std::size_t dim3, const std::string& which) {
    require(rank_of(inj) == dim1, Errc::SequenceNotExact, which + ": first map not injective");
    require(rank_of(surj) == dim3, Errc::SequenceNotExact, which + ": second map not surjective");
    require(same_subspace(image_basis(inj), kernel_basis(surj)), Errc::SequenceNotExact,
            which + ": image != kernel in the middle");
  };
  check_exact(alpha, beta, p1.S.cols(), p3.S.cols(), "X column");
  check_exact(gamma, delta, p1.S.rows(), p3.S.rows(), "Y column");

  AdditivityReport rep;
  rep.ind1 = fredholm_index(p1);
  rep.ind2 = fredholm_index(p2);
  rep.ind3 = fredholm_index(p3);
  rep.alternating_sum = rep.ind1.index - rep.ind2.index + rep.ind3.index;
  require(rep.alternating_sum == 0, Errc::IdentityFailed, "additivity violated");
  return rep;
}

PerturbationReport perturbed_index(const OddOperator& d, const OddOperator& del) {
  require(d.plus.rows() == d.minus.cols() && d.plus.cols() == d.minus.rows(),
          Errc::ShapeMismatch, "d blocks");
  require(del.plus.rows() == d.plus.rows() && del.plus.cols() == d.plus.cols() &&
              del.minus.rows() == d.minus.rows() && del.minus.cols() == d.minus.cols(),
          Errc::ShapeMismatch, "del blocks");
  require((d.minus * d.plus).is_zero() && (d.plus * d.minus).is_zero(), Errc::NotAComplex,
          "d^2 != 0");
  require((del.minus * del.plus).is_zero() && (del.plus * del.minus).is_zero(), Errc::NotAComplex,
          "del^2 != 0");

  ExactMatrix f_plus = d.plus + del.plus;
  ExactMatrix f_minus = d.minus + del.minus;

  // F^2 is even: check ker + im = V blockwise.
  for (const auto& block : {f_minus * f_plus, f_plus * f_minus}) {
    ExactMatrix ker = kernel_basis(block);
    ExactMatrix im = image_basis(block);
    require(intersection_basis(ker, im).cols() == 0, Errc::SemisimplicityFails,
            "ker(F^2) meets im(F^2)");
  }

  PerturbationReport rep;
  rep.ind_f = fredholm_index({f_plus, f_minus});
  rep.ind_d = fredholm_index({d.plus, d.minus});
  rep.equal = rep.ind_f.index == rep.ind_d.index;
  require(rep.equal, Errc::IdentityFailed, "perturbed index differs");
  return rep;
}

// ---------------------------------------------------------------------------

ExactMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int max_num,
                          int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rat(num(rng), den(rng));
  return m;
}

ExactMatrix random_annihilating_partner(Rng& rng, const ExactMatrix& s) {
  // t = K R W with K spanning ker(s) and W killing im(s); then s t = t s = 0.
  ExactMatrix k = kernel_basis(s);
  ExactMatrix w = kernel_basis(s.transpose()).transpose();
  ExactMatrix r = random_matrix(rng, k.cols(), w.rows());
  return k * (r * w);
}

FredholmPairData random_pair(Rng& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::size_t nx = dim(rng), ny = dim(rng);
  return {random_matrix(rng, ny, nx), random_matrix(rng, nx, ny)};
}

FredholmPairData random_zero_product_pair(Rng& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::size_t nx = dim(rng), ny = dim(rng);
  ExactMatrix s = random_matrix(rng, ny, nx);
  return {s, random_annihilating_partner(rng, s)};
}

GradedComplexData random_complex(Rng& rng, std::size_t terms, std::size_t max_dim) {
  std::uniform_int_distribution<std::int64_t> dim(0, static_cast<std::int64_t>(max_dim));
  GradedComplexData c;
  c.lowest = 0;
  c.dims.resize(terms);
  for (auto& d : c.dims) d = dim(rng);
  for (std::size_t i = 0; i + 1 < terms; ++i) {
    std::size_t r = static_cast<std::size_t>(c.dims[i + 1]);
    std::size_t cc = static_cast<std::size_t>(c.dims[i]);
    if (i == 0) {
      c.differentials.push_back(random_matrix(rng, r, cc));
      continue;
    }
    // next differential must kill the image of the previous one
    const ExactMatrix& prev = c.differentials.back();
    ExactMatrix w = kernel_basis(prev.transpose()).transpose();  // rows kill im(prev)
    ExactMatrix mix = random_matrix(rng, r, w.rows());
    c.differentials.push_back(mix * w);
  }
  return c;
}

OddOperator random_odd_differential(Rng& rng, std::size_t dim0, std::size_t dim1) {
  OddOperator d;
  d.plus = random_matrix(rng, dim1, dim0);
  d.minus = random_annihilating_partner(rng, d.plus);
  return d;
}

std::vector<std::string> fredholm_suite_names() {
  return {"definition", "complexes", "reduction", "additivity", "perturbation"};
}

SuiteResult run_fredholm_suite(const std::string& name, std::uint64_t seed) {
  SuiteResult res;
  res.name = name;
  res.seed = seed;
  Rng rng(seed);
  auto run = [&](int count, auto&& body) {
    for (int i = 0; i < count; ++i) {
      ++res.instances;
      try {
        body();
      } catch (const DomainError& e) {
        ++res.failures;
        if (res.notes.size() < 8) res.notes.push_back(e.what());
      }
    }
  };

  if (name == "definition") {
    // Example: T = 0 reduces to the classical operator index.
    run(100, [&] {
      std::uniform_int_distribution<std::size_t> dim(1, 8);
      std::size_t nx = dim(rng), ny = dim(rng);
      ExactMatrix s = random_matrix(rng, ny, nx);
      FredholmIndex ix = fredholm_index({s, ExactMatrix(nx, ny)});
      std::int64_t nullity = static_cast<std::int64_t>(kernel_basis(s).cols());
      std::int64_t corank =
          static_cast<std::int64_t>(ny) - static_cast<std::int64_t>(rank_of(s));
      require(ix.index == nullity - corank, Errc::IdentityFailed,
              "operator index mismatch");
    });
  } else if (name == "complexes") {
    run(200, [&] {
      std::uniform_int_distribution<std::size_t> terms(2, 4);
      euler_via_pair(random_complex(rng, terms(rng), 8));
    });
  } else if (name == "reduction") {
    run(100, [&] { reduced_pair(random_pair(rng, 8)); });
  } else if (name == "additivity") {
    run(100, [&] {
      FredholmPairData p1 = random_zero_product_pair(rng, 4);
      FredholmPairData p3 = random_zero_product_pair(rng, 4);
      std::size_t nx1 = p1.S.cols(), ny1 = p1.S.rows();
      std::size_t nx3 = p3.S.cols(), ny3 = p3.S.rows();
      std::size_t nx2 = nx1 + nx3, ny2 = ny1 + ny3;
      // conjugate the direct sum by unipotent changes of basis
      ExactMatrix gx = ExactMatrix::identity(nx2);
      ExactMatrix hy = ExactMatrix::identity(ny2);
      ExactMatrix gblk = random_matrix(rng, nx1, nx3);
      ExactMatrix hblk = random_matrix(rng, ny1, ny3);
      for (std::size_t i = 0; i < nx1; ++i)
        for (std::size_t j = 0; j < nx3; ++j) gx.at(i, nx1 + j) = gblk.at(i, j);
      for (std::size_t i = 0; i < ny1; ++i)
        for (std::size_t j = 0; j < ny3; ++j) hy.at(i, ny1 + j) = hblk.at(i, j);
      ExactMatrix gx_inv = gx;  // unipotent upper triangular: inverse flips the block
      ExactMatrix hy_inv = hy;
      for (std::size_t i = 0; i < nx1; ++i)
        for (std::size_t j = 0; j < nx3; ++j) gx_inv.at(i, nx1 + j) = -gblk.at(i, j);
      for (std::size_t i = 0; i < ny1; ++i)
        for (std::size_t j = 0; j < ny3; ++j) hy_inv.at(i, ny1 + j) = -hblk.at(i, j);

      FredholmPairData p2{hy * ExactMatrix::dsum(p1.S, p3.S) * gx_inv,
                          gx * ExactMatrix::dsum(p1.T, p3.T) * hy_inv};
      // connecting maps through the twisted middle term
      ExactMatrix inc_x(nx2, nx1), inc_y(ny2, ny1), pr_x(nx3, nx2), pr_y(ny3, ny2);
      for (std::size_t i = 0; i < nx1; ++i) inc_x.at(i, i) = 1;
      for (std::size_t i = 0; i < ny1; ++i) inc_y.at(i, i) = 1;
      for (std::size_t i = 0; i < nx3; ++i) pr_x.at(i, nx1 + i) = 1;
      for (std::size_t i = 0; i < ny3; ++i) pr_y.at(i, ny1 + i) = 1;
      check_additivity(p1, p2, p3, gx * inc_x, pr_x * gx_inv, hy * inc_y, pr_y * hy_inv);
    });
  } else if (name == "perturbation") {
    int done = 0, attempts = 0;
    while (done < 50 && attempts < 5000) {
      ++attempts;
      std::uniform_int_distribution<std::size_t> dim(1, 6);
      std::size_t n0 = dim(rng), n1 = dim(rng);
      OddOperator d = random_odd_differential(rng, n0, n1);
      OddOperator del = random_odd_differential(rng, n0, n1);
      try {
        perturbed_index(d, del);
      } catch (const DomainError& e) {
        if (e.code() == Errc::SemisimplicityFails) continue;  // hypothesis not met: resample
        ++res.failures;
        if (res.notes.size() < 8) res.notes.push_back(e.what());
      }
      ++done;
      ++res.instances;
    }
    if (done < 50) {
      ++res.failures;
      res.notes.push_back("could not draw 50 semisimple instances");
    }
  } else {
    fail(Errc::UsageError, "unknown fredholm suite '" + name + "'");
  }
  return res;
}

}  // namespace dirac
