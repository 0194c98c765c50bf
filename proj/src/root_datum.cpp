#include "dirac/root_datum.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dirac {

namespace {

Int det_int(const std::vector<std::vector<Int>>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int acc = 0;
  // cofactor expansion along the first row; ranks here are tiny
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<Int>> minor(n - 1, std::vector<Int>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    Int term = m[0][j] * det_int(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

std::vector<Coords> sorted_desc(std::vector<Coords> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

std::int64_t RootDatum::ip_dd(const Coords& a, const Coords& b) const {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) acc += a[i] * gram_[i][j] * b[j];
  return acc;
}

RootDatum RootDatum::preset(const std::string& name) {
  RootDatum d;
  d.name_ = name;
  if (name == "sl2R") {
    d.rank_ = 1;
    d.roots_ = {{2}, {-2}};
    d.compact_ = {false, false};
    d.gram_ = {{2}};
  } else if (name == "su21") {
    d.rank_ = 2;
    d.roots_ = {{2, -2}, {-2, 2}, {4, 2}, {-4, -2}, {2, 4}, {-2, -4}};
    d.compact_ = {true, true, false, false, false, false};
    d.gram_ = {{2, -1}, {-1, 2}};
  } else if (name == "sp4R") {
    d.rank_ = 2;
    d.roots_ = {{4, 0}, {-4, 0}, {0, 4}, {0, -4}, {2, 2}, {-2, -2}, {2, -2}, {-2, 2}};
    d.compact_ = {false, false, false, false, false, false, true, true};
    d.gram_ = {{1, 0}, {0, 1}};
  } else {
    fail(Errc::DatumLoadError, "unknown preset '" + name + "'");
  }
  d.validate_and_finish();
  return d;
}

RootDatum RootDatum::build(const RootDatumConfig& config) {
  require(config.rank > 0, Errc::InvalidRootSystem, "rank must be positive");
  require(config.simple_roots.size() == config.compact_flags.size(), Errc::InvalidRootSystem,
          "one compact flag per simple root required");
  RootDatum d;
  d.name_ = config.name;
  d.rank_ = static_cast<std::size_t>(config.rank);
  d.gram_ = config.gram;
  require(d.gram_.size() == d.rank_, Errc::InvalidRootSystem, "gram size mismatch");
  for (auto& row : d.gram_)
    require(row.size() == d.rank_, Errc::InvalidRootSystem, "gram size mismatch");

  // Generate the root system as the reflection closure of the simple roots.
  std::set<Coords> roots(config.simple_roots.begin(), config.simple_roots.end());
  for (const auto& s : config.simple_roots) {
    require(s.size() == d.rank_, Errc::InvalidRootSystem, "simple root rank mismatch");
    roots.insert(-s);
  }
  bool grew = true;
  int guard = 0;
  while (grew) {
    require(++guard < 64 && roots.size() < 4096, Errc::InvalidRootSystem,
            "reflection closure does not terminate");
    grew = false;
    std::vector<Coords> cur(roots.begin(), roots.end());
    for (const auto& alpha : cur) {
      std::int64_t na = d.ip_dd(alpha, alpha);
      require(na > 0, Errc::NonDefiniteForm, "root of nonpositive norm");
      for (const auto& beta : cur) {
        std::int64_t num = 2 * d.ip_dd(beta, alpha);
        require(num % na == 0, Errc::InvalidRootSystem,
                "non-integral Cartan number for " + coords_to_string(beta));
        Coords img = beta - (num / na) * alpha;
        if (roots.insert(img).second) grew = true;
      }
    }
  }
  d.roots_.assign(roots.begin(), roots.end());

  // Compactness extends additively (mod 2) from the simple roots: the flags
  // define a Z/2 grading of the root lattice.
  auto coeffs_in_simple_basis = [&](const Coords& r) -> std::vector<Rat> {
    // solve S c = r where the columns of S are the simple roots
    std::size_t n = config.simple_roots.size();
    require(n == d.rank_, Errc::InvalidRootSystem,
            "need exactly rank simple roots");
    std::vector<std::vector<Rat>> m(d.rank_, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < d.rank_; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(config.simple_roots[j][i]);
      m[i][n] = Rat(r[i]);
    }
    // Gaussian elimination
    std::size_t row = 0;
    std::vector<int> pivot_col(d.rank_, -1);
    for (std::size_t col = 0; col < n && row < d.rank_; ++col) {
      std::size_t p = row;
      while (p < d.rank_ && m[p][col] == 0) ++p;
      if (p == d.rank_) continue;
      std::swap(m[p], m[row]);
      Rat inv = m[row][col];
      for (auto& x : m[row]) x /= inv;
      for (std::size_t i = 0; i < d.rank_; ++i) {
        if (i == row || m[i][col] == 0) continue;
        Rat f = m[i][col];
        for (std::size_t jj = 0; jj <= n; ++jj) m[i][jj] -= f * m[row][jj];
      }
      pivot_col[row] = static_cast<int>(col);
      ++row;
    }
    std::vector<Rat> c(n, Rat(0));
    for (std::size_t i = 0; i < row; ++i) c[static_cast<std::size_t>(pivot_col[i])] = m[i][n];
    return c;
  };
  d.compact_.resize(d.roots_.size());
  for (std::size_t i = 0; i < d.roots_.size(); ++i) {
    auto c = coeffs_in_simple_basis(d.roots_[i]);
    Int parity = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      require(is_integer(c[j]), Errc::InvalidRootSystem,
              "root outside the simple-root lattice");
      if (!config.compact_flags[j]) parity += numerator(c[j]);
    }
    d.compact_[i] = (parity % 2 == 0);
  }
  d.validate_and_finish();
  return d;
}

void RootDatum::validate_and_finish() {
  // Basic shape and symmetry of the form.
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      require(gram_[i][j] == gram_[j][i], Errc::NonDefiniteForm, "gram not symmetric");
  for (std::size_t k = 1; k <= rank_; ++k) {
    std::vector<std::vector<Int>> minor(k, std::vector<Int>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram_[i][j];
    require(det_int(minor) > 0, Errc::NonDefiniteForm, "gram not positive definite");
  }

  std::set<Coords> root_set(roots_.begin(), roots_.end());
  require(root_set.size() == roots_.size(), Errc::InvalidRootSystem, "duplicate roots");
  std::map<Coords, std::size_t> index_of;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    require(roots_[i].size() == rank_, Errc::InvalidRootSystem, "root rank mismatch");
    require(!is_zero(roots_[i]), Errc::InvalidRootSystem, "zero root");
    for (auto c : roots_[i])
      require(c % 2 == 0, Errc::InvalidRootSystem,
              "roots must be K-integral (even doubled coordinates)");
    index_of[roots_[i]] = i;
  }
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    auto it = index_of.find(-roots_[i]);
    require(it != index_of.end(), Errc::InvalidRootSystem, "roots not closed under negation");
    require(compact_[i] == compact_[it->second], Errc::InvalidRootSystem,
            "compact flags not negation-symmetric");
  }

  // Flags must define a symmetric-pair grading.
  for (std::size_t i = 0; i < roots_.size(); ++i)
    for (std::size_t j = 0; j < roots_.size(); ++j) {
      auto it = index_of.find(roots_[i] + roots_[j]);
      if (it == index_of.end()) continue;
      bool expect_compact = (compact_[i] == compact_[j]);
      require(compact_[it->second] == expect_compact, Errc::InvalidRootSystem,
              "compact flags are not a symmetric-pair grading");
    }

  dim_p_ = static_cast<std::size_t>(std::count(compact_.begin(), compact_.end(), false));
  require(dim_p_ % 2 == 0, Errc::OddNoncompactDimension, "dim p is odd");

  // Reflections must permute the root set with integral matrices.
  auto reflection = [&](const Coords& alpha) -> WeylGroupElement {
    WeylGroupElement w;
    w.rank = rank_;
    w.matrix.assign(rank_ * rank_, 0);
    std::int64_t na = ip_dd(alpha, alpha);
    for (std::size_t j = 0; j < rank_; ++j) {
      Coords e(rank_, 0);
      e[j] = 1;
      std::int64_t num = 2 * ip_dd(e, alpha);
      for (std::size_t i = 0; i < rank_; ++i) {
        std::int64_t val = (i == j ? na : 0) - num * alpha[i];
        require(val % na == 0, Errc::InvalidRootSystem,
                "reflection does not preserve the weight lattice");
        w.matrix[i * rank_ + j] = val / na;
      }
    }
    w.sign = -1;
    return w;
  };

  std::vector<WeylGroupElement> gens_full, gens_compact;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    auto w = reflection(roots_[i]);
    for (const auto& beta : roots_)
      require(root_set.count(w.apply(beta)) > 0, Errc::InvalidRootSystem,
              "reflection does not permute the roots");
    gens_full.push_back(w);
    if (compact_[i]) gens_compact.push_back(w);
  }

  auto generate = [&](const std::vector<WeylGroupElement>& gens) {
    WeylGroupElement id;
    id.rank = rank_;
    id.sign = 1;
    id.matrix.assign(rank_ * rank_, 0);
    for (std::size_t i = 0; i < rank_; ++i) id.matrix[i * rank_ + i] = 1;
    std::vector<WeylGroupElement> out{id};
    std::set<std::vector<std::int64_t>> seen{id.matrix};
    std::size_t head = 0;
    while (head < out.size()) {
      WeylGroupElement cur = out[head++];
      for (const auto& g : gens) {
        WeylGroupElement nxt;
        nxt.rank = rank_;
        nxt.sign = cur.sign * g.sign;
        nxt.matrix.assign(rank_ * rank_, 0);
        for (std::size_t i = 0; i < rank_; ++i)
          for (std::size_t k = 0; k < rank_; ++k) {
            if (g.matrix[i * rank_ + k] == 0) continue;
            for (std::size_t j = 0; j < rank_; ++j)
              nxt.matrix[i * rank_ + j] += g.matrix[i * rank_ + k] * cur.matrix[k * rank_ + j];
          }
        if (seen.insert(nxt.matrix).second) out.push_back(nxt);
      }
      require(out.size() < 100000, Errc::InvalidRootSystem, "Weyl group does not close");
    }
    return out;
  };
  weyl_full_ = generate(gens_full);
  weyl_compact_ = generate(gens_compact);

  // Chamber catalog: W-orbit of one positive system, ordered canonically
  // (descending by the descending-sorted root list), so index 0 is the
  // reference chamber b1.
  Coords reg(rank_, 0);
  for (std::int64_t base = 1;; ++base) {
    std::int64_t p = 1;
    for (std::size_t i = 0; i < rank_; ++i) {
      reg[i] = p;
      p *= (base + 1);
    }
    bool regular = true;
    for (const auto& r : roots_)
      if (ip_dd(reg, r) == 0) regular = false;
    if (regular) break;
    require(base < 1000, Errc::InvalidRootSystem, "no regular vector found");
  }
  std::vector<Coords> p0;
  for (const auto& r : roots_)
    if (ip_dd(reg, r) > 0) p0.push_back(r);
  require(2 * p0.size() == roots_.size(), Errc::InvalidRootSystem, "positive system size");

  std::map<std::vector<Coords>, std::size_t> chamber_index;  // sorted root list -> index
  std::vector<std::pair<std::vector<Coords>, WeylGroupElement>> raw;
  for (const auto& w : weyl_full_) {
    std::vector<Coords> img;
    img.reserve(p0.size());
    for (const auto& r : p0) img.push_back(w.apply(r));
    std::sort(img.begin(), img.end());
    if (chamber_index.emplace(img, raw.size()).second) raw.emplace_back(img, w);
  }
  require(raw.size() == weyl_full_.size(), Errc::InvalidRootSystem,
          "Weyl group does not act simply transitively on chambers");

  // Validate closure of each positive system.
  for (const auto& [positives, w] : raw) {
    std::set<Coords> pset(positives.begin(), positives.end());
    for (const auto& a : positives) {
      require(pset.count(-a) == 0, Errc::InvalidRootSystem, "positive system contains a pair");
      for (const auto& b : positives)
        if (root_set.count(a + b))
          require(pset.count(a + b) > 0, Errc::InvalidRootSystem,
                  "positive system not closed under addition");
    }
  }

  std::vector<std::size_t> order(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sorted_desc(raw[a].first) > sorted_desc(raw[b].first);
  });

  std::map<Coords, std::size_t> index_map;
  for (std::size_t i = 0; i < roots_.size(); ++i) index_map[roots_[i]] = i;
  chambers_.clear();
  std::vector<std::vector<Coords>> chamber_roots;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& [positives, w] = raw[order[pos]];
    Chamber ch;
    for (const auto& r : positives) ch.push_back(static_cast<int>(index_map.at(r)));
    std::sort(ch.begin(), ch.end());
    chambers_.push_back(ch);
    chamber_roots.push_back(positives);
  }

  // chamber_maps_[c] sends b1 onto chamber c.
  std::map<std::vector<Coords>, std::size_t> sorted_to_index;
  for (std::size_t c = 0; c < chamber_roots.size(); ++c) {
    auto key = chamber_roots[c];
    std::sort(key.begin(), key.end());
    sorted_to_index[key] = c;
  }
  chamber_maps_.assign(chambers_.size(), WeylGroupElement{});
  std::vector<bool> found(chambers_.size(), false);
  const auto& b1 = chamber_roots[0];
  for (const auto& w : weyl_full_) {
    std::vector<Coords> img;
    img.reserve(b1.size());
    for (const auto& r : b1) img.push_back(w.apply(r));
    std::sort(img.begin(), img.end());
    std::size_t c = sorted_to_index.at(img);
    if (!found[c]) {
      chamber_maps_[c] = w;
      found[c] = true;
    }
  }

  rk_positive_ = compact_positive_roots_of(0);
}

std::vector<Coords> RootDatum::positive_roots(std::size_t chamber) const {
  std::vector<Coords> out;
  for (int i : chambers_.at(chamber)) out.push_back(roots_[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<Coords> RootDatum::noncompact_positive_roots(std::size_t chamber) const {
  std::vector<Coords> out;
  for (int i : chambers_.at(chamber))
    if (!compact_[static_cast<std::size_t>(i)]) out.push_back(roots_[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<Coords> RootDatum::compact_positive_roots_of(std::size_t chamber) const {
  std::vector<Coords> out;
  for (int i : chambers_.at(chamber))
    if (compact_[static_cast<std::size_t>(i)]) out.push_back(roots_[static_cast<std::size_t>(i)]);
  return out;
}

namespace {
Coords half_sum(const std::vector<Coords>& roots, std::size_t rank) {
  Coords acc(rank, 0);
  for (const auto& r : roots) acc = acc + r;
  for (auto& c : acc) {
    if (c % 2 != 0) fail(Errc::InvalidRootSystem, "odd root sum");
    c /= 2;
  }
  return acc;
}
}  // namespace

Coords RootDatum::rho_dd(std::size_t chamber) const { return half_sum(positive_roots(chamber), rank_); }
Coords RootDatum::rho_c_dd(std::size_t chamber) const {
  return half_sum(compact_positive_roots_of(chamber), rank_);
}
Coords RootDatum::rho_n_dd(std::size_t chamber) const {
  return half_sum(noncompact_positive_roots(chamber), rank_);
}

const WeylGroupElement& RootDatum::chamber_map(std::size_t chamber) const {
  return chamber_maps_.at(chamber);
}

std::optional<std::size_t> RootDatum::chamber_of_positive_system(
    const std::vector<Coords>& positives) const {
  auto key = positives;
  std::sort(key.begin(), key.end());
  for (std::size_t c = 0; c < chambers_.size(); ++c) {
    auto cur = positive_roots(c);
    std::sort(cur.begin(), cur.end());
    if (cur == key) return c;
  }
  return std::nullopt;
}

std::size_t RootDatum::image_chamber(const WeylGroupElement& w, std::size_t chamber) const {
  std::vector<Coords> img;
  for (const auto& r : positive_roots(chamber)) img.push_back(w.apply(r));
  auto c = chamber_of_positive_system(img);
  require(c.has_value(), Errc::InvalidRootSystem, "Weyl image is not a chamber");
  return *c;
}

bool RootDatum::is_k_dominant(const Coords& v) const {
  for (const auto& a : rk_positive_)
    if (ip_dd(v, a) < 0) return false;
  return true;
}

bool RootDatum::is_k_regular(const Coords& v) const {
  for (const auto& a : rk_positive_)
    if (ip_dd(v, a) == 0) return false;
  return true;
}

std::pair<Coords, int> RootDatum::k_dominant_representative(const Coords& v) const {
  for (const auto& s : weyl_compact_) {
    Coords img = s.apply(v);
    if (is_k_dominant(img)) return {img, s.sign};
  }
  fail(Errc::InvalidRootSystem, "no dominant representative found");
}

bool RootDatum::genuine_class(const Coords& v) const {
  Coords rn = rho_n_dd(0);
  for (std::size_t i = 0; i < rank_; ++i)
    if (((v[i] - rn[i]) % 2 + 2) % 2 != 0) return false;
  return true;
}

bool RootDatum::valid_weight(const Weight& w) const {
  if (w.coords.size() != rank_) return false;
  bool even = true;
  for (auto c : w.coords)
    if (((c % 2) + 2) % 2 != 0) even = false;
  if (w.lattice == Lattice::K) return even;
  return even || genuine_class(w.coords);
}

}  // namespace dirac
