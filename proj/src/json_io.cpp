#include "dirac/json_io.hpp"

#include <fstream>

namespace dirac {

Json coords_to_json(const Coords& c) {
  Json a = Json::array();
  for (auto v : c) a.push_back(v);
  return a;
}

Coords coords_from_json(const Json& j) {
  require(j.is_array(), Errc::DatumLoadError, "expected a coordinate array");
  Coords c;
  for (const auto& v : j) c.push_back(v.get<std::int64_t>());
  return c;
}

Json virtual_character_to_json(const VirtualCharacter& v) {
  Json terms = Json::array();
  for (const auto& [w, c] : v.terms)  // std::map: already lexicographic
    terms.push_back({{"weight", coords_to_json(w)}, {"coeff", c}});
  return Json{{"cover", lattice_name(v.lattice)}, {"terms", terms}};
}

VirtualCharacter virtual_character_from_json(const Json& j) {
  VirtualCharacter v;
  std::string cover = j.at("cover").get<std::string>();
  require(cover == "K" || cover == "Ktilde", Errc::DatumLoadError, "bad cover tag");
  v.lattice = cover == "K" ? Lattice::K : Lattice::Ktilde;
  for (const auto& t : j.at("terms"))
    v.add_term(coords_from_json(t.at("weight")), t.at("coeff").get<std::int64_t>());
  return v;
}

Json root_datum_to_json(const RootDatum& d) {
  Json roots = Json::array();
  for (std::size_t i = 0; i < d.roots().size(); ++i)
    roots.push_back({{"root", coords_to_json(d.roots()[i])},
                     {"compact", d.is_compact_root(static_cast<int>(i))}});
  Json gram = Json::array();
  for (const auto& row : d.gram()) {
    Json r = Json::array();
    for (auto v : row) r.push_back(v);
    gram.push_back(r);
  }
  Json chambers = Json::array();
  for (std::size_t c = 0; c < d.chambers().size(); ++c) {
    Json ch = Json::array();
    for (const auto& r : d.positive_roots(c)) ch.push_back(coords_to_json(r));
    chambers.push_back(ch);
  }
  return Json{{"name", d.name()},
              {"rank", d.rank()},
              {"dim_p", d.dim_p()},
              {"roots", roots},
              {"gram", gram},
              {"chambers", chambers},
              {"rho", coords_to_json(d.rho_dd(0))},
              {"rho_c", coords_to_json(d.rho_c_dd(0))},
              {"rho_n", coords_to_json(d.rho_n_dd(0))},
              {"weyl_order", d.weyl(WhichWeyl::Full).size()},
              {"weyl_k_order", d.weyl(WhichWeyl::Compact).size()}};
}

RootDatum root_datum_from_json(const Json& j) {
  if (j.contains("preset")) return RootDatum::preset(j.at("preset").get<std::string>());
  RootDatumConfig cfg;
  cfg.rank = j.at("rank").get<int>();
  for (const auto& r : j.at("simple_roots")) cfg.simple_roots.push_back(coords_from_json(r));
  for (const auto& row : j.at("gram")) {
    std::vector<std::int64_t> g;
    for (const auto& v : row) g.push_back(v.get<std::int64_t>());
    cfg.gram.push_back(g);
  }
  for (const auto& f : j.at("compact_flags")) cfg.compact_flags.push_back(f.get<bool>());
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
  return RootDatum::build(cfg);
}

RootDatum load_root_datum(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::DatumLoadError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::DatumLoadError, std::string("bad JSON: ") + e.what());
  }
  return root_datum_from_json(j);
}

Json exact_matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m.at(i, j)));
    rows.push_back(r);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

ExactMatrix exact_matrix_from_json(const Json& j) {
  if (j.is_array()) {  // plain array-of-arrays form
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      require(j.at(i).size() == cols, Errc::DatumLoadError, "ragged matrix");
      for (std::size_t c = 0; c < cols; ++c) {
        const auto& cell = j.at(i).at(c);
        m.at(i, c) = cell.is_string() ? rat_from_string(cell.get<std::string>())
                                      : Rat(cell.get<std::int64_t>());
      }
    }
    return m;
  }
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  ExactMatrix m(rows, cols);
  const auto& entries = j.at("entries");
  require(entries.size() == rows, Errc::DatumLoadError, "matrix row count mismatch");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& cell = entries.at(i).at(c);
      m.at(i, c) = cell.is_string() ? rat_from_string(cell.get<std::string>())
                                    : Rat(cell.get<std::int64_t>());
    }
  return m;
}

namespace {
std::string coords_key(const Coords& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s;
}

Coords coords_from_key(const std::string& s) {
  Coords c;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    c.push_back(std::stoll(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return c;
}
}  // namespace

Json module_to_json(const MatrixHCModule& m) {
  Json weights = Json::array();
  for (const auto& w : m.weights) weights.push_back(coords_to_json(w));
  Json actions = Json::object();
  for (const auto& [root, mat] : m.root_actions)
    actions[coords_key(root)] = exact_matrix_to_json(mat);
  return Json{{"name", m.name},
              {"dimension", m.dimension},
              {"weights", weights},
              {"infinitesimal_character", coords_to_json(m.infinitesimal_character.coords)},
              {"actions", actions}};
}

MatrixHCModule module_from_json(const Json& j) {
  MatrixHCModule m;
  m.name = j.value("name", std::string("module"));
  m.dimension = j.at("dimension").get<std::size_t>();
  for (const auto& w : j.at("weights")) m.weights.push_back(coords_from_json(w));
  m.infinitesimal_character =
      Weight(coords_from_json(j.at("infinitesimal_character")), Lattice::Ktilde);
  for (const auto& [key, mat] : j.at("actions").items())
    m.root_actions.emplace(coords_from_key(key), exact_matrix_from_json(mat));
  return m;
}

MatrixHCModule load_module(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::DatumLoadError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::DatumLoadError, std::string("bad JSON: ") + e.what());
  }
  return module_from_json(j);
}

Json dirac_vs_elliptic_to_json(const DiracVsEllipticReport& rep, const RootDatum& datum) {
  Json params = Json::array();
  for (const auto& p : rep.params)
    params.push_back({{"chi", coords_to_json(p.chi.coords)},
                      {"chamber", p.chamber},
                      {"kind", p.kind == ParamKind::DiscreteSeries ? "ds" : "limit"}});
  Json gd = Json::array(), ge = Json::array();
  for (const auto& row : rep.gram_dirac) {
    Json r = Json::array();
    for (auto v : row) r.push_back(v);
    gd.push_back(r);
  }
  for (const auto& row : rep.gram_elliptic) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    ge.push_back(r);
  }
  return Json{{"group", datum.name()},
              {"params", params},
              {"gram_dirac", gd},
              {"gram_elliptic", ge},
              {"equal", rep.equal}};
}

}  // namespace dirac
