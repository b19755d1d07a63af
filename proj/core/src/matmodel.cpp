#include "msym/matmodel.hpp"

#include <cmath>

#include "json.hpp"

namespace msym {

namespace {

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

Matrix identity(std::size_t d) { return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); }
Matrix zero(std::size_t d) { return Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

struct Tracker {
  std::map<std::string, double>& dev;
  std::map<std::string, std::string>& worst;
  void note(const std::string& cls, double v, const std::string& what) {
    auto [it, inserted] = dev.try_emplace(cls, v);
    if (inserted || v > it->second) {
      it->second = v;
      worst[cls] = what;
    }
  }
};

}  // namespace

double norm(const Matrix& m) { return m.norm(); }

Matrix evaluate(const NCPolynomial& poly, const MatrixModel& m) {
  Matrix out = zero(m.dimension);
  for (const auto& [w, c] : poly.terms()) {
    Matrix term = identity(m.dimension);
    for (auto g : w) term = term * m.at(g);
    out += to_double(c) * term;
  }
  return out;
}

RelationViolationReport check_relations(const MatrixModel& m, const Presentation& p, double tol) {
  if (!(tol >= 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be non-negative");
  const auto& a = *p.alphabet();
  if (!m.alphabet || !(*m.alphabet == a) || m.generators.size() != a.generator_count())
    throw Error(ErrorKind::DimensionMismatch, "model does not match the presentation's generators");
  for (const auto& g : m.generators)
    if (static_cast<std::size_t>(g.rows()) != m.dimension || static_cast<std::size_t>(g.cols()) != m.dimension)
      throw Error(ErrorKind::DimensionMismatch, "generator matrix has the wrong size");

  RelationViolationReport r;
  r.tolerance = tol;
  Tracker t{r.deviation, r.worst};
  for (auto cls : {"self-adjoint", "idempotent", "vanishing", "unit-sum", "linear"}) r.deviation[cls] = 0;

  const auto n = a.index_count();
  for (GenId g = 0; g < a.generator_count(); ++g) {
    const auto& x = m.at(g);
    t.note("self-adjoint", norm(x.adjoint() - x), a.generator_name(g));
    t.note("idempotent", norm(x * x - x), a.generator_name(g));
  }
  auto product = [&](GenId g, GenId h) {
    t.note("vanishing", norm(m.at(g) * m.at(h)), a.generator_name(g) + "*" + a.generator_name(h));
  };
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        product(a.generator(k, x), a.generator(k, y));
        product(a.generator(x, k), a.generator(y, k));
      }
  for (const auto& v : p.vanishing()) product(v.left, v.right);
  const auto& rels = p.rules().linear_relations();
  for (std::size_t i = 0; i < rels.size(); ++i)
    t.note(i < 2 * n ? "unit-sum" : "linear", norm(evaluate(rels[i].poly, m)), rels[i].name);
  for (const auto& [cls, v] : r.deviation)
    if (v > tol) r.pass = false;
  return r;
}

MatrixModel character_to_model(const Character& c, const Presentation& p) {
  const auto& a = *p.alphabet();
  MatrixModel m{p.alphabet(), 1, {}};
  m.generators.reserve(a.generator_count());
  for (GenId g = 0; g < a.generator_count(); ++g) m.generators.push_back(c.value(a, g) ? identity(1) : zero(1));
  return m;
}

std::vector<Matrix> pauli_blocks(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Matrix p = zero(2), q(2, 2);
  p(0, 0) = 1;
  q << c * c, c * s, c * s, s * s;
  const Matrix one = identity(2), o = zero(2);
  return {p, one - p, o, o, one - p, p, o, o, o, o, q, one - q, o, o, one - q, q};
}

MatrixModel pauli_witness(const Multigraph& g, double theta) {
  if (g.vertex_count() != 4)
    throw Error(ErrorKind::UnsupportedUnderlyingGraph, "witness needs exactly four vertices");
  const auto m = g.multiplicity(0, 1);
  for (VertexIndex i = 0; i < 4; ++i)
    for (VertexIndex j = 0; j < 4; ++j) {
      const auto want = i == j ? 0 : m;
      if (g.multiplicity(i, j) != want)
        throw Error(ErrorKind::UnsupportedUnderlyingGraph,
                    "witness needs a loop-free complete underlying graph with uniform multiplicity");
    }
  if (m < 2) throw Error(ErrorKind::UnsupportedUnderlyingGraph, "witness needs multiplicity at least 2");

  const auto blocks = pauli_blocks(theta);
  const auto q = build_presentation(g);
  const auto& a = *q->alphabet();
  MatrixModel model{q->alphabet(), 2, {}};
  model.generators.reserve(a.generator_count());
  for (GenId gen = 0; gen < a.generator_count(); ++gen) {
    const auto& ks = a.index(a.row_of(gen));
    const auto& ir = a.index(a.col_of(gen));
    model.generators.push_back(ks.label == ir.label ? blocks[ks.vertex * 4 + ir.vertex] : zero(2));
  }
  return model;
}

EdgeMatrixDeviation evaluate_edge_matrix(const MatrixModel& m, const EdgeMatrix& em, const Multigraph& g) {
  const auto ne = em.size();
  if (!ne) return {};
  if (!em.entries.front().ambient() || !m.alphabet || !(*em.entries.front().ambient() == *m.alphabet))
    throw Error(ErrorKind::DimensionMismatch, "model and edge matrix use different generators");
  std::vector<Matrix> u;
  u.reserve(ne * ne);
  for (const auto& e : em.entries) u.push_back(evaluate(e, m));
  auto at = [&](std::size_t s, std::size_t t) -> const Matrix& { return u[s * ne + t]; };
  const Matrix one = identity(m.dimension);

  EdgeMatrixDeviation d;
  std::map<std::string, double> dev;
  std::map<std::string, std::string> worst;
  Tracker tr{dev, worst};
  auto name = [&](std::size_t k) { return g.edge_name(em.edges[k]); };
  for (std::size_t x = 0; x < ne; ++x)
    for (std::size_t y = 0; y < ne; ++y) {
      Matrix rows = zero(m.dimension), cols = zero(m.dimension), crows = zero(m.dimension), ccols = zero(m.dimension);
      for (std::size_t k = 0; k < ne; ++k) {
        rows += at(x, k) * at(y, k).adjoint();    // U U*
        cols += at(k, x).adjoint() * at(k, y);    // U* U
        crows += at(x, k).adjoint() * at(y, k);   // conj(U) conj(U)*
        ccols += at(k, x) * at(k, y).adjoint();   // conj(U)* conj(U)
      }
      const Matrix delta = x == y ? one : zero(m.dimension);
      const auto tag = name(x) + "," + name(y);
      tr.note("b", norm(rows - delta), "UU* " + tag);
      tr.note("b", norm(cols - delta), "U*U " + tag);
      tr.note("b", norm(crows - delta), "conj UU* " + tag);
      tr.note("b", norm(ccols - delta), "conj U*U " + tag);
    }
  for (std::size_t x = 0; x < ne; ++x) {
    Matrix row = -one, col = -one;
    for (std::size_t y = 0; y < ne; ++y) {
      const auto& e = at(x, y);
      const auto tag = "u[" + name(x) + "|" + name(y) + "]";
      tr.note("m", norm(e * e - e), "idempotent " + tag);
      tr.note("m", norm(e.adjoint() - e), "self-adjoint " + tag);
      row += at(x, y);
      col += at(y, x);
    }
    tr.note("m", norm(row), "row sum " + name(x));
    tr.note("m", norm(col), "column sum " + name(x));
  }
  d.biunitary = dev["b"];
  d.magic = dev["m"];
  d.worst_biunitary = worst["b"];
  d.worst_magic = worst["m"];
  return d;
}

MatrixModel combine(const std::vector<MatrixModel>& models, CombineMode mode) {
  if (models.empty()) throw Error(ErrorKind::IncompatibleModels, "nothing to combine");
  for (const auto& m : models)
    if (!m.alphabet || !(*m.alphabet == *models.front().alphabet))
      throw Error(ErrorKind::IncompatibleModels, "models use different presentations");
  const auto& a = *models.front().alphabet;
  const auto count = a.generator_count();
  MatrixModel acc = models.front();
  for (std::size_t k = 1; k < models.size(); ++k) {
    const auto& b = models[k];
    MatrixModel next{acc.alphabet, 0, {}};
    if (mode == CombineMode::DirectSum) {
      next.dimension = acc.dimension + b.dimension;
      for (GenId g = 0; g < count; ++g) {
        Matrix x = zero(next.dimension);
        const auto d1 = static_cast<Eigen::Index>(acc.dimension), d2 = static_cast<Eigen::Index>(b.dimension);
        x.topLeftCorner(d1, d1) = acc.at(g);
        x.bottomRightCorner(d2, d2) = b.at(g);
        next.generators.push_back(std::move(x));
      }
    } else {
      next.dimension = acc.dimension * b.dimension;
      const auto n = a.index_count();
      for (GenId g = 0; g < count; ++g) {
        const auto x = a.row_of(g), y = a.col_of(g);
        Matrix sum = zero(next.dimension);
        for (std::size_t z = 0; z < n; ++z) sum += kron(acc.at(a.generator(x, z)), b.at(a.generator(z, y)));
        next.generators.push_back(std::move(sum));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::string model_to_json(const MatrixModel& m) {
  nlohmann::json j;
  j["dimension"] = m.dimension;
  nlohmann::json gens = nlohmann::json::object();
  for (GenId g = 0; g < m.generators.size(); ++g) {
    const auto& x = m.at(g);
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c) entries.push_back({x(r, c).real(), x(r, c).imag()});
    gens[m.alphabet->generator_name(g)] = std::move(entries);
  }
  j["generators"] = std::move(gens);
  return j.dump();
}

MatrixModel model_from_json(const std::string& text, AlphabetPtr alphabet) {
  try {
    const auto j = nlohmann::json::parse(text);
    MatrixModel m{alphabet, j.at("dimension").get<std::size_t>(), {}};
    m.generators.assign(alphabet->generator_count(), zero(m.dimension));
    const auto d = static_cast<Eigen::Index>(m.dimension);
    for (const auto& [name, entries] : j.at("generators").items()) {
      const auto g = alphabet->parse_generator(name);
      if (entries.size() != m.dimension * m.dimension)
        throw Error(ErrorKind::DimensionMismatch, "matrix for " + name + " has the wrong size");
      for (Eigen::Index k = 0; k < d * d; ++k) {
        const auto& e = entries.at(static_cast<std::size_t>(k));
        m.generators[g](k / d, k % d) = {e.at(0).get<double>(), e.at(1).get<double>()};
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("model: ") + e.what());
  }
}

}  // namespace msym
