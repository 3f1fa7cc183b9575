#include "crlab/serialize.hpp"

#include <variant>

namespace crlab {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const KernelModel& model) {
  Json j;
  j["kind"] = model.name();
  if (const auto* m = model.get<DruryArveson>()) {
    j["d"] = m->d;
  } else if (const auto* m = model.get<PowerKernel>()) {
    j["d"] = m->d;
    j["a"] = m->a;
  } else if (const auto* m = model.get<NormalizedCP>()) {
    j["ids"] = m->ids;
    Json b = Json::array();
    for (const auto& v : m->b) b.push_back(to_json(v));
    j["b"] = std::move(b);
    j["basepoint"] = m->basepoint;
  } else if (const auto* m = model.get<PairKernel>()) {
    j["source"] = to_json(*m->source);
    j["target"] = to_json(*m->target);
    Json f = Json::array();
    for (const auto& g : m->factor) f.push_back(to_json(g));
    j["factor"] = std::move(f);
  } else if (const auto* m = model.get<RescaledKernel>()) {
    j["base"] = to_json(*m->base);
    j["anchor"] = to_json(m->anchor);
  }
  return j;
}

Json to_json(const FiniteKernelSpace& space) {
  Json j;
  j["model"] = to_json(space.model());
  Json pts = Json::array();
  for (const auto& p : space.points()) pts.push_back(to_json(p.coords()));
  j["points"] = std::move(pts);
  if (!space.ids().empty()) j["ids"] = space.ids();
  return j;
}

Json to_json(const MultiplierTable& table) {
  Json j;
  j["space"] = table.space_id();
  j["q"] = table.q();
  j["p"] = table.p();
  Json vals = Json::array();
  for (const auto& v : table.values()) vals.push_back(to_json(v));
  j["values"] = std::move(vals);
  return j;
}

Json to_json(const BallAutomorphism& theta) {
  return Json{{"a", to_json(theta.a())}, {"unitary", to_json(theta.unitary())}};
}

Json to_json(const Colligation& c) {
  return Json{{"p", c.p},
              {"e", c.e},
              {"r", c.r},
              {"d", c.d},
              {"alpha", to_json(c.alpha)},
              {"beta", to_json(c.beta)},
              {"gamma", to_json(c.gamma)},
              {"delta", to_json(c.delta)}};
}

Json to_json(const PsdReport& r) {
  return Json{{"min_eigenvalue", r.min_eigenvalue},
              {"max_eigenvalue", r.max_eigenvalue},
              {"tolerance", r.tolerance_used},
              {"verdict", r.verdict}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError("expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
  const auto rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j[i].size()) != cols) throw InputError("matrix rows have different lengths");
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a vector");
  ComplexVector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

KernelModelPtr model_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "drury_arveson") return make_model(DruryArveson{j.at("d").get<Index>()});
  if (kind == "power") return make_model(PowerKernel{j.at("d").get<Index>(), j.at("a").get<double>()});
  if (kind == "normalized_cp") {
    NormalizedCP m;
    m.ids = j.at("ids").get<std::vector<std::string>>();
    for (const auto& v : j.at("b")) m.b.push_back(vector_from_json(v));
    m.basepoint = j.value("basepoint", std::string{});
    return make_model(std::move(m));
  }
  if (kind == "pair") {
    PairKernel m{model_from_json(j.at("source")), model_from_json(j.at("target")), {}};
    if (j.contains("factor"))
      for (const auto& g : j.at("factor")) m.factor.push_back(matrix_from_json(g));
    return make_model(std::move(m));
  }
  if (kind == "rescaled")
    return make_model(RescaledKernel{model_from_json(j.at("base")), vector_from_json(j.at("anchor"))});
  throw InputError("unknown kernel kind '" + kind + "'");
}

FiniteKernelSpace space_from_json(const Json& j) {
  std::vector<BallPoint> pts;
  for (const auto& p : j.at("points")) pts.emplace_back(vector_from_json(p));
  std::vector<std::string> ids;
  if (j.contains("ids")) ids = j.at("ids").get<std::vector<std::string>>();
  return FiniteKernelSpace(model_from_json(j.at("model")), std::move(pts), std::move(ids));
}

MultiplierTable table_from_json(const Json& j) {
  std::vector<ComplexMatrix> vals;
  for (const auto& v : j.at("values")) vals.push_back(matrix_from_json(v));
  return MultiplierTable(j.at("q").get<Index>(), j.at("p").get<Index>(), std::move(vals),
                         j.value("space", std::string{}));
}

}  // namespace crlab
