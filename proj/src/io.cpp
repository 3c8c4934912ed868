#include "qsub/io.hpp"

namespace qsub {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a non-empty list of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.front().size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (Index k = 0; k < cols; ++k) {
      const Json& entry = row[k];
      if (entry.is_number()) {
        m(i, k) = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2) {
        m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw std::invalid_argument("matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Json channel_to_json(const QuantumChannel& t) {
  Json kraus = Json::array();
  for (const auto& k : t.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"d_in", t.d_in()}, {"d_out", t.d_out()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const Json& j) {
  const Index d_in = j.at("d_in").get<Index>();
  const Index d_out = j.at("d_out").get<Index>();
  std::vector<Matrix> kraus;
  for (const auto& k : j.at("kraus")) {
    kraus.push_back(matrix_from_json(k));
    if (kraus.back().rows() != d_out || kraus.back().cols() != d_in)
      throw DimensionError("channel: Kraus operator does not match d_in, d_out");
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

Json liouvillian_to_json(const Liouvillian& l) {
  Json ops = Json::array();
  for (const auto& a : l.jump_operators()) ops.push_back(matrix_to_json(a));
  return {{"d", l.dim()}, {"H", matrix_to_json(l.hamiltonian())}, {"lindblad_ops", std::move(ops)}};
}

Liouvillian liouvillian_from_json(const Json& j) {
  const Index d = j.at("d").get<Index>();
  Matrix h = matrix_from_json(j.at("H"));
  if (h.rows() != d || h.cols() != d) throw DimensionError("liouvillian: H does not match d");
  std::vector<Matrix> ops;
  for (const auto& a : j.at("lindblad_ops")) {
    ops.push_back(matrix_from_json(a));
    if (ops.back().rows() != d || ops.back().cols() != d)
      throw DimensionError("liouvillian: jump operator does not match d");
  }
  return Liouvillian::build(std::move(h), std::move(ops));
}

Json bound_report_to_json(const BoundReport& b) {
  Json out{{"name", b.name}, {"value", b.value}, {"parameters", b.parameters}};
  out["certificate"] = b.certificate ? Json(*b.certificate) : Json(nullptr);
  Json scan = Json::array();
  for (const auto& [k, v] : b.scan) scan.push_back({{"k", k}, {"value", v}});
  out["scan"] = std::move(scan);
  return out;
}

BoundReport bound_report_from_json(const Json& j) {
  BoundReport b;
  b.name = j.at("name").get<std::string>();
  b.value = j.at("value").get<double>();
  b.parameters = j.value("parameters", std::map<std::string, double>{});
  if (j.contains("certificate") && !j["certificate"].is_null()) b.certificate = j["certificate"].get<std::string>();
  if (j.contains("scan"))
    for (const auto& e : j["scan"]) b.scan.emplace_back(e.at("k").get<Index>(), e.at("value").get<double>());
  return b;
}

Json decoupling_run_to_json(const DecouplingRun& run) {
  return {{"channel", run.channel},
          {"d_reference", run.d_reference},
          {"d_input", run.embedding.d_from()},
          {"d_code", run.embedding.d_to()},
          {"n_samples", run.n_samples()},
          {"mean", run.mean},
          {"min", run.min},
          {"max", run.max},
          {"standard_error", run.standard_error()},
          {"bound", run.bound},
          {"samples", run.samples}};
}

}  // namespace qsub
