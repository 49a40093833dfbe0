#include "infodyn/json_io.hpp"

#include <algorithm>
#include <string>

#include "infodyn/errors.hpp"

namespace infodyn::json_io {

json to_json(cplx z) {
  return json::array({z.real(), z.imag()});
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const RealMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidArgument("expected a complex number [re, im], got " + j.dump());
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("expected a non-empty array of complex numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("expected a matrix as a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw InvalidArgument("matrix rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InvalidArgument("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

RealMatrix real_matrix_from_json(const json& j) {
  const Matrix m = matrix_from_json(j);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw InvalidArgument("expected a real matrix");
  return m.real();
}

DensityOperator density_from_json(const json& j) {
  return DensityOperator(matrix_from_json(j));
}

void require_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument(std::string(what) + ": unknown field '" + key + "'");
    }
  }
}

const json& member(const json& j, std::string_view key, std::string_view what) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw InvalidArgument(std::string(what) + ": missing field '" + std::string(key) + "'");
  return *it;
}

Channel channel_from_json(const json& j) {
  constexpr std::string_view what = "channel";
  if (!j.is_object()) throw InvalidArgument("channel: expected a JSON object");
  const auto& kind_field = member(j, "kind", what);
  if (!kind_field.is_string()) throw InvalidArgument("channel: 'kind' must be a string");
  const auto kind = kind_field.get<std::string>();
  if (kind == "ktau" || kind == "ktau_hat") {
    require_keys(j, {"kind", "matrix"}, what);
    TraceClassWeight tau(matrix_from_json(member(j, "matrix", what)));
    return kind == "ktau" ? Channel::ktau(std::move(tau)) : Channel::ktau_hat(std::move(tau));
  }
  if (kind == "unitary") {
    require_keys(j, {"kind", "matrix"}, what);
    return Channel::unitary(matrix_from_json(member(j, "matrix", what)));
  }
  if (kind == "kraus") {
    require_keys(j, {"kind", "kraus_ops"}, what);
    const auto& ops = member(j, "kraus_ops", what);
    if (!ops.is_array() || ops.empty()) throw InvalidArgument("channel: 'kraus_ops' must be a non-empty array");
    std::vector<Matrix> mats;
    for (const auto& op : ops) mats.push_back(matrix_from_json(op));
    return Channel::kraus(std::move(mats));
  }
  if (kind == "stochastic") {
    require_keys(j, {"kind", "P"}, what);
    return Channel::stochastic(real_matrix_from_json(member(j, "P", what)));
  }
  throw InvalidArgument("channel: unknown kind '" + kind + "'");
}

json channel_to_json(const Channel& channel) {
  switch (channel.kind()) {
    case Channel::Kind::ktau:
    case Channel::Kind::ktau_hat:
    case Channel::Kind::unitary:
      return {{"kind", to_string(channel.kind())}, {"matrix", to_json(channel.matrix())}};
    case Channel::Kind::kraus: {
      json ops = json::array();
      for (const auto& a : channel.kraus_ops()) ops.push_back(to_json(a));
      return {{"kind", "kraus"}, {"kraus_ops", std::move(ops)}};
    }
    case Channel::Kind::stochastic:
      return {{"kind", "stochastic"}, {"P", to_json(channel.stochastic_matrix())}};
    case Channel::Kind::linear_map:
      break;
  }
  throw InvalidArgument("channel_to_json: linear_map channels have no descriptor");
}

json report_to_json(const ChaosDegreeReport& report, LogBase base) {
  return {
      {"D", in_base(report.D, base)},
      {"T", in_base(report.T, base)},
      {"S_out", in_base(report.S_out, base)},
      {"degenerate", report.degenerate},
      {"restarts", report.restarts},
      {"seed", report.seed},
      {"best", in_base(report.best, base)},
      {"worst", in_base(report.worst, base)},
      {"log_base", base == LogBase::two ? "2" : "e"},
  };
}

}  // namespace infodyn::json_io
