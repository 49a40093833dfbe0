#pragma once

#include <initializer_list>
#include <string_view>

#include <nlohmann/json.hpp>

#include "infodyn/channel.hpp"
#include "infodyn/density.hpp"
#include "infodyn/hilbert.hpp"
#include "infodyn/metrics.hpp"

namespace infodyn::json_io {

using nlohmann::json;

// Complex numbers are two-element arrays [re, im]; matrices are row-major
// arrays of rows. Plain numbers are accepted on input as real values.
[[nodiscard]] json to_json(cplx z);
[[nodiscard]] json to_json(const Vector& v);
[[nodiscard]] json to_json(const Matrix& m);
[[nodiscard]] json to_json(const RealMatrix& m);

[[nodiscard]] cplx complex_from_json(const json& j);
[[nodiscard]] Vector vector_from_json(const json& j);
[[nodiscard]] Matrix matrix_from_json(const json& j);
[[nodiscard]] RealMatrix real_matrix_from_json(const json& j);
[[nodiscard]] DensityOperator density_from_json(const json& j);

/// {"kind": "ktau"|"ktau_hat"|"unitary"|"kraus"|"stochastic", ...} with
/// "matrix" (ktau, ktau_hat, unitary), "kraus_ops" (kraus) or "P" (stochastic).
[[nodiscard]] Channel channel_from_json(const json& j);
[[nodiscard]] json channel_to_json(const Channel& channel);

/// {D, T, S_out, degenerate, restarts, seed, best, worst}; values in `base`.
[[nodiscard]] json report_to_json(const ChaosDegreeReport& report, LogBase base = LogBase::natural);

/// Throws InvalidArgument when `j` is not an object or carries a key outside `allowed`.
void require_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what);
/// Fetches a required member, throwing InvalidArgument when absent.
[[nodiscard]] const json& member(const json& j, std::string_view key, std::string_view what);

}  // namespace infodyn::json_io
