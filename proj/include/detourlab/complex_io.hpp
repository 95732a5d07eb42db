#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "detourlab/chain_complex.hpp"

namespace detourlab {

using json = nlohmann::ordered_json;

namespace internal {

template <class S>
S scalar_from_string(const std::string& s) {
  if constexpr (scalar_traits<S>::is_exact) {
    return Rational(s);
  } else {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
      throw std::invalid_argument("complex file: bad numeric value '" + s + "'");
    return v;
  }
}

template <class S>
json matrix_to_triplets(const Mat<S>& m) {
  json list = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!(m(r, c) == S(0)))
        list.push_back(json::array(
            {r, c, scalar_traits<S>::to_string(m(r, c))}));
  return list;
}

template <class S>
Mat<S> matrix_from_triplets(const json& list, Eigen::Index rows, Eigen::Index cols) {
  Mat<S> m = Mat<S>::Zero(rows, cols);
  for (const auto& t : list) {
    if (!t.is_array() || t.size() != 3)
      throw std::invalid_argument("complex file: triplet must be [row, col, value]");
    const Eigen::Index r = t[0].get<Eigen::Index>();
    const Eigen::Index c = t[1].get<Eigen::Index>();
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::invalid_argument("complex file: triplet index out of range");
    if (t[2].is_string())
      m(r, c) = scalar_from_string<S>(t[2].template get<std::string>());
    else
      m(r, c) = S(t[2].template get<double>());
  }
  return m;
}

}  // namespace internal

/// Serialise a complex: dimensions, per-degree differential triplets with
/// decimal-string values, optional Grams, and generator metadata.
template <class S>
json complex_to_json(const ChainComplex<S>& cx, json meta = json::object()) {
  json j;
  j["n"] = cx.n;
  j["dims"] = cx.dims;
  json dlist = json::array();
  for (int k = 0; k < cx.n; ++k) dlist.push_back(internal::matrix_to_triplets<S>(cx.d[k]));
  j["d"] = std::move(dlist);
  if (cx.has_gram()) {
    json glist = json::array();
    for (int k = 0; k <= cx.n; ++k) glist.push_back(internal::matrix_to_triplets<S>(cx.gram[k]));
    j["gram"] = std::move(glist);
  }
  j["meta"] = std::move(meta);
  return j;
}

template <class S>
ChainComplex<S> complex_from_json(const json& j) {
  ChainComplex<S> cx;
  if (!j.contains("n") || !j.contains("dims") || !j.contains("d"))
    throw std::invalid_argument("complex file: missing n/dims/d");
  cx.n = j.at("n").get<int>();
  cx.dims = j.at("dims").get<std::vector<int>>();
  if (cx.n < 0 || cx.dims.size() != static_cast<std::size_t>(cx.n) + 1)
    throw std::invalid_argument("complex file: dims must have n+1 entries");
  const json& dlist = j.at("d");
  if (!dlist.is_array() || dlist.size() != static_cast<std::size_t>(cx.n))
    throw std::invalid_argument("complex file: d must have n triplet lists");
  cx.d.resize(cx.n);
  for (int k = 0; k < cx.n; ++k)
    cx.d[k] = internal::matrix_from_triplets<S>(dlist[k], cx.dims[k + 1], cx.dims[k]);
  if (j.contains("gram") && !j.at("gram").is_null()) {
    const json& glist = j.at("gram");
    if (!glist.is_array() || glist.size() != static_cast<std::size_t>(cx.n) + 1)
      throw std::invalid_argument("complex file: gram must have n+1 triplet lists");
    cx.gram.resize(cx.n + 1);
    for (int k = 0; k <= cx.n; ++k)
      cx.gram[k] = internal::matrix_from_triplets<S>(glist[k], cx.dims[k], cx.dims[k]);
  }
  return cx;
}

template <class S>
void write_complex(const std::string& path, const ChainComplex<S>& cx,
                   json meta = json::object()) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << complex_to_json(cx, std::move(meta)).dump(2) << "\n";
}

template <class S>
ChainComplex<S> read_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  json j;
  in >> j;
  return complex_from_json<S>(j);
}

}  // namespace detourlab
