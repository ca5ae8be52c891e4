/**
 * @file json_io.hpp
 * @brief Deterministic JSON encodings of the library's value types.
 *
 * Laurent polynomials serialize as {"exp": "coeff", ...} with exponent keys
 * in ascending numeric order and coefficients as decimal strings (arbitrary
 * precision); rational functions as {"num": ..., "den": ...}.  Every array
 * is emitted in a fixed, documented order, so equal inputs yield
 * byte-identical documents.
 */
#ifndef QAB_JSON_IO_HH
#define QAB_JSON_IO_HH

#include "qab/decompose.hpp"
#include "qab/quiver.hpp"

#include <json.hpp>

namespace qab {

using Json = nlohmann::ordered_json;

inline Json to_json(const LaurentPoly& p) {
  Json j = Json::object();
  for (const auto& [e, c] : p.coeffs()) j[std::to_string(e)] = c.str();
  return j;
}

inline LaurentPoly laurent_from_json(const Json& j) {
  LaurentPoly p;
  for (auto it = j.begin(); it != j.end(); ++it)
    p.add_term(std::stoi(it.key()), BigInt(it.value().get<std::string>()));
  return p;
}

inline Json to_json(const RatFn& f) {
  return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RatFn ratfn_from_json(const Json& j) {
  return RatFn(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

inline Json to_json(const Root& r) {
  Json j = Json::array();
  for (size_t i = 0; i < r.size(); ++i) j.push_back(r[i]);
  return j;
}

inline Json to_json(const Partition& p) {
  Json j = Json::array();
  for (int part : p.parts) j.push_back(part);
  return j;
}

inline Json to_json(const PBWIndex& c) {
  Json plus = Json::array();
  for (auto it = c.plus.rbegin(); it != c.plus.rend(); ++it)
    plus.push_back(Json::array({it->first, it->second}));
  Json zero = Json::object();
  for (const auto& [v, la] : c.zero) zero[std::to_string(v)] = to_json(la);
  Json minus = Json::array();
  for (const auto& [k, mult] : c.minus) minus.push_back(Json::array({k, mult}));
  return Json{{"plus", plus}, {"zero", zero}, {"minus", minus}};
}

inline Json to_json(const MonomialWord& w) {
  Json j = Json::array();
  for (auto [v, p] : w.letters) j.push_back(Json::array({v, p}));
  return j;
}

inline Json to_json(const Matrix<RatFn>& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const Matrix<LaurentPoly>& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix<RatFn> ratfn_matrix_from_json(const Json& j) {
  size_t rows = j.size();
  size_t cols = rows ? j.at(0).size() : 0;
  Matrix<RatFn> m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t c = 0; c < cols; ++c) m.at(i, c) = ratfn_from_json(j.at(i).at(c));
  return m;
}

inline Json to_json(const IndexFiber& fiber) {
  Json idx = Json::array();
  for (const auto& c : fiber.indices) idx.push_back(to_json(c));
  Json cls = Json::array();
  for (const auto& [a, b] : fiber.classes) cls.push_back(Json::array({a, b}));
  return Json{{"indices", idx}, {"classes", cls}};
}

inline Json to_json(const StratumData& s, const CartanDatum& d) {
  auto side = [](const std::vector<std::pair<Root, int>>& y) {
    Json arr = Json::array();
    for (const auto& [beta, c] : y)
      arr.push_back(Json{{"root", to_json(beta)}, {"mult", c}});
    return arr;
  };
  return Json{{"Y_P", side(s.Y_P)},          {"Y_R", side(s.Y_R)},
              {"Y_I", side(s.Y_I)},          {"l", s.l},
              {"l_prime", s.l_prime},        {"lambda", to_json(s.lambda)},
              {"dim", to_json(s.dimension(d))}};
}

}  // namespace qab

#endif  // QAB_JSON_IO_HH
