#pragma once

// JSON views of the core objects.  Arbitrary-precision values go out as
// decimal strings so nothing is clipped to double by other tools; the
// parsers accept plain JSON integers as well.  Structural sizes (ranks,
// levels, exponents) stay numeric.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bw/barnes_wall.hpp"
#include "bw/dyadic.hpp"
#include "bw/errors.hpp"
#include "bw/frame.hpp"
#include "bw/group_action.hpp"
#include "bw/int_mat.hpp"
#include "bw/lattice.hpp"
#include "bw/two_four.hpp"
#include "bw/uniqueness.hpp"

namespace bw {

using Json = nlohmann::json;

inline Json to_json(const IntMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j).get_str());
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json to_json(const DyadicMat& m) {
  return Json{{"num", to_json(m.num())}, {"log2_den", m.k()}};
}

inline Json to_json(const FramePtr& f) {
  return Json{{"rank", f->rank}, {"gram", to_json(f->gram)}};
}

inline Json to_json(const Lattice& l) {
  return Json{{"frame", to_json(l.frame())}, {"basis", to_json(l.basis())}};
}

inline Json to_json(const FrameMap& g) { return to_json(g.mat); }

inline Json to_json(const DihedralAction& a) {
  return Json{{"frame", to_json(a.lat.frame())},
              {"basis", to_json(a.lat.basis())},
              {"t", to_json(a.t)},
              {"u", to_json(a.u)}};
}

inline Json to_json(const BWTower& tw) {
  Json j{{"d", tw.d},
         {"s_flag", tw.s_flag},
         {"scale", tw.scale.get_str()},
         {"frame", to_json(tw.frame)},
         {"basis", to_json(tw.L.basis())},
         {"half1", to_json(tw.L1.rows_in_parent())},
         {"half2", to_json(tw.L2.rows_in_parent())},
         {"t", to_json(tw.t)},
         {"f", to_json(tw.f)},
         {"sub_four", to_json(tw.sub_four)}};
  j["child"] = tw.child ? to_json(*tw.child) : Json();
  return j;
}

inline const char* status_name(XStatus s) {
  switch (s) {
    case XStatus::pass:
      return "pass";
    case XStatus::fail:
      return "fail";
    default:
      return "budget";
  }
}

inline Json to_json(const XReport& r) {
  Json rows = Json::array();
  for (const XRow& x : r.rows)
    rows.push_back(Json{{"clause", std::string(1, x.clause)},
                        {"id", x.id},
                        {"status", status_name(x.status)},
                        {"computed", x.computed},
                        {"expected", x.expected}});
  Json j{{"d", r.d}, {"all_pass", r.all_pass()}, {"rows", std::move(rows)}};
  j["child"] = r.child ? to_json(*r.child) : Json();
  return j;
}

inline Json to_json(const JordanProfile& p) {
  return Json{{"n", p.n}, {"d", p.d}, {"e", p.e}};
}

inline Json to_json(const LemmaReport& r) {
  Json rows = Json::array();
  for (const LemmaRow& x : r.rows)
    rows.push_back(Json{
        {"id", x.id}, {"pass", x.pass}, {"computed", x.computed}, {"expected", x.expected}});
  return Json{{"profile", to_json(r.profile)},
              {"tel_index", r.tel_index.get_str()},
              {"tel2_index", r.tel2_index.get_str()},
              {"b_t_order", r.b_t_order.get_str()},
              {"b_u_order", r.b_u_order.get_str()},
              {"b_sum_order", r.b_sum_order.get_str()},
              {"gap_index", r.gap_index.get_str()},
              {"density", r.density},
              {"gen24", r.gen24},
              {"gen34", r.gen34},
              {"all_pass", r.all_pass()},
              {"rows", std::move(rows)}};
}

inline Json to_json(const Certificate& c) {
  return Json{{"rank", c.rank},
              {"even", c.even},
              {"det", c.det.get_str()},
              {"min", c.min.get_str()}};
}

inline Json to_json(const Recognition& r) {
  return Json{{"certificate", to_json(r.cert)}, {"label", r.label}};
}

namespace detail {

inline const Json& j_get(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace detail

inline Int int_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer literal '" + j.get<std::string>() + "'");
    }
  }
  throw ParseError("expected an integer or a decimal string");
}

inline IntMat int_mat_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of matrix rows");
  std::vector<std::vector<Int>> rows;
  for (const Json& r : j) {
    if (!r.is_array()) throw ParseError("expected an array matrix row");
    std::vector<Int> row;
    for (const Json& x : r) row.push_back(int_from_json(x));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return IntMat(0, 0);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("ragged matrix");
  return IntMat::from_rows(rows);
}

inline DyadicMat dyadic_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected {num, log2_den}");
  Int k = int_from_json(detail::j_get(j, "log2_den"));
  if (k < 0 || k > 1000000) throw ParseError("log2_den out of range");
  return DyadicMat(int_mat_from_json(detail::j_get(j, "num")), k.get_si());
}

inline FramePtr frame_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected {rank, gram}");
  IntMat g = int_mat_from_json(detail::j_get(j, "gram"));
  Int rank = int_from_json(detail::j_get(j, "rank"));
  if (rank != static_cast<long>(g.rows())) throw ParseError("rank does not match gram size");
  try {
    return make_frame(std::move(g));
  } catch (const Error& e) {
    throw ParseError(std::string("bad frame: ") + e.what());
  }
}

inline Lattice lattice_from_json(const Json& j) {
  FramePtr fr = frame_from_json(detail::j_get(j, "frame"));
  try {
    return Lattice(fr, dyadic_from_json(detail::j_get(j, "basis")));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad lattice: ") + e.what());
  }
}

inline FrameMap map_from_json(const Json& j, const FramePtr& fr) {
  DyadicMat m = dyadic_from_json(j);
  if (m.rows() != fr->rank || m.cols() != fr->rank)
    throw ParseError("map size does not match frame rank");
  return FrameMap{fr, std::move(m)};
}

inline DihedralAction action_from_json(const Json& j) {
  FramePtr fr = frame_from_json(detail::j_get(j, "frame"));
  try {
    Lattice l(fr, dyadic_from_json(detail::j_get(j, "basis")));
    return validate_dihedral(l, map_from_json(detail::j_get(j, "t"), fr),
                             map_from_json(detail::j_get(j, "u"), fr));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad action: ") + e.what());
  }
}

inline BWTower tower_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a tower object");
  std::shared_ptr<const BWTower> child;
  const Json& jc = detail::j_get(j, "child");
  if (!jc.is_null()) child = std::make_shared<BWTower>(tower_from_json(jc));
  FramePtr fr = frame_from_json(detail::j_get(j, "frame"));
  try {
    Int d = int_from_json(detail::j_get(j, "d"));
    Int s = int_from_json(detail::j_get(j, "s_flag"));
    Lattice L(fr, dyadic_from_json(detail::j_get(j, "basis")));
    Embedded l1 = embed_rows(fr, dyadic_from_json(detail::j_get(j, "half1")));
    Embedded l2 = embed_rows(fr, dyadic_from_json(detail::j_get(j, "half2")));
    FrameMap t = map_from_json(detail::j_get(j, "t"), fr);
    FrameMap f = map_from_json(detail::j_get(j, "f"), fr);
    FrameMap sub4 = map_from_json(detail::j_get(j, "sub_four"), l1.inner.frame());
    return BWTower{static_cast<unsigned>(d.get_ui()),
                   fr,
                   int_from_json(detail::j_get(j, "scale")),
                   std::move(L),
                   std::move(l1),
                   std::move(l2),
                   std::move(t),
                   std::move(f),
                   std::move(sub4),
                   static_cast<int>(s.get_si()),
                   std::move(child)};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad tower: ") + e.what());
  }
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace bw
