#pragma once

// JSON mapping for the value types. Requires nlohmann/json on the include path.
//
//   Mat2 / UniMat2  {"m": [[A, B], [C, D]]}
//   EquiDiag        {"alpha": .., "a": .., "b": .., "c": ..}
//   ExpForm         {"r": .., "theta": .., "sign": +-1}
//   WignerDecomp    {"branch": "..", "param": .., "eta": .., "alpha": .., "sign": +-1}
//
// Doubles are written in shortest round-trip form.

#include <json.hpp>
#include <string>

#include "errors.hpp"
#include "exp_form.hpp"
#include "mat2.hpp"
#include "multilayer.hpp"
#include "sl2.hpp"

namespace wigner_abcd {

inline BranchKind branch_from_string(const std::string& s) {
  for (BranchKind k : {BranchKind::Circular, BranchKind::Hyperbolic, BranchKind::ParabolicLower,
                       BranchKind::ParabolicUpper, BranchKind::Scalar}) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown branch name: " + s);
}

inline void to_json(nlohmann::json& j, const Mat2& m) {
  j = nlohmann::json{{"m", {{m.e11(), m.e12()}, {m.e21(), m.e22()}}}};
}

inline Mat2 mat2_from_rows(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || !rows[1].is_array() || rows[0].size() != 2 ||
      rows[1].size() != 2) {
    throw ValidationError("matrix must be [[A, B], [C, D]]");
  }
  for (const auto& row : rows) {
    for (const auto& v : row) {
      if (!v.is_number()) throw ValidationError("matrix entries must be numbers");
    }
  }
  return {rows[0][0].get<double>(), rows[0][1].get<double>(), rows[1][0].get<double>(), rows[1][1].get<double>()};
}

inline void from_json(const nlohmann::json& j, Mat2& m) {
  if (!j.is_object() || !j.contains("m")) throw ValidationError("expected {\"m\": [[A, B], [C, D]]}");
  m = mat2_from_rows(j.at("m"));
}

inline void to_json(nlohmann::json& j, const UniMat2& m) { to_json(j, m.mat()); }
inline void from_json(const nlohmann::json& j, UniMat2& m) { m = UniMat2(j.get<Mat2>()); }

inline void to_json(nlohmann::json& j, const EquiDiag& ed) {
  j = nlohmann::json{{"alpha", ed.alpha}, {"a", ed.a}, {"b", ed.b}, {"c", ed.c}};
}
inline void from_json(const nlohmann::json& j, EquiDiag& ed) {
  ed.alpha = j.at("alpha").get<double>();
  ed.a = j.at("a").get<double>();
  ed.b = j.at("b").get<double>();
  ed.c = j.at("c").get<double>();
}

inline void to_json(nlohmann::json& j, const ExpForm& f) {
  j = nlohmann::json{{"r", f.r}, {"theta", f.theta}, {"sign", f.sign}};
}
inline void from_json(const nlohmann::json& j, ExpForm& f) {
  f.r = j.at("r").get<double>();
  f.theta = j.at("theta").get<double>();
  f.sign = j.value("sign", 1);
  validate(f);
}

inline void to_json(nlohmann::json& j, const WignerDecomp& wd) {
  j = nlohmann::json{{"branch", std::string(to_string(wd.branch))},
                     {"param", wd.param},
                     {"eta", wd.eta},
                     {"alpha", wd.alpha},
                     {"sign", wd.sign}};
}
inline void from_json(const nlohmann::json& j, WignerDecomp& wd) {
  wd.branch = branch_from_string(j.at("branch").get<std::string>());
  wd.param = j.at("param").get<double>();
  wd.eta = j.at("eta").get<double>();
  wd.alpha = j.at("alpha").get<double>();
  wd.sign = j.value("sign", 1);
}

namespace multilayer {

inline void to_json(nlohmann::json& j, const CoreDecomp& cd) {
  j = nlohmann::json{{"xi1", cd.xi1},
                     {"xi2", cd.xi2},
                     {"xi", cd.xi},
                     {"alpha", cd.alpha_ml},
                     {"boost_rapidity", cd.boost_rapidity}};
}

}  // namespace multilayer

}  // namespace wigner_abcd
