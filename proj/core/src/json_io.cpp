#include "quatmob/json_io.hpp"

#include "quatmob/error.hpp"

namespace quatmob {

void to_json(json& j, const Quaternion& q) { j = json::array({q.w, q.x, q.y, q.z}); }

void from_json(const json& j, Quaternion& q) {
  if (j.is_number()) {
    q = Quaternion(j.get<double>());
    return;
  }
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::DomainError, "quaternion must be [w, x, y, z]");
  q = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>()};
}

void to_json(json& j, const QMatrix2& m) { j = json{{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}}; }

void from_json(const json& j, QMatrix2& m) {
  if (j.is_array()) {
    if (j.size() != 2 || !j.at(0).is_array() || !j.at(1).is_array() || j.at(0).size() != 2 || j.at(1).size() != 2) {
      throw Error(ErrorCode::DomainError, "matrix must be [[a, b], [c, d]]");
    }
    m = {j.at(0).at(0).get<Quaternion>(), j.at(0).at(1).get<Quaternion>(), j.at(1).at(0).get<Quaternion>(),
         j.at(1).at(1).get<Quaternion>()};
    return;
  }
  if (!j.is_object()) throw Error(ErrorCode::DomainError, "matrix must be an object with keys a, b, c, d");
  m = {j.at("a").get<Quaternion>(), j.at("b").get<Quaternion>(), j.at("c").get<Quaternion>(), j.at("d").get<Quaternion>()};
}

void to_json(json& j, const CharPoly& cp) { j = json{{"c3", cp.c3}, {"c2", cp.c2}, {"c1", cp.c1}, {"c0", cp.c0}}; }

void from_json(const json& j, CharPoly& cp) {
  cp = {j.at("c3").get<double>(), j.at("c2").get<double>(), j.at("c1").get<double>(), j.at("c0").get<double>()};
}

void to_json(json& j, const ClassRep& c) { j = json{{"modulus", c.modulus}, {"angle", c.angle}}; }

void to_json(json& j, const EigenSpectrum& s) {
  j = json::array();
  for (const EigenClass& c : s.classes) j.push_back({{"rep", c.rep}, {"multiplicity", c.multiplicity}});
}

void to_json(json& j, const NormalForm& f) {
  if (const auto* d = std::get_if<DiagonalForm>(&f)) {
    j = json{{"kind", "diagonal"}, {"r", d->r}, {"theta", d->theta}, {"phi", d->phi}};
  } else {
    j = json{{"kind", "parabolic"}, {"theta", std::get<ParabolicForm>(f).theta}};
  }
}

void from_json(const json& j, NormalForm& f) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "diagonal") {
    f = DiagonalForm{j.at("r").get<double>(), j.at("theta").get<double>(), j.at("phi").get<double>()};
  } else if (kind == "parabolic") {
    f = ParabolicForm{j.at("theta").get<double>()};
  } else {
    throw Error(ErrorCode::DomainError, "unknown normal form kind " + kind);
  }
}

void to_json(json& j, const DynamicalType& t) { j = std::string(to_string(t)); }

void to_json(json& j, const BoundaryFlags& f) {
  j = json{{"angle_real", f.angle_real},       {"angle_zero", f.angle_zero}, {"angle_pi", f.angle_pi},
           {"angle_half_pi", f.angle_half_pi}, {"c1_at_four", f.c1_at_four}, {"near_case_boundary", f.near_case_boundary}};
}

void to_json(json& j, const AlgebraicClass& c) {
  json params{{"r", c.r}, {"theta", c.theta}};
  if (c.phi) params["phi"] = *c.phi;
  j = json{{"case", c.case_id}, {"representative", c.representative}, {"params", params}, {"flags", c.flags}};
}

void to_json(json& j, const ExtendedQuaternion& z) {
  if (z.is_infinity()) {
    j = "inf";
  } else {
    j = z.value();
  }
}

void from_json(const json& j, ExtendedQuaternion& z) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw Error(ErrorCode::DomainError, "the only string point is \"inf\"");
    z = ExtendedQuaternion::infinity();
    return;
  }
  z = j.get<Quaternion>();
}

void to_json(json& j, const Factorization& f) {
  j = json{{"b", f.b}, {"c", f.c}, {"signs", json::array({f.sign_b, f.sign_c})}, {"mode", to_string(f.realized)}};
}

void to_json(json& j, const FactorizationResiduals& r) {
  j = json{{"b_square", r.b_square}, {"c_square", r.c_square}, {"product", r.product}};
}

void to_json(json& j, const ReversibilityReport& r) {
  j = json{{"reversible_sl", r.reversible_sl},
           {"strongly_reversible_sl", r.strongly_reversible_sl},
           {"conj_neg_inverse", r.conj_neg_inverse},
           {"reversible_psl", r.reversible_psl},
           {"strongly_reversible_psl", r.strongly_reversible_psl},
           {"c1_sq_eq_c3_sq", r.c1_sq_eq_c3_sq},
           {"c1_sq_minus_c3_sq", r.c1_sq_minus_c3_sq}};
  j["reverser"] = r.reverser ? json(*r.reverser) : json(nullptr);
  j["reverser_sign"] = r.reverser_sign ? json(std::string(to_string(*r.reverser_sign))) : json(nullptr);
  j["factorization"] = r.factorization ? json(*r.factorization) : json(nullptr);
  j["residuals"] = json{{"reverser", r.reverser_residual}, {"factorization", r.factorization_residuals}};
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(json& j, const MembershipVerdict& v) { j = std::string(to_string(v)); }

void to_json(json& j, const InvolutionClass& c) {
  j = json{{"kind", to_string(c.kind)}};
  j["witness"] = c.witness ? json(*c.witness) : json(nullptr);
}

}  // namespace quatmob
