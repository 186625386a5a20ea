#pragma once

#include <nlohmann/json.hpp>

#include "quatmob/classify.hpp"
#include "quatmob/moebius.hpp"
#include "quatmob/qmatrix.hpp"
#include "quatmob/quaternion.hpp"
#include "quatmob/reversibility.hpp"
#include "quatmob/spectral.hpp"

// Serializers live in namespace quatmob so nlohmann finds them by ADL.
// Parsing errors surface as nlohmann::json::exception or Error{DomainError}.
namespace quatmob {

using nlohmann::json;

/// [w, x, y, z]; a bare number parses as a real quaternion.
void to_json(json& j, const Quaternion& q);
void from_json(const json& j, Quaternion& q);

/// {"a": q, "b": q, "c": q, "d": q}; [[a, b], [c, d]] is accepted on input.
void to_json(json& j, const QMatrix2& m);
void from_json(const json& j, QMatrix2& m);

void to_json(json& j, const CharPoly& cp);
void from_json(const json& j, CharPoly& cp);

void to_json(json& j, const ClassRep& c);
void to_json(json& j, const EigenSpectrum& s);

/// {"kind": "diagonal", "r", "theta", "phi"} or {"kind": "parabolic", "theta"}
void to_json(json& j, const NormalForm& f);
void from_json(const json& j, NormalForm& f);

void to_json(json& j, const DynamicalType& t);
void to_json(json& j, const BoundaryFlags& f);
void to_json(json& j, const AlgebraicClass& c);

/// [w, x, y, z] or "inf"
void to_json(json& j, const ExtendedQuaternion& z);
void from_json(const json& j, ExtendedQuaternion& z);

void to_json(json& j, const Factorization& f);
void to_json(json& j, const FactorizationResiduals& r);
void to_json(json& j, const ReversibilityReport& r);
void to_json(json& j, const MembershipVerdict& v);
void to_json(json& j, const InvolutionClass& c);

}  // namespace quatmob
