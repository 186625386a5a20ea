#include "quatmob/error.hpp"

namespace quatmob {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroQuaternion: return "ZeroQuaternion";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonRealDeterminant: return "NonRealDeterminant";
    case ErrorCode::NonRealCoefficients: return "NonRealCoefficients";
    case ErrorCode::ClusteringAmbiguity: return "ClusteringAmbiguity";
    case ErrorCode::NotUnitDeterminant: return "NotUnitDeterminant";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::NotAnEigenclass: return "NotAnEigenclass";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InconsistentInvariants: return "InconsistentInvariants";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::CentralElement: return "CentralElement";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
  }
  return "Unknown";
}

}  // namespace quatmob
