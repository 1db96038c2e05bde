#include "circpoly/error.hpp"

namespace circpoly {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidGraph: return "InvalidGraph";
        case Errc::NotLamanPlusOne: return "NotLamanPlusOne";
        case Errc::NotTwoConnected: return "NotTwoConnected";
        case Errc::NotSeparatingPair: return "NotSeparatingPair";
        case Errc::NotCircuit: return "NotCircuit";
        case Errc::TooLarge: return "TooLarge";
        case Errc::EdgeNotCommon: return "EdgeNotCommon";
        case Errc::WrongDegree: return "WrongDegree";
        case Errc::NoAdmissiblePair: return "NoAdmissiblePair";
        case Errc::NotDecomposable: return "NotDecomposable";
        case Errc::MissingDegreeEntry: return "MissingDegreeEntry";
        case Errc::NotDivisible: return "NotDivisible";
        case Errc::ZeroPolynomial: return "ZeroPolynomial";
        case Errc::MissingAssignment: return "MissingAssignment";
        case Errc::BothDegreeZero: return "BothDegreeZero";
        case Errc::BadIndices: return "BadIndices";
        case Errc::BackendLimit: return "BackendLimit";
        case Errc::ZeroResultant: return "ZeroResultant";
        case Errc::CleanUpFailed: return "CleanUpFailed";
        case Errc::NoFactorInIdeal: return "NoFactorInIdeal";
        case Errc::MultipleFactorsInIdeal: return "MultipleFactorsInIdeal";
        case Errc::DegenerateAfterGcd: return "DegenerateAfterGcd";
        case Errc::NotPossible: return "NotPossible";
        case Errc::NoCandidateInIdeal: return "NoCandidateInIdeal";
        case Errc::StoreCorrupt: return "StoreCorrupt";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace circpoly
