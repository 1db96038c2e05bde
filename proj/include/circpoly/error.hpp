#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circpoly {

enum class Errc {
    ParseError,
    InvalidGraph,
    NotLamanPlusOne,
    NotTwoConnected,
    NotSeparatingPair,
    NotCircuit,
    TooLarge,
    EdgeNotCommon,
    WrongDegree,
    NoAdmissiblePair,
    NotDecomposable,
    MissingDegreeEntry,
    NotDivisible,
    ZeroPolynomial,
    MissingAssignment,
    BothDegreeZero,
    BadIndices,
    BackendLimit,
    ZeroResultant,
    CleanUpFailed,
    NoFactorInIdeal,
    MultipleFactorsInIdeal,
    DegenerateAfterGcd,
    NotPossible,
    NoCandidateInIdeal,
    StoreCorrupt,
    InvalidArgument,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace circpoly
