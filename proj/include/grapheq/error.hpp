#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grapheq {

enum class ErrorKind {
    UnknownVertex,
    PresentationMismatch,
    NotCyclicallyReduced,
    FiniteOrderVertexInSupport,
    IdentityElement,
    EmptySet,
    NotAbelianPrimitive,
    ParseError,
    UnknownVariable,
    IncompleteAssignment,
    InvalidInstance,
    RankTooSmall,
    AbelianTarget,
    InfiniteAbelianisation,
    NotFlattened,
    NotAnIntegerSolution,
    NotASolution,
    DecodeInconsistency,
    RadiusCapExceeded,
    Overflow,
    Internal,
};

inline std::string_view kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::PresentationMismatch: return "PresentationMismatch";
    case ErrorKind::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case ErrorKind::FiniteOrderVertexInSupport: return "FiniteOrderVertexInSupport";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotAbelianPrimitive: return "NotAbelianPrimitive";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::RankTooSmall: return "RankTooSmall";
    case ErrorKind::AbelianTarget: return "AbelianTarget";
    case ErrorKind::InfiniteAbelianisation: return "InfiniteAbelianisation";
    case ErrorKind::NotFlattened: return "NotFlattened";
    case ErrorKind::NotAnIntegerSolution: return "NotAnIntegerSolution";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::DecodeInconsistency: return "DecodeInconsistency";
    case ErrorKind::RadiusCapExceeded: return "RadiusCapExceeded";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

/// Library error carrying a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace grapheq
