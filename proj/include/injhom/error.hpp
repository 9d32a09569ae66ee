#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace injhom {

enum class ErrorCode {
    MalformedLine,
    VertexOutOfRange,
    DigonViolation,
    DuplicateArc,
    SelfMergeCycle,
    BoundExceeded,
    PartialColouring,
    InvalidFixedAssignment,
    TargetTooLarge,
    DegreeTooHigh,
    DegreeTooLow,
    GadgetMissing,
    SquareExhausted,
    PortColourMismatch,
    NormalizationFailed,
    TemplateNotFound,
    AssetMissing,
    ContractMalformed,
    UnknownPort,
    NotFound,
    BudgetExhausted,
    InvalidArgument,
};

auto to_string(ErrorCode code) -> std::string_view;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string & message) :
        std::runtime_error(std::string(to_string(code)) + ": " + message),
        _code(code)
    {
    }

    auto code() const noexcept -> ErrorCode { return _code; }

private:
    ErrorCode _code;
};

}
