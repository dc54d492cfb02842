#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpos {

enum class ErrorKind {
    OddCount,
    TooSmall,
    NotParallelOpposite,
    NotConvex,
    WrongOrientation,
    NotOnLine,
    TooFewPoints,
    Precondition,
    AdjacentDiagonalsParallel,
    DegenerateCss,
    PlateauLambda,
    LambdaTie,
    OnCellVertex,
    Outside,
    SymmetricInput,
    ZeroPivot,
    NotFound,
    NonGenericCoincidence,
    LevelOutOfRange,
    NonGenericTangency,
    NoCertificate,
    GeneratorExhausted,
};

constexpr std::string_view to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::OddCount: return "OddCount";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotParallelOpposite: return "NotParallelOpposite";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::WrongOrientation: return "WrongOrientation";
    case ErrorKind::NotOnLine: return "NotOnLine";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::AdjacentDiagonalsParallel: return "AdjacentDiagonalsParallel";
    case ErrorKind::DegenerateCss: return "DegenerateCss";
    case ErrorKind::PlateauLambda: return "PlateauLambda";
    case ErrorKind::LambdaTie: return "LambdaTie";
    case ErrorKind::OnCellVertex: return "OnCellVertex";
    case ErrorKind::Outside: return "Outside";
    case ErrorKind::SymmetricInput: return "SymmetricInput";
    case ErrorKind::ZeroPivot: return "ZeroPivot";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NonGenericCoincidence: return "NonGenericCoincidence";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::NonGenericTangency: return "NonGenericTangency";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::GeneratorExhausted: return "GeneratorExhausted";
    }
    return "Unknown";
}

/// A geometric refusal: the input is well formed but the requested construction
/// is undefined or degenerate for it. `index` is 1-based where it applies.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, std::string what, std::optional<int> index = std::nullopt)
        : std::runtime_error(std::move(what)), kind_(kind), index_(index)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<int> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<int> index_;
};

} // namespace cpos
