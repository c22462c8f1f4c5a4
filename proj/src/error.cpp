#include "idem/error.hpp"

namespace idem {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::InputTooSmall: return "InputTooSmall";
    case Errc::FactorizationLimitExceeded: return "FactorizationLimitExceeded";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::ModuliNotCoprime: return "ModuliNotCoprime";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::MixedModuli: return "MixedModuli";
    case Errc::BadParams: return "BadParams";
    case Errc::LevelOutOfRange: return "LevelOutOfRange";
    case Errc::NotNested: return "NotNested";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::NotCycleElement: return "NotCycleElement";
    case Errc::ExponentTooSmall: return "ExponentTooSmall";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace idem
