#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace idem {

enum class Errc {
    InputTooSmall,
    FactorizationLimitExceeded,
    NotInvertible,
    ModuliNotCoprime,
    IndexOutOfRange,
    MixedModuli,
    BadParams,
    LevelOutOfRange,
    NotNested,
    CapExceeded,
    NotAUnit,
    NotCycleElement,
    ExponentTooSmall,
    ParseError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so callers
// (and the CLI's exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace idem
