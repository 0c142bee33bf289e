#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mamc {

enum class OptionKind { Call, Put };

inline char to_char(OptionKind kind) { return kind == OptionKind::Call ? 'C' : 'P'; }

inline std::string_view to_string(OptionKind kind) {
    return kind == OptionKind::Call ? "Call" : "Put";
}

inline OptionKind option_kind_from_token(std::string_view token) {
    if (token == "C") return OptionKind::Call;
    if (token == "P") return OptionKind::Put;
    throw std::invalid_argument("unknown kind token '" + std::string(token) +
                                "' (expected C or P)");
}

}  // namespace mamc
