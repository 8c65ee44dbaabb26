#pragma once

#include <stdexcept>
#include <string>

namespace hft {

// Every library failure carries a stable kind tag (NotAGroup, Degenerate,
// SignatureMismatch, ...) so callers and tests can branch without parsing
// the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

}  // namespace hft
