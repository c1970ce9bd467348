#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace harmonica {

// Domain failure with a stable symbolic name. The name is what the CLI prints
// on stderr and what tests match on; the message is free-form detail.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& detail)
        : std::runtime_error(detail.empty() ? name : name + ": " + detail),
          name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const char* name, const std::string& detail = "") {
    throw DomainError(name, detail);
}

} // namespace harmonica
