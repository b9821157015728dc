#pragma once

#include <stdexcept>
#include <string>

namespace fracsurv {

enum class errc {
    domain,
    invalid_argument,
    no_convergence,
    numerical,
    parse,
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

} // namespace fracsurv
