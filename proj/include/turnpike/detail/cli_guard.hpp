#pragma once

#include <exception>

#include "turnpike/errors.hpp"

namespace turnpike::cli {

template <class Body>
int guarded(std::ostream& log, Body&& body) {
    try {
        return body();
    } catch (const PreconditionError& e) {
        log << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        log << "numerical failure: " << e.what() << '\n';
        return numeric_fail;
    }
}

}  // namespace turnpike::cli
