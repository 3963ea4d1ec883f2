#pragma once

#include <cmath>
#include <optional>

#include "doctest.h"
#include "geomix/error.hpp"

namespace geomix::testing {

template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace geomix::testing

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define CHECK_ERROR_KIND(expr, kind) CHECK(::geomix::testing::error_kind([&] { (void)(expr); }) == (kind))
