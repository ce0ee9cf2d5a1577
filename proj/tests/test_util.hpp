#pragma once

#include "admesh/error.hpp"

#include <doctest.h>

#include <optional>

namespace admesh::test {

template <typename Fn>
std::optional<ErrorCode> error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace admesh::test

#define CHECK_ADMESH_ERROR(expr, expected_code) \
    CHECK(::admesh::test::error_code_of([&] { (void)(expr); }) == std::optional(::admesh::ErrorCode::expected_code))
