#pragma once

#include <doctest.h>

#include "heislab/error.hpp"

// Asserts that `expr` throws heislab::Error of the given kind.
#define CHECK_ERROR_KIND(expr, expected)                                      \
  do {                                                                        \
    bool thrown_ = false;                                                     \
    try {                                                                     \
      (void)(expr);                                                           \
    } catch (const ::heislab::Error& e_) {                                    \
      thrown_ = true;                                                         \
      CHECK_MESSAGE(e_.kind() == (expected), "got ", e_.what());              \
    }                                                                         \
    CHECK_MESSAGE(thrown_, "no error from " #expr);                           \
  } while (0)
