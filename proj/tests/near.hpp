#pragma once

#include <cmath>

// |value - expected| <= tol; value is evaluated once.
#define CHECK_NEAR(value, expected, tol)                                                              \
    do {                                                                                              \
        const double near_v_ = (value), near_e_ = (expected), near_t_ = (tol);                        \
        CHECK_MESSAGE(std::abs(near_v_ - near_e_) <= near_t_, "got ", near_v_, ", expected ", near_e_, \
                      " +- ", near_t_);                                                               \
    } while (false)
