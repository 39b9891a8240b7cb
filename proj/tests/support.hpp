#pragma once

#include <doctest.h>

#include <cmath>

// |a - b| <= tol, with both values shown on failure.
#define CHECK_NEAR(a, b, tol)                                                                \
    do {                                                                                     \
        const double check_near_a_ = static_cast<double>(a);                                 \
        const double check_near_b_ = static_cast<double>(b);                                 \
        INFO("lhs = " << check_near_a_ << ", rhs = " << check_near_b_ << ", tol = " << (tol)); \
        CHECK(std::fabs(check_near_a_ - check_near_b_) <= (tol));                            \
    } while (0)
