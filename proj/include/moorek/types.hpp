#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "moorek/errors.hpp"

namespace moorek {

// All arithmetic is exact over fixed-width machine integers with checked
// operations; overflow raises moorek::overflow_error instead of wrapping.
using Int = std::int64_t;
using Index = Eigen::Index;

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("integer overflow in addition: " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow_error("integer overflow in subtraction: " + std::to_string(a) + " - " + std::to_string(b));
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("integer overflow in multiplication: " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

// a - b*q with every step checked.
inline Int checked_submul(Int a, Int b, Int q) { return checked_sub(a, checked_mul(b, q)); }

// Matrix product with checked scalar arithmetic.
inline IntMat checked_matmul(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw input_error("matrix product: inner dimensions disagree");
    IntMat r = IntMat::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k) {
            const Int aik = a(i, k);
            if (aik == 0) continue;
            for (Index j = 0; j < b.cols(); ++j)
                r(i, j) = checked_add(r(i, j), checked_mul(aik, b(k, j)));
        }
    return r;
}

inline IntVec checked_matvec(const IntMat& a, const IntVec& x) {
    if (a.cols() != x.size()) throw input_error("matrix-vector product: dimensions disagree");
    IntVec r = IntVec::Zero(a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0) r(i) = checked_add(r(i), checked_mul(a(i, k), x(k)));
    return r;
}

// Nonnegative gcd; gcd(0, 0) = 0.
inline Int gcd_int(Int a, Int b) {
    if (a < 0) a = checked_neg(a);
    if (b < 0) b = checked_neg(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace moorek
