// Exact rational scalar and dense Eigen types used throughout the algebraic
// core.  All combinatorial and projective certificates are computed over
// these; floating point appears only in the singular-value module.

#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>
#include <string>

#include "racg/coxeter.hpp"

namespace vinberg {

// Expression templates off: Eigen assumes plain value scalars.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatRow = Eigen::Matrix<Rat, 1, Eigen::Dynamic>;

// "p/q" or integer text; throws racg::DomainError on malformed input
// (including zero denominators), naming `field` in the message.
Rat parse_rational(const std::string& text, const std::string& field);
std::string rational_to_string(const Rat& x);

RatMat rat_identity(int n);

// Exact determinant (fraction-free elimination).
Rat det(const RatMat& m);

// Basis of the kernel of m as matrix columns (may have zero columns).
RatMat kernel_basis(const RatMat& m);

// Exact inverse; throws racg::DomainError when singular.
RatMat inverse(const RatMat& m);

// Solve m x = b exactly; throws when singular.
RatVec solve(const RatMat& m, const RatVec& b);

// Scale a vector so the first nonzero coordinate has absolute value 1,
// preserving sign: canonical representative of a ray (projective point up
// to positive scaling).
RatVec normalize_ray(const RatVec& v);

// Stable text key for hashing exact vectors.
std::string vec_key(const RatVec& v);

double to_double(const Rat& x);
Eigen::MatrixXd to_double(const RatMat& m);
Eigen::VectorXd to_double_vec(const RatVec& v);

}  // namespace vinberg
