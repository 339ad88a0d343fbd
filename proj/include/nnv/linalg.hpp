#pragma once

#include <vector>

#include "nnv/rational.hpp"

namespace nnv {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major, rectangular

using DVec = std::vector<double>;

int rows(const Mat& m);
int cols(const Mat& m);

// Throws std::invalid_argument when m is ragged.
void check_rectangular(const Mat& m);

Vec mat_vec(const Mat& m, const Vec& x);
DVec mat_vec(const Mat& m, const DVec& x);

Vec vec_add(Vec a, const Vec& b);
DVec vec_add(DVec a, const DVec& b);

Rational dot(const Vec& a, const Vec& b);

Mat mat_mul(const Mat& a, const Mat& b);

// Kronecker product; entry ((i1,i2),(j1,j2)) = a[i1][j1] * b[i2][j2].
Mat kronecker(const Mat& a, const Mat& b);

Vec kronecker_vec(const Vec& a, const Vec& b);

DVec to_doubles(const Vec& v);

Vec zero_vec(int n);
Mat zero_mat(int r, int c);
Mat identity_mat(int n);

}  // namespace nnv
