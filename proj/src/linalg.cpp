#include "nnv/linalg.hpp"

#include <stdexcept>

namespace nnv {

int rows(const Mat& m) { return static_cast<int>(m.size()); }

int cols(const Mat& m) { return m.empty() ? 0 : static_cast<int>(m.front().size()); }

void check_rectangular(const Mat& m) {
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != cols(m))
      throw std::invalid_argument("ragged matrix");
}

namespace {

template <typename V>
V mat_vec_impl(const Mat& m, const V& x) {
  V y;
  y.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != x.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
    typename V::value_type acc{};
    for (std::size_t j = 0; j < row.size(); ++j) {
      if constexpr (std::is_same_v<typename V::value_type, double>)
        acc += to_double(row[j]) * x[j];
      else
        acc += row[j] * x[j];
    }
    y.push_back(acc);
  }
  return y;
}

template <typename V>
V vec_add_impl(V a, const V& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

Vec mat_vec(const Mat& m, const Vec& x) { return mat_vec_impl<Vec>(m, x); }
DVec mat_vec(const Mat& m, const DVec& x) { return mat_vec_impl<DVec>(m, x); }

Vec vec_add(Vec a, const Vec& b) { return vec_add_impl(std::move(a), b); }
DVec vec_add(DVec a, const DVec& b) { return vec_add_impl(std::move(a), b); }

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (cols(a) != rows(b)) throw std::invalid_argument("mat_mul: dimension mismatch");
  Mat c(rows(a), Vec(cols(b), Rational(0)));
  for (int i = 0; i < rows(a); ++i)
    for (int k = 0; k < cols(a); ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < cols(b); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Mat kronecker(const Mat& a, const Mat& b) {
  Mat c(rows(a) * rows(b), Vec(cols(a) * cols(b), Rational(0)));
  for (int i1 = 0; i1 < rows(a); ++i1)
    for (int j1 = 0; j1 < cols(a); ++j1)
      for (int i2 = 0; i2 < rows(b); ++i2)
        for (int j2 = 0; j2 < cols(b); ++j2)
          c[i1 * rows(b) + i2][j1 * cols(b) + j2] = a[i1][j1] * b[i2][j2];
  return c;
}

Vec kronecker_vec(const Vec& a, const Vec& b) {
  Vec c;
  c.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) c.push_back(x * y);
  return c;
}

DVec to_doubles(const Vec& v) {
  DVec d;
  d.reserve(v.size());
  for (const auto& q : v) d.push_back(to_double(q));
  return d;
}

Vec zero_vec(int n) { return Vec(n, Rational(0)); }

Mat zero_mat(int r, int c) { return Mat(r, Vec(c, Rational(0))); }

Mat identity_mat(int n) {
  Mat m = zero_mat(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace nnv
