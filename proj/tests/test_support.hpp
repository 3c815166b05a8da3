// Copyright 2026 The zeno-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ZENO_TEST_SUPPORT_HPP
#define ZENO_TEST_SUPPORT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace zeno::testing
{

using Complex = std::complex<double>;

inline Eigen::MatrixXcd random_complex_matrix(std::mt19937 &rng, Eigen::Index rows, Eigen::Index cols)
{
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
  {
    for (Eigen::Index j = 0; j < cols; ++j)
    {
      m(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  return m;
}

// Haar-ish unitary from the QR decomposition of a Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(std::mt19937 &rng, Eigen::Index n)
{
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex_matrix(rng, n, n));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

inline Eigen::VectorXcd random_state(std::mt19937 &rng, Eigen::Index n)
{
  Eigen::VectorXcd v = random_complex_matrix(rng, n, 1);
  return v / v.norm();
}

// Permanent by brute force over permutations.
inline Complex permanent(const Eigen::MatrixXcd &m)
{
  const int n = static_cast<int>(m.rows());
  if (n == 0)
  {
    return 1.0;
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum = 0.0;
  do
  {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i)
    {
      prod *= m(i, perm[static_cast<std::size_t>(i)]);
    }
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

inline double factorial(int n)
{
  double f = 1.0;
  for (int k = 2; k <= n; ++k)
  {
    f *= k;
  }
  return f;
}

inline double binomial(int n, int k)
{
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace zeno::testing

#endif  // ZENO_TEST_SUPPORT_HPP
