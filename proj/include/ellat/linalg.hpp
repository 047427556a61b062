#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ellat/errors.hpp"

namespace ellat {

// Dense row-major matrix. Sizes here stay small (a few hundred at most),
// so no effort is spent on blocking or layout tricks.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {
    if (r < 0 || c < 0) throw std::domain_error("Matrix: negative size");
  }

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int nn) {
    Matrix I(nn, nn);
    for (int i = 0; i < nn; ++i) I(i, i) = 1.0;
    return I;
  }

  Matrix transposed() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
  }
};

inline std::vector<double> matvec(const Matrix& mat, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != mat.cols)
    throw std::domain_error("matvec: size mismatch");
  std::vector<double> out(mat.rows, 0.0);
  for (int i = 0; i < mat.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < mat.cols; ++j) s += mat(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, same order as values
  int sweeps = 0;
  double offdiag = 0.0;        // final off-diagonal Frobenius mass
};

// Cyclic Jacobi diagonalization of a symmetric matrix. Rotations are
// applied until the off-diagonal Frobenius norm falls below tol times the
// full norm. Eigenpairs come back sorted by ascending eigenvalue with texture
// consistent enough for downstream sign fixing (each vector is normalized
// and sign-fixed so its largest-magnitude entry is positive).
inline EigenDecomposition jacobi_eigen(Matrix s, double tol = 1e-14,
                                       int max_sweeps = 80) {
  int nn = s.rows;
  if (nn != s.cols) throw std::domain_error("jacobi_eigen: matrix not square");
  Matrix v = Matrix::identity(nn);
  double norm = s.frobenius();
  if (norm == 0.0) norm = 1.0;

  auto offmass = [&]() {
    double t = 0.0;
    for (int i = 0; i < nn; ++i)
      for (int j = i + 1; j < nn; ++j) t += 2.0 * s(i, j) * s(i, j);
    return std::sqrt(t);
  };

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offmass() <= tol * norm) break;
    for (int p = 0; p < nn - 1; ++p) {
      for (int q = p + 1; q < nn; ++q) {
        double apq = s(p, q);
        if (apq == 0.0) continue;
        double theta = 0.5 * (s(q, q) - s(p, p)) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (int k = 0; k < nn; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < nn; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (int k = 0; k < nn; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  EigenDecomposition out;
  out.sweeps = sweep;
  out.offdiag = offmass();
  if (out.offdiag > 1e-8 * norm)
    throw conditioning_error("jacobi_eigen: no convergence in sweep budget");

  std::vector<int> idx(nn);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return s(i, i) < s(j, j); });

  out.values.resize(nn);
  out.vectors = Matrix(nn, nn);
  for (int j = 0; j < nn; ++j) {
    out.values[j] = s(idx[j], idx[j]);
    int kmax = 0;
    for (int k = 1; k < nn; ++k)
      if (std::fabs(v(k, idx[j])) > std::fabs(v(kmax, idx[j]))) kmax = k;
    double flip = v(kmax, idx[j]) < 0.0 ? -1.0 : 1.0;
    for (int k = 0; k < nn; ++k) out.vectors(k, j) = flip * v(k, idx[j]);
  }
  return out;
}

// Determinant via LU with partial pivoting. Small matrices only; used for
// the determinantal eigenfunction formulas.
inline double lu_det(Matrix mat) {
  int nn = mat.rows;
  if (nn != mat.cols) throw std::domain_error("lu_det: matrix not square");
  double det = 1.0;
  for (int k = 0; k < nn; ++k) {
    int piv = k;
    for (int i = k + 1; i < nn; ++i)
      if (std::fabs(mat(i, k)) > std::fabs(mat(piv, k))) piv = i;
    if (mat(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < nn; ++j) std::swap(mat(k, j), mat(piv, j));
      det = -det;
    }
    det *= mat(k, k);
    for (int i = k + 1; i < nn; ++i) {
      double f = mat(i, k) / mat(k, k);
      for (int j = k; j < nn; ++j) mat(i, j) -= f * mat(k, j);
    }
  }
  return det;
}

}  // namespace ellat
