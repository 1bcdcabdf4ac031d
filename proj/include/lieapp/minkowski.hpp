#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lieapp/error.hpp"

namespace lieapp {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat2 = Eigen::Matrix2d;

/// Fixed orthonormal frame of R^{4,2} with metric G = diag(+,+,+,+,-,-).
/// Euclidean 3-space sits in span(e1,e2,e3); the (e4,e5) plane carries the
/// null pair q0 = (e4+e5)/2, q_inf = e5-e4 with (q0,q_inf) = -1; the point
/// sphere complex is p = e6 with (p,p) = -1.
struct Frame {
  Mat6 G;
  Vec6 q0;
  Vec6 q_inf;
  Vec6 p;

  static const Frame& standard();
  static Vec6 e(int i);  // 1-based basis vector
};

/// The (4,2) pairing v^T G w.
double pair(const Vec6& a, const Vec6& b);

bool is_null(const Vec6& v, double tol = 1e-10);

/// Metric-skew endomorphism: M^T G + G M = 0 (an element of o(4,2)).
struct SkewOperator {
  Mat6 M;

  SkewOperator() : M(Mat6::Zero()) {}
  explicit SkewOperator(const Mat6& m);  // validates skewness to 1e-12
  Vec6 operator()(const Vec6& v) const { return M * v; }
};

/// a ^ b acting as c -> (a,c) b - (b,c) a.
SkewOperator wedge(const Vec6& a, const Vec6& b);
Mat6 wedge_m(const Vec6& a, const Vec6& b);  // unchecked kernel form

/// Symmetric 2-tensor a . b with value ((a,v)(b,w) + (a,w)(b,v)) / 2,
/// stored as the bilinear-form matrix B, evaluated as v^T B w.
struct SymTensor {
  Mat6 B;

  SymTensor() : B(Mat6::Zero()) {}
  explicit SymTensor(const Mat6& b);  // validates symmetry to 1e-12
  double operator()(const Vec6& v, const Vec6& w) const { return v.dot(B * w); }
};
SymTensor sym(const Vec6& a, const Vec6& b);

/// Gamma transform of the null pair (L, Lhat): scales the Lhat component by
/// t, the L component by 1/t, and fixes (L + Lhat)^perp. Requires
/// (L, Lhat) != 0, otherwise throws DegeneratePair.
Mat6 gamma_transform(const Vec6& L, const Vec6& Lhat, double t);

/// exp(scale * tau). Uses the exact I + tau form when tau^2 vanishes
/// (below 1e-14), scaling-and-squaring Pade otherwise. The result is
/// G-orthogonal to 1e-10.
Mat6 exp_skew(const SkewOperator& tau, double scale = 1.0);
Mat6 exp_skew_m(const Mat6& tau, double scale = 1.0);

/// Frobenius norm of R^T G R - G.
double orthogonality_defect(const Mat6& R);

/// Pulls a nearly G-orthogonal map back onto O(4,2).
Mat6 reorthogonalize(const Mat6& R);

/// Euclidean-unit null vector inside span(basis). The angles pick a point on
/// the unit sphere of the positive-definite part of the induced metric
/// (theta, and phi when it is 3-dimensional) and of the negative part (phi).
/// Throws NoNullVectors when the induced metric is definite.
Vec6 null_direction_in(const std::vector<Vec6>& basis, double theta, double phi);

}  // namespace lieapp
