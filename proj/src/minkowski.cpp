#include "lieapp/minkowski.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace lieapp {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownSurface: return "UnknownSurface";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::GeometryError: return "GeometryError";
    case ErrorCode::UmbilicEverywhere: return "UmbilicEverywhere";
    case ErrorCode::ProjectionSingular: return "ProjectionSingular";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NoNullVectors: return "NoNullVectors";
    case ErrorCode::AllZeroCoefficients: return "AllZeroCoefficients";
    case ErrorCode::TauNotInWedgeF: return "TauNotInWedgeF";
    case ErrorCode::FrameDegenerate: return "FrameDegenerate";
    case ErrorCode::AssociateSingular: return "AssociateSingular";
    case ErrorCode::NotApproximatelyFlat: return "NotApproximatelyFlat";
    case ErrorCode::RegularityViolation: return "RegularityViolation";
    case ErrorCode::SingularIntersection: return "SingularIntersection";
    case ErrorCode::DependentQuantities: return "DependentQuantities";
    case ErrorCode::DegenerateGInfinity: return "DegenerateGInfinity";
  }
  return "Error";
}

const Frame& Frame::standard() {
  static const Frame f = [] {
    Frame fr;
    fr.G = Mat6::Zero();
    fr.G.diagonal() << 1, 1, 1, 1, -1, -1;
    fr.q0 = 0.5 * (e(4) + e(5));
    fr.q_inf = e(5) - e(4);
    fr.p = e(6);
    return fr;
  }();
  return f;
}

Vec6 Frame::e(int i) {
  Vec6 v = Vec6::Zero();
  v(i - 1) = 1.0;
  return v;
}

double pair(const Vec6& a, const Vec6& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3) - a(4) * b(4) - a(5) * b(5);
}

bool is_null(const Vec6& v, double tol) {
  double s = v.squaredNorm();
  return std::abs(pair(v, v)) <= tol * std::max(1.0, s);
}

SkewOperator::SkewOperator(const Mat6& m) : M(m) {
  const Mat6& G = Frame::standard().G;
  double defect = (M.transpose() * G + G * M).norm();
  if (defect > 1e-12 * std::max(1.0, M.norm()))
    throw Error(ErrorCode::GeometryError, "operator is not metric-skew");
}

Mat6 wedge_m(const Vec6& a, const Vec6& b) {
  const Mat6& G = Frame::standard().G;
  // (a^b)(c) = (a,c) b - (b,c) a  =  (b a^T - a b^T) G c
  return (b * a.transpose() - a * b.transpose()) * G;
}

SkewOperator wedge(const Vec6& a, const Vec6& b) {
  SkewOperator s;
  s.M = wedge_m(a, b);  // skew by construction
  return s;
}

SymTensor::SymTensor(const Mat6& b) : B(b) {
  if ((B - B.transpose()).norm() > 1e-12 * std::max(1.0, B.norm()))
    throw Error(ErrorCode::GeometryError, "tensor is not symmetric");
}

SymTensor sym(const Vec6& a, const Vec6& b) {
  const Mat6& G = Frame::standard().G;
  SymTensor s;
  s.B = 0.5 * (G * a * b.transpose() * G + G * b * a.transpose() * G);
  return s;
}

Mat6 gamma_transform(const Vec6& L, const Vec6& Lhat, double t) {
  if (t == 0.0) throw Error(ErrorCode::BadParams, "gamma transform needs t != 0");
  double s = pair(L, Lhat);
  double scale = L.norm() * Lhat.norm();
  if (std::abs(s) < 1e-12 * std::max(1.0, scale))
    throw Error(ErrorCode::DegeneratePair, "(L, Lhat) = 0");
  const Mat6& G = Frame::standard().G;
  Mat6 R = Mat6::Identity();
  R += ((1.0 / t - 1.0) / s) * (L * (Lhat.transpose() * G));
  R += ((t - 1.0) / s) * (Lhat * (L.transpose() * G));
  return R;
}

Mat6 exp_skew_m(const Mat6& tau, double scale) {
  Mat6 A = scale * tau;
  Mat6 A2 = A * A;
  if (A2.norm() < 1e-14) return Mat6::Identity() + A;
  return A.exp();
}

Mat6 exp_skew(const SkewOperator& tau, double scale) { return exp_skew_m(tau.M, scale); }

double orthogonality_defect(const Mat6& R) {
  const Mat6& G = Frame::standard().G;
  return (R.transpose() * G * R - G).norm();
}

Mat6 reorthogonalize(const Mat6& R) {
  // S = G R^T G R is G-self-adjoint and close to I; R S^{-1/2} is G-orthogonal.
  const Mat6& G = Frame::standard().G;
  Mat6 S = G * R.transpose() * G * R;
  Mat6 E = S - Mat6::Identity();
  Mat6 inv_sqrt = Mat6::Identity() - 0.5 * E + 0.375 * E * E;
  return R * inv_sqrt;
}

Vec6 null_direction_in(const std::vector<Vec6>& basis, double theta, double phi) {
  const int k = static_cast<int>(basis.size());
  if (k < 2) throw Error(ErrorCode::NoNullVectors, "span is at most a line");

  Eigen::MatrixXd B(6, k);
  for (int i = 0; i < k; ++i) B.col(i) = basis[i];

  Eigen::MatrixXd gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = pair(basis[i], basis[j]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const auto& ev = es.eigenvalues();
  double lmax = ev.cwiseAbs().maxCoeff();
  if (lmax <= 0.0) throw Error(ErrorCode::NoNullVectors, "degenerate induced metric");

  std::vector<Vec6> pos, neg;
  for (int i = 0; i < k; ++i) {
    if (std::abs(ev(i)) < 1e-10 * lmax) continue;  // radical directions unused
    Vec6 v = B * es.eigenvectors().col(i);
    v /= std::sqrt(std::abs(ev(i)));  // |(v,v)| = 1
    if (ev(i) > 0)
      pos.push_back(v);
    else
      neg.push_back(v);
  }
  if (pos.empty() || neg.empty())
    throw Error(ErrorCode::NoNullVectors, "induced metric is definite");

  Vec6 P = pos[0];
  if (pos.size() == 2)
    P = std::cos(theta) * pos[0] + std::sin(theta) * pos[1];
  else if (pos.size() >= 3)
    P = std::cos(phi) * (std::cos(theta) * pos[0] + std::sin(theta) * pos[1]) +
        std::sin(phi) * pos[2];

  Vec6 N = neg[0];
  if (pos.size() < 3 && neg.size() >= 2) N = std::cos(phi) * neg[0] + std::sin(phi) * neg[1];

  Vec6 out = P + N;
  out.normalize();
  return out;
}

}  // namespace lieapp
