// Copyright 2026 The mirrorfit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mirrorfit/manifold.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace mirrorfit {

namespace {

Eigen::MatrixXd skew_part(const Eigen::MatrixXd& m) {
  return 0.5 * (m - m.transpose());
}

Eigen::MatrixXd lie_bracket(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  return u * v - v * u;
}

Eigen::MatrixXd flip_last(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  out.col(m.cols() - 1) = -out.col(m.cols() - 1);
  return out;
}

}  // namespace

TangentVector TangentVector::zero(Eigen::Index dim) {
  TangentVector v;
  v.omegas.assign(static_cast<std::size_t>(dim - 1), Eigen::MatrixXd::Zero(dim, dim));
  v.eta_t = Eigen::VectorXd::Zero(dim);
  return v;
}

TangentVector& TangentVector::operator+=(const TangentVector& other) {
  for (std::size_t u = 0; u < omegas.size(); ++u) omegas[u] += other.omegas[u];
  eta_t += other.eta_t;
  return *this;
}

TangentVector& TangentVector::operator*=(double s) {
  for (auto& w : omegas) w *= s;
  eta_t *= s;
  return *this;
}

void TangentVector::add_scaled(const TangentVector& other, double s) {
  for (std::size_t u = 0; u < omegas.size(); ++u) omegas[u] += s * other.omegas[u];
  eta_t += s * other.eta_t;
}

double TangentVector::skew_defect() const {
  double worst = 0.0;
  for (const auto& w : omegas) worst = std::max(worst, (w + w.transpose()).norm());
  return worst;
}

TangentVector operator+(TangentVector a, const TangentVector& b) {
  a += b;
  return a;
}

TangentVector operator*(double s, TangentVector v) {
  v *= s;
  return v;
}

double metric(const TangentVector& u, const TangentVector& v) {
  double total = u.eta_t.dot(v.eta_t);
  for (std::size_t k = 0; k < u.omegas.size(); ++k)
    total += (u.omegas[k].transpose() * v.omegas[k]).trace();
  return total;
}

double tangent_norm(const TangentVector& v) { return std::sqrt(std::max(0.0, metric(v, v))); }

MatchedColumns MatchedColumns::from(const PointCloud& cloud, const Correspondence& corr) {
  require(corr.size() == cloud.count(), ErrorCode::DimensionMismatch,
          "correspondence size does not match cloud");
  const Eigen::Index m = corr.matched_count();
  require(m > 0, ErrorCode::InvalidArgument, "correspondence has no matched entries");
  MatchedColumns cols;
  cols.targets.resize(cloud.dim(), m);
  cols.sources.resize(cloud.dim(), m);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < corr.size(); ++i) {
    const auto t = corr.target(i);
    if (t < 0) continue;
    cols.targets.col(k) = cloud.points.col(t);
    cols.sources.col(k) = cloud.points.col(i);
    ++k;
  }
  return cols;
}

GradientWorkspace::GradientWorkspace(const ReflectionTransform& xf, const MatchedColumns& cols)
    : xf_(&xf), m_count_(cols.count()) {
  const Eigen::Index d = xf.dim();
  const Eigen::Index f = xf.factor_count();
  const Eigen::VectorXd& t = xf.translation();

  const Eigen::MatrixXd y_centered = cols.targets.colwise() - t;
  const Eigen::MatrixXd z_centered = cols.sources.colwise() - t;
  a_ = z_centered * y_centered.transpose();
  a_ = a_ + a_.transpose().eval();
  mirror_ = xf.mirror();
  sum_targets_ = cols.targets.rowwise().sum();
  sum_sources_ = cols.sources.rowwise().sum();

  pre_.resize(static_cast<std::size_t>(f));
  suf_.resize(static_cast<std::size_t>(f));
  pre_[0] = Eigen::MatrixXd::Identity(d, d);
  for (Eigen::Index j = 1; j < f; ++j)
    pre_[static_cast<std::size_t>(j)] = pre_[static_cast<std::size_t>(j - 1)] * xf.rotation(j - 1);
  suf_[static_cast<std::size_t>(f - 1)] = Eigen::MatrixXd::Identity(d, d);
  for (Eigen::Index j = f - 2; j >= 0; --j)
    suf_[static_cast<std::size_t>(j)] = xf.rotation(j + 1) * suf_[static_cast<std::size_t>(j + 1)];

  Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(d, d);
  flip(d - 1, d - 1) = -1.0;
  b1_.resize(static_cast<std::size_t>(f));
  b2_.resize(static_cast<std::size_t>(f));
  m_.resize(static_cast<std::size_t>(f));
  for (Eigen::Index j = 0; j < f; ++j) {
    const auto& suf = suf_[static_cast<std::size_t>(j)];
    const auto& pre = pre_[static_cast<std::size_t>(j)];
    b1_[static_cast<std::size_t>(j)] = suf * flip * suf.transpose();
    b2_[static_cast<std::size_t>(j)] = pre.transpose() * a_ * pre;
    m_[static_cast<std::size_t>(j)] = xf.rotation(j).transpose() *
                                      b2_[static_cast<std::size_t>(j)] * xf.rotation(j);
  }
}

Eigen::VectorXd egrad_t(const GradientWorkspace& ws) {
  const Eigen::Index d = ws.transform().dim();
  const Eigen::VectorXd inner = 2.0 * static_cast<double>(ws.matched_count()) *
                                    ws.transform().translation() -
                                ws.target_sum() - ws.source_sum();
  return 2.0 * ((Eigen::MatrixXd::Identity(d, d) - ws.mirror()) * inner);
}

Eigen::VectorXd egrad_t(const PointCloud& cloud, const ReflectionTransform& xf,
                        const Correspondence& corr) {
  return egrad_t(GradientWorkspace(xf, MatchedColumns::from(cloud, corr)));
}

Eigen::MatrixXd egrad_R(const GradientWorkspace& ws, Eigen::Index j) {
  const auto& xf = ws.transform();
  // T E is the factor product with its last column negated.
  return -2.0 * ws.prefix(j).transpose() * ws.A() * flip_last(xf.product()) *
         ws.suffix(j).transpose();
}

Eigen::MatrixXd egrad_R(const PointCloud& cloud, const ReflectionTransform& xf,
                        const Correspondence& corr, Eigen::Index j) {
  return egrad_R(GradientWorkspace(xf, MatchedColumns::from(cloud, corr)), j);
}

TangentVector rgrad(const GradientWorkspace& ws) {
  const auto& xf = ws.transform();
  TangentVector g = TangentVector::zero(xf.dim());
  for (Eigen::Index j = 0; j < xf.factor_count(); ++j)
    g.omegas[static_cast<std::size_t>(j)] =
        skew_part(xf.rotation(j).transpose() * egrad_R(ws, j));
  g.eta_t = egrad_t(ws);
  return g;
}

TangentVector rgrad(const PointCloud& cloud, const ReflectionTransform& xf,
                    const Correspondence& corr) {
  return rgrad(GradientWorkspace(xf, MatchedColumns::from(cloud, corr)));
}

Eigen::MatrixXd rgrad_R_expanded(const GradientWorkspace& ws, Eigen::Index j) {
  const auto& xf = ws.transform();
  const Eigen::MatrixXd& r = xf.rotation(j);
  const Eigen::MatrixXd pre_through = ws.prefix(j) * r;  // prod_{u<=j} R_u
  const Eigen::MatrixXd te = flip_last(xf.product());    // T E
  return -r * pre_through.transpose() * ws.A() * te * ws.suffix(j).transpose() +
         r * ws.suffix(j) * te.transpose() * ws.A().transpose() * pre_through;
}

TangentVector rhess_apply(const GradientWorkspace& ws, const TangentVector& dir) {
  const auto& xf = ws.transform();
  const Eigen::Index d = xf.dim();
  TangentVector h = TangentVector::zero(d);
  for (Eigen::Index j = 0; j < xf.factor_count(); ++j) {
    const auto& w = dir.omegas[static_cast<std::size_t>(j)];
    const auto& b1 = ws.B1(j);
    const auto& m = ws.conjugated_B2(j);
    h.omegas[static_cast<std::size_t>(j)] =
        0.5 * (lie_bracket(b1, lie_bracket(m, w)) + lie_bracket(lie_bracket(w, b1), m));
  }
  h.eta_t = 4.0 * static_cast<double>(ws.matched_count()) *
            ((Eigen::MatrixXd::Identity(d, d) - ws.mirror()) * dir.eta_t);
  return h;
}

TangentVector rhess_apply(const PointCloud& cloud, const ReflectionTransform& xf,
                          const Correspondence& corr, const TangentVector& dir) {
  return rhess_apply(GradientWorkspace(xf, MatchedColumns::from(cloud, corr)), dir);
}

ReflectionTransform retract(const ReflectionTransform& xf, const TangentVector& dir, double step) {
  const Eigen::Index d = xf.dim();
  std::vector<Eigen::MatrixXd> rots;
  rots.reserve(static_cast<std::size_t>(xf.factor_count()));
  for (Eigen::Index j = 0; j < xf.factor_count(); ++j) {
    const Eigen::MatrixXd& r = xf.rotation(j);
    const Eigen::MatrixXd moved = r + step * (r * dir.omegas[static_cast<std::size_t>(j)]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(moved);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd upper = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k)
      if (upper(k, k) < 0.0) q.col(k) = -q.col(k);
    if (q.determinant() < 0.0) q.col(d - 1) = -q.col(d - 1);
    rots.push_back(std::move(q));
  }
  return ReflectionTransform(ReflectionTransform::unchecked_t{}, std::move(rots),
                             xf.translation() + step * dir.eta_t);
}

CriticalRotation critical_rotation(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), ErrorCode::InvalidArgument, "matrix must be square");
  require((a - a.transpose()).norm() <= 1e-8 * (1.0 + a.norm()), ErrorCode::InvalidArgument,
          "matrix must be symmetric");
  const Eigen::Index d = a.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (a + a.transpose()));
  // Eigen sorts ascending; reverse for descending eigenvalues.
  Eigen::MatrixXd vectors = eig.eigenvectors().rowwise().reverse();
  Eigen::VectorXd values = eig.eigenvalues().reverse();
  CriticalRotation out;
  out.ambiguous = (values(d - 2) - values(d - 1)) < 1e-10;
  if (vectors.determinant() < 0.0) vectors = flip_last(vectors);
  out.rotation = std::move(vectors);
  return out;
}

}  // namespace mirrorfit
