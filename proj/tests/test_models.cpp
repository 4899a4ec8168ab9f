#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>

#include "doctest.h"
#include "vprop/finite_diff.hpp"
#include "vprop/logreg.hpp"
#include "vprop/mlp.hpp"
#include "vprop/predictive.hpp"
#include "vprop/synthetic.hpp"

using namespace vprop;

namespace {

std::shared_ptr<const Dataset> make_data(std::uint64_t seed, int n, int d) {
  return std::make_shared<Dataset>(gen_logreg_synthetic(n, d, seed));
}

std::shared_ptr<const Dataset> single_point(double x, double y) {
  Dataset data;
  data.X = Mat::Constant(1, 1, x);
  data.y = Vec::Constant(1, y);
  return std::make_shared<const Dataset>(std::move(data));
}

}  // namespace

TEST_CASE("logreg value: theta = 0 gives N log 2") {
  auto data = make_data(3, 17, 4);
  LogisticRegression lr(data);
  CHECK(lr.value(Vec::Zero(4)) ==
        doctest::Approx(17.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("logreg value: single point evaluates log(1 + e^-2)") {
  LogisticRegression lr(single_point(1.0, 1.0));
  CHECK(lr.value(Vec::Constant(1, 2.0)) ==
        doctest::Approx(std::log1p(std::exp(-2.0))).epsilon(1e-14));
  CHECK(lr.value(Vec::Constant(1, 2.0)) == doctest::Approx(0.126928).epsilon(1e-5));
}

TEST_CASE("logreg value: full-size minibatch reproduces the full batch") {
  auto data = make_data(4, 9, 3);
  LogisticRegression lr(data);
  std::vector<int> all(9);
  for (int i = 0; i < 9; ++i) all[static_cast<std::size_t>(i)] = i;
  const Vec theta = Vec::LinSpaced(3, -1.0, 1.0);
  CHECK(lr.minibatch(all).value(theta) == lr.value(theta));
}

TEST_CASE("logreg grad: closed form at theta = 0") {
  auto data = make_data(5, 12, 3);
  LogisticRegression lr(data);
  const Vec g = lr.grad(Vec::Zero(3));
  Vec expected = Vec::Zero(3);
  for (int i = 0; i < data->n(); ++i)
    expected -= 0.5 * data->y(i) * data->X.row(i).transpose();
  CHECK((g - expected).lpNorm<Eigen::Infinity>() < 1e-14);

  LogisticRegression one(single_point(1.0, 1.0));
  CHECK(one.grad(Vec::Zero(1))(0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("logreg grad and hessian_diag: finite-difference cross-oracle") {
  RngStream rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 5);
    auto data = make_data(100 + trial, 20, d);
    LogisticRegression lr(data);
    const Vec theta = 0.5 * sample_std_normal(rng, d);
    auto f = [&](const Vec& t) { return lr.value(t); };

    const Vec g = lr.grad(theta);
    const Vec g_fd = fd_grad(f, theta, 1e-5);
    CHECK((g - g_fd).lpNorm<Eigen::Infinity>() /
              std::max(1.0, g.lpNorm<Eigen::Infinity>()) <
          1e-6);

    const Vec h = lr.hessian_diag(theta);
    const Vec h_fd = fd_hessian_diag(f, theta, 1e-3);
    CHECK((h - h_fd).lpNorm<Eigen::Infinity>() /
              std::max(1.0, h.lpNorm<Eigen::Infinity>()) <
          1e-4);
  }
}

TEST_CASE("logreg hessian_diag: quarter rule at zero and dead columns") {
  auto base = make_data(6, 10, 3);
  Dataset with_zero = *base;
  with_zero.X.col(1).setZero();
  LogisticRegression lr(std::make_shared<const Dataset>(std::move(with_zero)));

  const Vec h = lr.hessian_diag(Vec::Zero(3));
  CHECK(h(1) == 0.0);
  Vec expected = Vec::Zero(3);
  for (int i = 0; i < 10; ++i)
    expected += 0.25 * lr.data().X.row(i).cwiseAbs2().transpose();
  CHECK((h - expected).lpNorm<Eigen::Infinity>() < 1e-14);
  CHECK(h.minCoeff() >= 0.0);
}

TEST_CASE("logreg hessian_full: diagonal agreement, hand case, PSD") {
  auto data = make_data(7, 15, 4);
  LogisticRegression lr(data);
  RngStream rng(8);
  const Vec theta = sample_std_normal(rng, 4);
  const Mat full = lr.hessian_full(theta);
  CHECK((full.diagonal() - lr.hessian_diag(theta)).lpNorm<Eigen::Infinity>() <
        1e-14);

  Dataset point;
  point.X.resize(1, 2);
  point.X << 1.0, 2.0;
  point.y = Vec::Constant(1, 1.0);
  LogisticRegression one(std::make_shared<const Dataset>(std::move(point)));
  Mat expected(2, 2);
  expected << 0.25, 0.5, 0.5, 1.0;
  CHECK((one.hessian_full(Vec::Zero(2)) - expected).norm() < 1e-14);

  Eigen::SelfAdjointEigenSolver<Mat> eig(full);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("logreg: minibatch gradients average to the full-batch gradient") {
  auto data = make_data(10, 23, 4);
  LogisticRegression lr(data);
  const Vec theta = Vec::Constant(4, 0.3);

  BatchSpec spec{5, 99};
  const auto batches = make_minibatches(data->n(), spec, 0);
  int covered = 0;
  Vec mean_grad = Vec::Zero(4);
  for (const auto& batch : batches) {
    covered += static_cast<int>(batch.size());
    // weight by batch size so the unequal tail batch is handled exactly
    mean_grad += lr.minibatch(batch).grad(theta) *
                 static_cast<double>(batch.size()) / data->n();
  }
  CHECK(covered == data->n());
  CHECK((mean_grad - lr.grad(theta)).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("logreg: dimension mismatch is rejected") {
  LogisticRegression lr(make_data(11, 5, 3));
  CHECK_THROWS_AS(lr.value(Vec::Zero(4)), DimensionError);
  CHECK_THROWS_AS(lr.grad(Vec::Zero(2)), DimensionError);
}

TEST_CASE("mlp: zero parameters give N log 2") {
  MlpArchitecture arch{4, {5, 3}, Activation::Tanh};
  auto data = make_data(12, 11, 4);
  Mlp mlp(arch, data);
  CHECK(mlp.value(Vec::Zero(mlp.dim())) ==
        doctest::Approx(11.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("mlp: parameter count follows the layer-major layout") {
  MlpArchitecture arch{2, {4, 4}, Activation::Tanh};
  // 4*2+4 + 4*4+4 + 1*4+1 = 12 + 20 + 5
  CHECK(arch.param_count() == 37);
}

TEST_CASE("mlp: backprop gradient matches finite differences on 2-4-4-1") {
  MlpArchitecture arch{2, {4, 4}, Activation::Tanh};
  auto data = make_data(13, 8, 2);
  Mlp mlp(arch, data);
  RngStream rng(14);
  const Vec theta = 0.5 * sample_std_normal(rng, mlp.dim());

  const auto [value, grad] = mlp.value_grad(theta);
  CHECK(value == doctest::Approx(mlp.value(theta)).epsilon(1e-12));
  const Vec fd = fd_grad([&](const Vec& t) { return mlp.value(t); }, theta, 1e-5);
  CHECK((grad - fd).lpNorm<Eigen::Infinity>() /
            std::max(1.0, grad.lpNorm<Eigen::Infinity>()) <
        1e-5);
}

TEST_CASE("mlp: identity activation with one hidden layer collapses to logreg") {
  const int d = 3, h = 4;
  MlpArchitecture arch{d, {h}, Activation::Identity};
  auto data = make_data(15, 9, d);
  Mlp mlp(arch, data);

  RngStream rng(16);
  Vec theta = Vec::Zero(mlp.dim());
  Mat w1(h, d), w2(1, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < d; ++j) w1(i, j) = rng.next_normal();
  for (int j = 0; j < h; ++j) w2(0, j) = rng.next_normal();
  // layout: W1 row-major, b1 = 0, W2 row-major, b2 = 0
  int off = 0;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < d; ++j) theta(off++) = w1(i, j);
  off += h;
  for (int j = 0; j < h; ++j) theta(off++) = w2(0, j);

  const Vec effective = (w2 * w1).row(0).transpose();
  LogisticRegression lr(data);
  CHECK(mlp.value(theta) == doctest::Approx(lr.value(effective)).epsilon(1e-12));
}

TEST_CASE("predictive_prob: deterministic mode is the plug-in probability") {
  auto data = make_data(17, 6, 2);
  LogisticRegression lr(data);
  Vec mu(2);
  mu << 0.7, -0.4;
  const GaussianPosterior post = DiagGaussian{mu, Vec::Constant(2, 0.5)};
  RngStream rng(18);
  const Vec x = data->X.row(0).transpose();
  const double p = predictive_prob(lr, post, x, 10, rng, true);
  CHECK(p == doctest::Approx(sigmoid(x.dot(mu))).epsilon(1e-14));

  // k=1 with a zero-variance posterior is forced to the same value
  const GaussianPosterior point = DiagGaussian{mu, Vec::Zero(2)};
  const double p1 = predictive_prob(lr, point, x, 1, rng);
  CHECK(p1 == doctest::Approx(p).epsilon(1e-14));
}

TEST_CASE("predictive_prob: symmetric posterior averages to one half") {
  auto data = make_data(19, 6, 3);
  LogisticRegression lr(data);
  const GaussianPosterior post =
      DiagGaussian{Vec::Zero(3), Vec::Constant(3, 1.0)};
  RngStream rng(20);
  const int k = 20000;
  const double p = predictive_prob(lr, post, data->X.row(2).transpose(), k, rng);
  CHECK(std::abs(p - 0.5) < 3.0 / std::sqrt(double(k)));
  CHECK(p >= 1e-12);
  CHECK(p <= 1.0 - 1e-12);
}

TEST_CASE("dataset: validation catches bad labels") {
  Dataset data;
  data.X = Mat::Ones(2, 2);
  data.y = Vec::Constant(2, 2.0);
  CHECK_THROWS_AS(data.validate(), Error);
}

TEST_CASE("predictive_prob: full-covariance posterior matches the diagonal one") {
  auto data = make_data(23, 6, 2);
  LogisticRegression lr(data);
  Vec mu(2);
  mu << 0.3, -0.2;
  const Vec var = Vec::Constant(2, 0.4);
  Mat prec = Mat::Zero(2, 2);
  prec.diagonal() = var.cwiseInverse();

  const GaussianPosterior diag = DiagGaussian{mu, var};
  const GaussianPosterior full = FullGaussian{mu, prec};
  const Vec x = data->X.row(1).transpose();
  const int k = 20000;
  RngStream ra(24), rb(25);
  const double pa = predictive_prob(lr, diag, x, k, ra);
  const double pb = predictive_prob(lr, full, x, k, rb);
  CHECK(pa == doctest::Approx(pb).epsilon(0.05));
}
