#include "vprop/mlp.hpp"

#include <cmath>

#include "vprop/logreg.hpp"

namespace vprop {

namespace {

using RowMajorMap = Eigen::Map<
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMajorMutMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

double act(double z, Activation a) {
  return a == Activation::Tanh ? std::tanh(z) : z;
}

double act_deriv_from_output(double out, Activation a) {
  return a == Activation::Tanh ? 1.0 - out * out : 1.0;
}

}  // namespace

Activation activation_from_name(const std::string& name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "identity") return Activation::Identity;
  throw Error("unknown activation '" + name + "' (expected tanh or identity)");
}

std::vector<int> MlpArchitecture::layer_sizes() const {
  std::vector<int> sizes;
  sizes.push_back(input_dim);
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(1);
  return sizes;
}

int MlpArchitecture::param_count() const {
  const auto sizes = layer_sizes();
  int count = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
    count += sizes[l + 1] * sizes[l] + sizes[l + 1];
  return count;
}

void MlpArchitecture::validate() const {
  if (input_dim < 1) throw Error("MlpArchitecture: input_dim must be >= 1");
  if (hidden.empty()) throw Error("MlpArchitecture: hidden layer list is empty");
  for (int h : hidden)
    if (h < 1) throw Error("MlpArchitecture: hidden sizes must be >= 1");
}

Mlp::Mlp(MlpArchitecture arch, std::shared_ptr<const Dataset> data)
    : arch_(std::move(arch)), data_(std::move(data)) {
  arch_.validate();
  if (data_->d() != arch_.input_dim)
    throw DimensionError("Mlp: dataset has " + std::to_string(data_->d()) +
                         " features, architecture expects " +
                         std::to_string(arch_.input_dim));
}

Mlp Mlp::minibatch(std::vector<int> idx) const {
  if (idx.empty()) throw Error("Mlp::minibatch: empty batch");
  Mlp view(arch_, data_);
  view.scale_ = static_cast<double>(data_->n()) / static_cast<double>(idx.size());
  view.rows_ = std::move(idx);
  return view;
}

double Mlp::logit(const Vec& theta, const Vec& x) const {
  check_dim(theta, "mlp logit");
  const auto sizes = arch_.layer_sizes();
  Vec a = x;
  int offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int n_in = sizes[l];
    const int n_out = sizes[l + 1];
    RowMajorMap w(theta.data() + offset, n_out, n_in);
    offset += n_out * n_in;
    Eigen::Map<const Vec> b(theta.data() + offset, n_out);
    offset += n_out;
    Vec z = w * a + b;
    const bool last = (l + 2 == sizes.size());
    if (!last)
      for (Eigen::Index i = 0; i < z.size(); ++i)
        z(i) = act(z(i), arch_.activation);
    a = std::move(z);
  }
  return a(0);
}

Vec Mlp::batch_logits(const Vec& theta, const Mat& x_rows) const {
  check_dim(theta, "mlp batch_logits");
  const auto sizes = arch_.layer_sizes();
  // activations kept as columns, one per row of x_rows
  Mat acts = x_rows.transpose();
  int offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int n_in = sizes[l];
    const int n_out = sizes[l + 1];
    RowMajorMap w(theta.data() + offset, n_out, n_in);
    offset += n_out * n_in;
    Eigen::Map<const Vec> b(theta.data() + offset, n_out);
    offset += n_out;
    Mat z = (w * acts).colwise() + b;
    if (l + 2 < sizes.size() && arch_.activation == Activation::Tanh)
      z = z.array().tanh().matrix();
    acts = std::move(z);
  }
  return acts.row(0).transpose();
}

std::pair<double, Vec> Mlp::value_grad(const Vec& theta) const {
  check_dim(theta, "mlp value_grad");
  const auto sizes = arch_.layer_sizes();
  const std::size_t n_layers = sizes.size() - 1;

  double loss = 0.0;
  Vec grad = Vec::Zero(theta.size());

  // per-layer activations for one row; acts[0] is the input
  std::vector<Vec> acts(n_layers + 1);

  auto run_row = [&](int row) {
    acts[0] = data_->X.row(row).transpose();
    int offset = 0;
    std::vector<int> w_offsets(n_layers), b_offsets(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
      const int n_in = sizes[l];
      const int n_out = sizes[l + 1];
      w_offsets[l] = offset;
      RowMajorMap w(theta.data() + offset, n_out, n_in);
      offset += n_out * n_in;
      b_offsets[l] = offset;
      Eigen::Map<const Vec> b(theta.data() + offset, n_out);
      offset += n_out;
      Vec z = w * acts[l] + b;
      if (l + 1 < n_layers)
        for (Eigen::Index i = 0; i < z.size(); ++i)
          z(i) = act(z(i), arch_.activation);
      acts[l + 1] = std::move(z);
    }

    const double out = acts[n_layers](0);
    const double yi = data_->y(row);
    loss += softplus(-yi * out);

    // d loss / d logit
    Vec delta(1);
    delta(0) = -yi * sigmoid(-yi * out);

    for (std::size_t li = n_layers; li-- > 0;) {
      const int n_in = sizes[li];
      const int n_out = sizes[li + 1];
      RowMajorMutMap gw(grad.data() + w_offsets[li], n_out, n_in);
      Eigen::Map<Vec> gb(grad.data() + b_offsets[li], n_out);
      gw.noalias() += delta * acts[li].transpose();
      gb += delta;
      if (li == 0) break;
      RowMajorMap w(theta.data() + w_offsets[li], n_out, n_in);
      Vec back = w.transpose() * delta;
      for (Eigen::Index i = 0; i < back.size(); ++i)
        back(i) *= act_deriv_from_output(acts[li](i), arch_.activation);
      delta = std::move(back);
    }
  };

  if (rows_.empty()) {
    for (int i = 0; i < data_->n(); ++i) run_row(i);
  } else {
    for (int i : rows_) run_row(i);
  }

  return {scale_ * loss, scale_ * grad};
}

double Mlp::value(const Vec& theta) const {
  check_dim(theta, "mlp value");
  double loss = 0.0;
  auto run_row = [&](int row) {
    const double out = logit(theta, data_->X.row(row).transpose());
    loss += softplus(-data_->y(row) * out);
  };
  if (rows_.empty()) {
    for (int i = 0; i < data_->n(); ++i) run_row(i);
  } else {
    for (int i : rows_) run_row(i);
  }
  return scale_ * loss;
}

Vec Mlp::grad(const Vec& theta) const { return value_grad(theta).second; }

}  // namespace vprop
