#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vprop/dataset.hpp"
#include "vprop/objective.hpp"

namespace vprop {

enum class Activation { Tanh, Identity };

Activation activation_from_name(const std::string& name);

/// Fully-connected net with one output logit. Parameters are flattened
/// layer-major: for each layer, the row-major weight matrix (out x in) first,
/// then the bias vector.
struct MlpArchitecture {
  int input_dim = 0;
  std::vector<int> hidden;  // non-empty
  Activation activation = Activation::Tanh;

  std::vector<int> layer_sizes() const;  // [input, hidden..., 1]
  int param_count() const;
  void validate() const;
};

/// Logistic NLL over a dataset with the logit produced by the net; the
/// gradient comes from reverse-mode backpropagation through the fixed
/// architecture. Minibatch views scale by N/M like LogisticRegression.
class Mlp : public Objective, public BinaryClassifier {
public:
  Mlp(MlpArchitecture arch, std::shared_ptr<const Dataset> data);

  Mlp minibatch(std::vector<int> idx) const;

  int dim() const override { return arch_.param_count(); }
  double value(const Vec& theta) const override;
  Vec grad(const Vec& theta) const override;
  std::pair<double, Vec> value_grad(const Vec& theta) const;

  double logit(const Vec& theta, const Vec& x) const override;
  Vec batch_logits(const Vec& theta, const Mat& x_rows) const override;

  const MlpArchitecture& architecture() const { return arch_; }

private:
  MlpArchitecture arch_;
  std::shared_ptr<const Dataset> data_;
  std::vector<int> rows_;
  double scale_ = 1.0;
};

}  // namespace vprop
