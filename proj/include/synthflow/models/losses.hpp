#pragma once

#include "synthflow/flows/flows.hpp"

#include <map>
#include <random>
#include <span>
#include <string>

namespace synthflow::models {

using numcore::Index;
using numcore::Module;
using numcore::Tensor;
using numcore::Var;

// Weighted total plus the unweighted batch means of every term.
template <typename Scalar>
struct LossBreakdown {
  Var<Scalar> total;
  std::map<std::string, double> terms;
  double beta = 0.0;

  double value() const { return double(total.item()); }
};

// Linear warmup of the latent weight: min(1, epoch / warmup_epochs).
double warmup_beta(double epoch, double warmup_epochs = 100.0);

// Row-wise KL(N(mean, exp(log_var)) || N(0, I)) -> [n].
template <typename Scalar>
Var<Scalar> gaussian_kl(const Var<Scalar>& mean, const Var<Scalar>& log_var);

// 0.5 * sum of squared errors over every axis but the first -> [n]: the
// negative log-likelihood of a unit-variance Gaussian decoder up to a constant.
template <typename Scalar>
Var<Scalar> reconstruction_error(const Var<Scalar>& x_hat, const Var<Scalar>& x);

// Sum of squared errors per row -> [n].
template <typename Scalar>
Var<Scalar> squared_error(const Var<Scalar>& prediction, const Var<Scalar>& target);

// Batch mean of reconstruction + beta * closed-form KL.
template <typename Scalar>
LossBreakdown<Scalar> elbo_loss(const Var<Scalar>& x, const Var<Scalar>& x_hat, const Var<Scalar>& mean,
                                const Var<Scalar>& log_var, double beta);

// Squared MMD with the inverse multiquadric kernel k(a, b) = c / (c + |a-b|^2),
// c = 2 * dim. The unbiased form drops the i == j terms of the within-sample
// sums. Throws std::invalid_argument for batches smaller than 2.
template <typename Scalar>
Var<Scalar> mmd_loss(const Var<Scalar>& x, const Var<Scalar>& y, bool unbiased = true);

// Per-row log q0(z0) - sum log|det| - log N(zk; 0, I): the one-sample latent
// term of a flow posterior.
template <typename Scalar>
Var<Scalar> flow_latent_term(const Var<Scalar>& z0, const Var<Scalar>& mean, const Var<Scalar>& log_var,
                             const flows::FlowResult<Scalar>& flowed);

// Noise model of the regression: precision exp(lambda_i) on parameter i,
// lambda ~ N(mean, exp(log_var)) with a standard-normal prior. Starts at the prior.
template <typename Scalar>
class ErrorModel : public Module<Scalar> {
 public:
  explicit ErrorModel(Index dim);
  // One reparameterized draw, or the posterior mean when rng is null.
  Var<Scalar> sample(std::mt19937_64* rng) const;
  Var<Scalar> kl() const;
  const Var<Scalar>& mean() const { return mean_; }
  const Var<Scalar>& log_var() const { return log_var_; }

 private:
  Var<Scalar> mean_, log_var_;
};

// log N(target; prediction, diag(exp(-lambda))) per row -> [n].
template <typename Scalar>
Var<Scalar> param_log_likelihood(const Var<Scalar>& target, const Var<Scalar>& prediction, const Var<Scalar>& lambda);

// Closed-form KL of a diagonal Gaussian over lambda against N(0, I) -> [1].
template <typename Scalar>
Var<Scalar> kl_lambda(const Var<Scalar>& mean, const Var<Scalar>& log_var);

template <typename Scalar>
struct RegressionTerms {
  Var<Scalar> flow;        // [n] -log p(vk) - sum log|det|
  Var<Scalar> base;        // [n] log q0(v0), constant in every trained weight
  Var<Scalar> nll;         // [n] -log N(target; vk, C_v)
  Var<Scalar> prediction;  // [n, s] vk
};

// The flow input z is v0. log q0(v0) does not depend on the flow; it is
// returned on its own so the optimized total stays differentiable as a whole.
template <typename Scalar>
RegressionTerms<Scalar> flow_post_objective(const Var<Scalar>& z, const Var<Scalar>& target,
                                            flows::FlowChain<Scalar>& chain, const Var<Scalar>& lambda);

// Same terms with psi drawn from q(psi) (or its mean when sample is false).
// KL(q(psi) || p(psi)) is AmortizedFlow::kl and is added by the caller.
template <typename Scalar>
RegressionTerms<Scalar> flow_cond_objective(const Var<Scalar>& z, const Var<Scalar>& target,
                                            flows::AmortizedFlow<Scalar>& flow, const Var<Scalar>& lambda,
                                            std::mt19937_64& rng, bool sample);

// Opposite-signed targets N(-mu*, sigma_-^2) and N(+mu*, sigma_+^2).
struct PoleTargets {
  double mu_star = 2.0;
  double sigma_negative = 0.5;
  double sigma_positive = 0.5;
};

// Tag labels: -1 untagged, 0 negative pole, 1 positive pole.
inline constexpr int kUntagged = -1;
inline constexpr int kNegative = 0;
inline constexpr int kPositive = 1;

// Per-row log q(z) - log p*(z), where p* is N(0, I) with dimension `dim`
// replaced by the row's pole target and log q(z) is supplied. Its expectation
// is KL(q || p*). Throws std::invalid_argument for an untagged row.
template <typename Scalar>
Var<Scalar> disentangling_loss(const Var<Scalar>& log_q, const Var<Scalar>& z, Index dim,
                               std::span<const int> labels, const PoleTargets& targets);

// Pole part of disentangling_loss alone:
// log N(z_dim; 0, 1) - log N(z_dim; pole target) per row -> [n].
template <typename Scalar>
Var<Scalar> pole_term(const Var<Scalar>& z, Index dim, std::span<const int> labels, const PoleTargets& targets);

// Untagged rows: the tag t in {negative, neutral, positive} is marginalized
// exactly under q(t | z) = softmax(logits) with uniform p(t) and a N(0, 1)
// neutral component. Per row:
//   sum_t q(t) [log N(z_dim; 0, 1) - log p(z_dim | t) - log p(t) + log q(t)]
// which added to log q(z) - log N(z; 0, I) gives the semi-supervised bound's
// latent part. logits are [n, 3].
template <typename Scalar>
Var<Scalar> semi_supervised_term(const Var<Scalar>& z, Index dim, const Var<Scalar>& logits,
                                 const PoleTargets& targets);

}  // namespace synthflow::models
