#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <deque>
#include <span>
#include <vector>

namespace npf::detail {

/// Anderson mixing for x = T(x): from the pair (x_k, T(x_k)) and the last
/// `depth` differences, proposes x_{k+1} = T(x_k) - dG gamma where gamma
/// minimizes ||f_k - dF gamma||_2, f = T(x) - x. Depth 0 is plain iteration.
class AndersonMixer {
 public:
  AndersonMixer(std::size_t n, int depth) : n_(n), depth_(depth) {}

  void next(std::span<const double> x, std::span<const double> g, std::span<double> out) {
    if (depth_ <= 0) {
      std::copy(g.begin(), g.end(), out.begin());
      return;
    }
    Eigen::VectorXd f(n_);
    for (std::size_t i = 0; i < n_; ++i) f[i] = g[i] - x[i];

    if (!prev_f_.empty()) {
      Eigen::VectorXd df(n_), dg(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        df[i] = f[i] - prev_f_[i];
        dg[i] = g[i] - prev_g_[i];
      }
      d_f_.push_back(std::move(df));
      d_g_.push_back(std::move(dg));
      if (static_cast<int>(d_f_.size()) > depth_) {
        d_f_.pop_front();
        d_g_.pop_front();
      }
    }
    prev_f_.assign(f.data(), f.data() + n_);
    prev_g_.assign(g.begin(), g.end());

    std::copy(g.begin(), g.end(), out.begin());
    const auto m = static_cast<Eigen::Index>(d_f_.size());
    if (m == 0) return;
    Eigen::MatrixXd df(n_, m);
    for (Eigen::Index j = 0; j < m; ++j) df.col(j) = d_f_[j];
    const Eigen::VectorXd gamma = df.colPivHouseholderQr().solve(f);
    if (!gamma.allFinite()) {
      reset();
      return;
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n_; ++i) out[i] -= gamma[j] * d_g_[j][i];
    }
  }

  void reset() {
    d_f_.clear();
    d_g_.clear();
    prev_f_.clear();
    prev_g_.clear();
  }

 private:
  std::size_t n_;
  int depth_;
  std::deque<Eigen::VectorXd> d_f_;
  std::deque<Eigen::VectorXd> d_g_;
  std::vector<double> prev_f_;
  std::vector<double> prev_g_;
};

}  // namespace npf::detail
