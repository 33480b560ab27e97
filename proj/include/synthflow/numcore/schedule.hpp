#pragma once

#include <limits>

namespace synthflow::numcore {

// Reduce-on-plateau: after `patience` consecutive epochs without a strict
// improvement of the best validation loss, lr is multiplied by `factor`.
class LrSchedule {
 public:
  explicit LrSchedule(double lr, int patience = 20, double factor = 0.5);

  // Returns the lr for the next epoch. Throws std::invalid_argument for a
  // non-finite loss.
  double step(double val_loss);

  double lr() const { return lr_; }
  int patience() const { return patience_; }
  double factor() const { return factor_; }
  double best() const { return best_; }
  int stalls() const { return stalls_; }

  void restore(double lr, double best, int stalls);

 private:
  double lr_;
  int patience_;
  double factor_;
  double best_ = std::numeric_limits<double>::infinity();
  int stalls_ = 0;
};

}  // namespace synthflow::numcore
