#include "qmcar/rejection.hpp"

#include <algorithm>
#include <cmath>

namespace qmcar {

double RejectionTarget::acceptance_probability(double x) const {
  const double f = target_pdf(x);
  const double g = proposal_pdf(x);
  if (!(g > 0.0))
    throw std::domain_error("RejectionTarget: proposal density vanished under the target");
  return f / (majorant * g);
}

RejectionTarget RejectionTarget::from_distributions(const Distribution& target,
                                                    const Distribution& proposal,
                                                    std::optional<double> majorant) {
  RejectionTarget rt;
  rt.target_pdf = [target](double x) { return target.pdf(x); };
  rt.proposal_pdf = [proposal](double x) { return proposal.pdf(x); };
  rt.proposal_inverse_cdf = [proposal](double u) { return proposal.inverse_cdf(u); };
  if (majorant) {
    if (!(*majorant > 0.0))
      throw std::invalid_argument("RejectionTarget: majorant must be positive");
    rt.majorant = *majorant;
  } else {
    // Probe f/g on a quantile grid of the proposal and inflate by 1%.
    constexpr int kGrid = 10000;
    double worst = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
      const double u = (i - 0.5) / kGrid;
      const double x = proposal.inverse_cdf(u);
      const double g = proposal.pdf(x);
      if (g > 0.0) worst = std::max(worst, target.pdf(x) / g);
    }
    if (!(worst > 0.0))
      throw std::runtime_error("RejectionTarget: could not estimate a majorant");
    rt.majorant = 1.01 * worst;
    rt.majorant_estimated = true;
  }
  return rt;
}

double sar1_weight(double p_ratio, double y, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("sar1_weight: sigma must be in (0, 1)");
  const double upper = p_ratio + 0.5 * sigma;
  const double lower = p_ratio - 0.5 * sigma;
  if (y < lower) return 1.0;
  if (y > upper) return 0.0;
  return (upper - y) / sigma;
}

double sar2_weight(double p, double lo, double hi, double majorant, double y) {
  if (!(lo >= 0.0 && lo < p && p < hi && hi <= majorant))
    throw std::invalid_argument("sar2_weight: need 0 <= lo < p < hi <= majorant");
  if (y < lo / majorant) return 1.0;
  if (y >= hi / majorant) return 0.0;
  if (y <= p / majorant)
    return 1.0 + (p - hi) * (majorant * y - lo) / ((hi - lo) * (p - lo));
  return (p - lo) * (majorant * y - hi) / ((hi - lo) * (p - hi));
}

}  // namespace qmcar
