#include <qdc/workload.hpp>

#include <qdc/error.hpp>

#include <cmath>

namespace qdc {

void WorkloadSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw invalid_input_error("arrival rate must be positive");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw invalid_input_error("service rate must be positive");
  }
}

WorkloadTable generate_workload(WorkloadSpec const& spec) {
  spec.validate();
  ExponentialSampler draw(spec.seed);
  std::vector<double> arrivals(spec.n);
  std::vector<double> services(spec.n);
  double t = 0.0;
  for (auto& a : arrivals) {
    t += draw(spec.lambda);
    a = t;
  }
  for (auto& s : services) {
    s = draw(spec.mu);
  }
  return WorkloadTable(std::move(arrivals), std::move(services));
}

} // namespace qdc
