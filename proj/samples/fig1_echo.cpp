// Prints the aggregate spin coherence of the single-pulse storage scenario.
#include <cstdio>

#include "ramanecho/ramanecho.hpp"

int main() {
  using namespace ramanecho;
  const ScenarioSpec spec = scenario_fig1();
  const TrajectoryRecord rec = run_scenario(spec);
  for (double t = 0; t <= spec.span; t += 5.0) std::printf("%6.1f us  |rho12| = %.5f\n", t, rec.abs_rho12(rec.index_at(t)));
  const EfficiencyReport r = analyze_scenario(spec, rec);
  std::printf("echo at %.1f us, efficiency %.3f\n", r.echo_time, r.efficiency);
}
