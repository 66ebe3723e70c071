#pragma once

namespace sae {

// All terms of the boundary-corrected uncertainty relation for one state.
//
//   <p^2> >= pbar^2 + ((d + <n>.<x> - <n.x>) / (2 dx))^2 + <gamma> + <n>^2/4
//
// and the stronger form built from the non-Hermitean momentum,
//
//   dx dp >= sqrt((Re<x.p> - <x>.pbar)^2 + (d - <n.x> + <n>.<x>)^2 / 4),
//   dp^2   = <p^2> - <gamma> - pbar^2 - <n>^2/4.
struct UncertaintyReport {
  double lhs = 0.0;  // <p^2>
  double rhs_general = 0.0;
  double slack_general = 0.0;  // lhs - rhs_general
  double dx = 0.0;
  double dp = 0.0;
  double rhs_nonhermitean = 0.0;
  double slack_nonhermitean = 0.0;  // dx*dp - rhs_nonhermitean
};

}  // namespace sae
