#pragma once
// Failure types the driver maps to process outcomes.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bprk {

/// Auxiliary variable left the representable range: the step cannot be
/// completed at this dt without leaving the admissible set's chart.
struct StepTooLarge : std::runtime_error {
    std::size_t node;
    explicit StepTooLarge(std::size_t node_)
        : std::runtime_error("time step too large near bounds at node " +
                             std::to_string(node_)),
          node(node_) {}
};

/// Every correction magnitude is zero while the invariant defect is not.
struct CorrectionInfeasible : std::runtime_error {
    CorrectionInfeasible()
        : std::runtime_error(
              "correction infeasible: no node can absorb the invariant defect") {}
};

}  // namespace bprk
