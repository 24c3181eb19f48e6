#pragma once

#include "offload/decision.hpp"
#include "offload/scenario.hpp"

namespace offload {

/// Lowest-indexed algorithm with the smallest failure probability for the task.
int min_breach_algorithm(const Scenario& scenario, const TaskSpec& task);

/// Computation at mobile terminals: nothing is offloaded. Power sits at the
/// floor, each device is tied to its nearest BS on channel 1, and each task
/// keeps the minimum-breach algorithm (encryption is applied to data_floor bits).
DecisionVector cmt(const Scenario& scenario);

/// Computation at MEC servers: every task is sent in full to the BS with the
/// best channel gain at maximum power and executed there (no second hop),
/// using the minimum-breach algorithm. Channels go round-robin by device.
DecisionVector cms(const Scenario& scenario);

}  // namespace offload
