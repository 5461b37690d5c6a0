#pragma once

#include <vector>

#include "actp/model.hpp"

namespace actp {

// Ring of cells watched by one camera each; the tracked person stays with
// probability p_stay and otherwise moves to one of the two neighbours with
// equal probability. Cameras are binary present/absent detectors.
struct GridworldSpec {
    int num_cells = 10;
    double p_stay = 0.7;
    double true_positive = 0.75;
    double false_positive = 0.05;
    int budget = 1;  // cameras per step (K)
    double discount = 0.99;
    int horizon = 10;

    void validate() const;
};

// +1-for-correct-prediction reward, one prediction action per cell.
ActivePerceptionModel build_gridworld(const GridworldSpec& spec);

// Same dynamics and sensors, but the agent is rewarded for selecting a camera
// that covers the person (the coverage baseline), solved with the standard
// state-reward backup.
ActivePerceptionModel coverage_model(const GridworldSpec& spec);

// Tangent-reward variant: `levels[j]` is the belief mass placed on the peak
// cell of the j-th tangent point per cell (remaining mass spread evenly).
ActivePerceptionModel tangent_gridworld(const GridworldSpec& spec,
                                        const std::vector<double>& levels);

// Budget-augmented model: the state tracks (cell, uses-left 0..total_uses,
// dead). Any non-empty selection decrements uses-left; landing states with
// uses-left >= 0 keep informative cameras, so all `total_uses` spends count.
// Spending when exhausted leads to the dead level where every camera reads
// uniform noise (information-free). `steps` is recorded for reference only.
struct BudgetModelLayout {
    int cells = 0;
    int levels = 0;  // uses-left 0..total_uses plus the dead level
    int state_of(int cell, int uses_left) const { return cell * levels + uses_left; }
    int cell_of(int state) const { return state / levels; }
};
ActivePerceptionModel budget_model(const GridworldSpec& spec, int total_uses, int steps,
                                   BudgetModelLayout* layout = nullptr);

// Prediction actions restricted to the listed cells plus one complement
// prediction that earns 1 on every non-important cell (without it, beliefs
// concentrated outside the important set would have no rewardable prediction).
ActivePerceptionModel important_cells_model(const GridworldSpec& spec,
                                            const std::vector<int>& cells);

// Round-robin baseline: camera (step mod N).
SensorSet rotate_policy(int step, int num_sensors);

}  // namespace actp
