#pragma once

#include <cstring>
#include <vector>

#include "actp/value_function.hpp"

namespace actp::detail {

// Value-function vectors flattened into one contiguous row-major buffer for
// the argmax_dot kernel.
struct FlatGamma {
    std::size_t count = 0;
    int num_states = 0;
    std::vector<double> rows;

    explicit FlatGamma(const ValueFunction& prev) {
        count = prev.vectors.size();
        num_states = static_cast<int>(prev.vectors.front().values.size());
        rows.resize(count * num_states);
        for (std::size_t j = 0; j < count; ++j)
            std::memcpy(rows.data() + j * num_states, prev.vectors[j].values.data(),
                        sizeof(double) * num_states);
    }
};

}  // namespace actp::detail
