#pragma once

#include <vector>

namespace cgso {

// Node-to-cluster assignment with ids in 0..k-1.
struct Partition {
    std::vector<int> labels;
    int k = 0;
};

// Relabels so cluster ids appear in first-occurrence order and k matches the
// number of distinct labels.
Partition canonicalize(const std::vector<int>& labels);

} // namespace cgso
