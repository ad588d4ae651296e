#pragma once

#include <string>

#include "rdep/dataset.hpp"
#include "rdep/reduced.hpp"

#ifndef RDEP_DATA_DIR
#define RDEP_DATA_DIR "data"
#endif

namespace testsupport {

inline std::string data_file(const std::string& name) {
    return std::string(RDEP_DATA_DIR) + "/" + name;
}

inline rdep::TrainingSet to_training_set(const rdep::Dataset& d) {
    rdep::ClassMap cm = rdep::make_class_map(d.labels);
    std::vector<int> signs(d.labels.size());
    for (std::size_t i = 0; i < d.labels.size(); ++i)
        signs[i] = cm.to_sign(d.labels[i]);
    return rdep::make_training_set(d.x, signs);
}

}  // namespace testsupport
