#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "hier/io/instance.hpp"

namespace fixture {

inline std::string read(const std::string& name) {
    std::ifstream in(std::string(HIER_FIXTURE_DIR) + "/" + name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename T>
T load(const std::string& name) {
    return std::get<T>(hier::parse_instance(read(name)));
}

}  // namespace fixture
