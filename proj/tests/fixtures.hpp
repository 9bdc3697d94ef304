#pragma once

#include "semialg/formula.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace semialg::testing {

inline std::string fixture_path(const std::string& name) { return std::string(SEMIALG_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Representation load_rep(const std::string& name) { return parse_formula(strip_comments(read_fixture(name)), 2); }
inline Polynomial load_poly(const std::string& name) { return parse_polynomial(strip_comments(read_fixture(name)), 2); }

}  // namespace semialg::testing
