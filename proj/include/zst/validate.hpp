#pragma once

#include <string>
#include <vector>

#include "zst/io.hpp"

namespace zst {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double metric = 0, threshold = 0;
    std::string detail;
};

const std::vector<std::string>& suite_names();
// "all" runs every suite; unknown names throw ParseError
std::vector<SuiteResult> run_suite(const std::string& name, unsigned long long seed = 1);

Json to_json(const SuiteResult& r);

}  // namespace zst
