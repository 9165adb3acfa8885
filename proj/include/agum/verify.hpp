/// @file verify.hpp
/// @brief The acceptance suite (criteria 1-12), shared by the acceptance binary and `agum verify`.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace agum {

struct CheckLine {
    std::string what;
    bool ok = true;
    std::string detail;
    bool informational = false;  // reported, never decides the verdict
};

struct CriterionResult {
    int id = 0;
    std::string title;
    double budget_seconds = 0.0;
    double seconds = 0.0;
    std::vector<CheckLine> checks;
    bool passed() const;
};

constexpr int kCriteriaCount = 12;
inline constexpr std::uint64_t kDefaultVerifySeed = 20240917;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultVerifySeed);

/// One `PASS|FAIL [id] title (t s / budget s)` line, then indented check lines.
void print_result(std::ostream& os, const CriterionResult& r, bool verbose = true);

}  // namespace agum
