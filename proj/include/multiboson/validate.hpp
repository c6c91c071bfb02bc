#ifndef MULTIBOSON_VALIDATE_HPP
#define MULTIBOSON_VALIDATE_HPP

#include "multiboson/twomode.hpp"

#include <string>
#include <vector>

namespace multiboson::validate {

enum class Relation { AtMost, AtLeast, Below, Above };

std::string to_string(Relation r);

/// One measured deviation compared against a pinned tolerance.
struct Measurement {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::AtMost;
    bool pass = false;
};

enum class Status { Pass, Fail, ExpectedFail };

std::string to_string(Status s);

struct CheckResult {
    int id = 0;
    std::string name;
    Status status = Status::Fail;
    std::vector<Measurement> measurements;
    std::string detail;
};

struct ValidateOptions {
    twomode::Convention hd_convention = twomode::Convention::OperatorDerived;
    unsigned seed = 20240611;
    int hc_N = 4000;
};

/// Criteria are numbered 1–11; each returns its measurements and a verdict.
CheckResult run_check(int id, const ValidateOptions& opt = {});

constexpr int check_count = 11;

std::vector<CheckResult> run_suite(const ValidateOptions& opt = {});

/// True when no result has status Fail or ExpectedFail.
bool all_pass(const std::vector<CheckResult>& results);

} // namespace multiboson::validate

#endif
