#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fracbl::report {

/// How a check compares measured against target.
enum class Comparison {
    absolute,     // |measured - target| <= tolerance
    relative,     // |measured - target| <= tolerance * |target|
    upper_bound,  // measured <= target
    lower_bound,  // measured >= target
};

std::string to_string(Comparison mode);

struct Check {
    std::string name;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    Comparison mode = Comparison::absolute;
    bool pass = false;
    /// The asymptotic statement the row tests.
    std::string claim;
};

Check make_check(std::string name, double measured, double target, double tolerance, Comparison mode,
                 std::string claim);

struct VerificationReport {
    std::vector<Check> checks;

    bool overall() const;
    /// Fixed-width text table followed by an OVERALL line.
    std::string table() const;
    std::string csv() const;
};

/// Tolerance per check family, keyed by the family name (the check name up to '@').
class Tolerances {
public:
    Tolerances();

    double operator[](const std::string& family) const;
    void set(const std::string& family, double value);
    const std::map<std::string, double>& values() const noexcept { return values_; }

    /// JSON object {"family": value, ...}; unknown families and non-positive
    /// values throw ParameterError, unreadable files IoError.
    static Tolerances from_json_file(const std::filesystem::path& path);

private:
    std::map<std::string, double> values_;
};

struct VerifyOptions {
    std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    Tolerances tolerances;
};

/// Runs every check. Rows named family@eps depend on the eps list; the rest
/// use fixed parameters. Checks run in parallel, the report order is fixed.
VerificationReport run_verification(const VerifyOptions& opts);

/// Best least-squares fit c exp(-x/delta) to (x, y); returns the max-norm misfit.
double exponential_fit_misfit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fracbl::report
