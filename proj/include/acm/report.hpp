#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acm {

enum class Verdict { Pass, Fail, Reported };

/// How a check's residual is treated.
///   Assert             must stay within tolerance
///   AssertEquivalence  two residual routes must agree frame-wise
///   AssertConditional  asserted only when its condition holds, otherwise reported
///   Audit              premise and conclusion residuals are reported, never asserted
enum class CheckMode { Assert, AssertEquivalence, AssertConditional, Audit };

std::string_view verdict_name(Verdict v);
std::string_view mode_name(CheckMode m);

/// Residual exactly at the tolerance passes.
inline Verdict verdict_for(double max_abs_residual, double tolerance) {
    return max_abs_residual <= tolerance ? Verdict::Pass : Verdict::Fail;
}

struct CheckReport {
    std::string check_id;
    CheckMode mode = CheckMode::Assert;
    std::string description;
    std::size_t points_sampled = 0;
    std::uint64_t seed = 0;
    double max_abs_residual = 0.0;
    std::optional<double> premise_residual;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Pass;
    std::vector<double> worst_point;  // sample point of the largest residual
};

/// Running maximum over samples that remembers where it occurred.
class ResidualTracker {
public:
    void add(double residual, const std::vector<double>& point) {
        const double r = residual < 0 ? -residual : residual;
        if (!(r <= max_)) {  // NaN counts as worst
            if (max_ != max_) return;
            max_ = r;
            worst_ = point;
        } else if (worst_.empty()) {
            worst_ = point;
        }
    }
    double max() const { return max_; }
    const std::vector<double>& worst_point() const { return worst_; }

private:
    double max_ = 0.0;
    std::vector<double> worst_;
};

}  // namespace acm
