#ifndef EXSUM_INSTANCE_HPP
#define EXSUM_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "exsum/polygon.hpp"
#include "exsum/rational_function.hpp"

namespace exsum {

struct InstanceOptions {
    bool dwork = false;
    bool zeta = false;
    bool paranoid = false;
    int64_t precision = 0;  // 0: pipeline default
    int64_t cap = Field::kDefaultEnumerationCap;
};

/// Optional per-flag overrides applied on top of instance options.
struct OptionOverrides {
    std::optional<bool> dwork, zeta, paranoid;
    std::optional<int64_t> precision, cap;
};

struct PoleSpec {
    bool at_infinity = false;
    std::vector<int64_t> location;              // coefficient vector when finite
    std::vector<std::vector<int64_t>> coeffs;   // coeffs[i-1] is a_{j,i}
};

struct InstanceSpec {
    int64_t p = 0;
    int64_t a = 1;
    std::vector<PoleSpec> poles;
    InstanceOptions options;
    /// Optional expected Newton vertices, used as a regression pin.
    std::vector<PolygonPoint> expected_newton;
};

/// Decodes the instance JSON. Throws validation_error on malformed input.
InstanceSpec parse_instance(const std::string& json_text);

void apply_overrides(InstanceSpec& spec, const OptionOverrides& o);

/// Builds and validates the rational function the spec describes.
RationalFunction build_function(const InstanceSpec& spec);

std::string instance_to_json(const InstanceSpec& spec);

}  // namespace exsum

#endif
