#pragma once

#include <stdexcept>
#include <string>

namespace mink {

// every domain error carries a stable machine-readable code
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline Error invalid_argument(const std::string& what) { return {"invalid-argument", what}; }
inline Error unsupported_body(const std::string& what) { return {"unsupported-body", what}; }
inline Error unsupported_metric(const std::string& what) { return {"unsupported-metric", what}; }
inline Error ambiguous_normal(const std::string& what) { return {"ambiguous-normal", what}; }
inline Error non_unique_support(const std::string& what) { return {"non-unique-support", what}; }
inline Error no_impact(const std::string& what) { return {"no-impact", what}; }
inline Error tangent_line(const std::string& what) { return {"tangent-line", what}; }
inline Error point_inside_caustic(const std::string& what) { return {"point-inside-caustic", what}; }
inline Error invalid_string_length(const std::string& what) { return {"invalid-string-length", what}; }
inline Error not_a_caustic(const std::string& what) { return {"not-a-caustic", what}; }
inline Error caustic_outside_table(const std::string& what) { return {"caustic-outside-table", what}; }
inline Error invalid_confocal_parameter(const std::string& what) { return {"invalid-confocal-parameter", what}; }
inline Error unsupported_caustic(const std::string& what) { return {"unsupported-caustic", what}; }
inline Error degenerate_junction(const std::string& what) { return {"degenerate-junction", what}; }
inline Error invalid_exponent(const std::string& what) { return {"invalid-exponent", what}; }

}  // namespace mink
