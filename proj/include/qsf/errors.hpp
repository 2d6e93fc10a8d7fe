// SPDX-License-Identifier: Apache-2.0

#ifndef QSF_ERRORS_HPP
#define QSF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsf {

// Domain errors carry a stable kind tag so front ends can report the
// failure class without parsing message text.
class error : public std::runtime_error {
public:
    error(const char* kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    const char* kind() const noexcept { return kind_; }

private:
    const char* kind_;
};

#define QSF_DEFINE_ERROR(class_name, tag)                                 \
    class class_name : public error {                                     \
    public:                                                               \
        explicit class_name(const std::string& what) : error(tag, what) {} \
    }

QSF_DEFINE_ERROR(invalid_base_error, "InvalidBase");
QSF_DEFINE_ERROR(max_terms_error, "MaxTermsExceeded");
QSF_DEFINE_ERROR(zero_argument_error, "ZeroArgument");
QSF_DEFINE_ERROR(pole_error, "PoleError");
QSF_DEFINE_ERROR(denominator_pole_error, "DenominatorPole");
QSF_DEFINE_ERROR(radius_error, "RadiusError");
QSF_DEFINE_ERROR(branch_error, "BranchError");
QSF_DEFINE_ERROR(integer_order_error, "IntegerOrderError");
QSF_DEFINE_ERROR(spiral_error, "SpiralError");
QSF_DEFINE_ERROR(contour_error, "ContourTooLarge");
QSF_DEFINE_ERROR(nonconvergent_error, "NonConvergent");
QSF_DEFINE_ERROR(degenerate_recurrence_error, "DegenerateRecurrence");
QSF_DEFINE_ERROR(scale_overflow_error, "ScaleOverflow");
QSF_DEFINE_ERROR(degenerate_order_error, "DegenerateOrder");

#undef QSF_DEFINE_ERROR

} // namespace qsf

#endif
