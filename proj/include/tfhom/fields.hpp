#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "tfhom/grid.hpp"

namespace tfhom {

enum class FieldKind { smooth_low, smooth_high, piecewise_low, piecewise_high, constant, layered };

/// Scalar 1-periodic diffusion coefficient kappa(y) with declared ellipticity
/// bounds mu <= kappa <= upper.
class CoefficientField {
public:
    static CoefficientField smooth_low();
    static CoefficientField smooth_high();
    static CoefficientField piecewise_low();
    static CoefficientField piecewise_high();
    static CoefficientField constant(double c);
    /// kappa(y) = profile({y1}); used as a test oracle with closed-form kappa*.
    static CoefficientField layered(std::string name, std::function<double(double)> profile, double mu, double upper);

    /// "smooth-low", "smooth-high", "piecewise-low", "piecewise-high",
    /// "constant:<c>", "layered:two-phase", "layered:sine".
    static CoefficientField parse(std::string_view id);

    FieldKind kind() const { return kind_; }
    const std::string& id() const { return id_; }
    double mu() const { return mu_; }
    double upper() const { return upper_; }

    /// Evaluates at the wrapped point.
    double operator()(Point y) const;

private:
    CoefficientField(FieldKind kind, std::string id, double mu, double upper, double value = 0.0,
                     std::function<double(double)> profile = {});

    FieldKind kind_;
    std::string id_;
    double mu_;
    double upper_;
    double value_;
    std::function<double(double)> profile_;
};

double eval_kappa(const CoefficientField& field, Point y);
/// kappa(x / eps); eps must be positive.
double eval_kappa_eps(const CoefficientField& field, double eps, Point x);

enum class InitialKind { smooth_poly, rough_indicator, sine_mode, zero };

class InitialData {
public:
    explicit InitialData(InitialKind kind) : kind_(kind) {}

    /// "smooth", "rough", "sine", "zero".
    static InitialData parse(std::string_view id);

    InitialKind kind() const { return kind_; }
    std::string id() const;
    double operator()(Point x) const;

private:
    InitialKind kind_;
};

double eval_initial(const InitialData& data, Point x);

}  // namespace tfhom
